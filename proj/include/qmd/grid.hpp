#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "qmd/common.hpp"

namespace qmd {

/// Equidistant coordinate grid r_m = r_min + (1/2 + m) * delta_r with
/// M = 2^n_qubits points. delta_r = (r_max - r_min) / M is exact in binary
/// floating point since M is a power of two.
struct Grid {
    double r_min = 0.0;
    double r_max = 0.0;
    int n_qubits = 0;
    std::size_t num_points = 0;
    double delta_r = 0.0;

    double point(std::size_t m) const { return r_min + (0.5 + static_cast<double>(m)) * delta_r; }
    std::vector<double> points() const;
    double extent() const { return r_max - r_min; }
};

Grid make_grid(double r_min, double r_max, int n_qubits);

/// Conjugate momentum grid p_m = delta_p * (m - M/2), monotonic, p_{M/2} = 0.
/// Satisfies the Nyquist relation delta_r * delta_p = 2*pi / M.
struct MomentumGrid {
    double delta_p = 0.0;
    double p_max = 0.0;
    std::size_t num_points = 0;

    double point(std::size_t m) const {
        return delta_p * (static_cast<double>(m) - static_cast<double>(num_points) / 2.0);
    }
    std::vector<double> points() const;
};

MomentumGrid momentum_grid(const Grid& grid);

struct Flat {};
struct DoubleWell {
    double v_min = 0.0;  // well depth, <= 0 (barrier top sits at V = 0)
};
struct Harmonic {
    double r_eq = 0.0;
    double omega = 0.0;  // angular frequency, a.u.
    double mu = 0.0;     // reduced mass, a.u.
    double force_constant() const { return mu * omega * omega; }
};
using PotentialSpec = std::variant<Flat, DoubleWell, Harmonic>;

/// V_m on the grid. DoubleWell sets v_min wherever bit (n-2) of m is one, so
/// the wells occupy [M/4, M/2) and [3M/4, M); requires n >= 2.
std::vector<double> sample_potential(const PotentialSpec& spec, const Grid& grid);

struct GaussianPacket {
    double r_s = 0.0;  // center, Bohr
    double a = 0.0;    // width parameter, Bohr
    double p_s = 0.0;  // momentum boost, a.u.
};
struct StepSecondQuarter {};
using WavePacketSpec = std::variant<GaussianPacket, StepSecondQuarter>;

/// psi_m = A exp(-((r_m - r_s)/a)^2 + i r_m p_s), normalized to unit 2-norm
/// (sum_m |psi_m|^2 = 1, the register convention). Rejects packets whose
/// boundary amplitude exceeds the admission tolerance, which would wrap
/// around under the periodic kinetic propagator.
std::vector<complex_t> gaussian_amplitudes(const Grid& grid, const GaussianPacket& packet);

/// Uniform amplitude 1/sqrt(M/4) on [M/4, M/2), zero elsewhere.
std::vector<complex_t> step_amplitudes(const Grid& grid);

std::vector<complex_t> packet_amplitudes(const WavePacketSpec& spec, const Grid& grid);

struct Observables {
    double norm = 0.0;
    double mean_r = 0.0;
    double sigma = 0.0;
    std::optional<double> p_tunnel;  // present iff M divisible by 8
    std::optional<double> energy;    // present iff potential and mu were supplied
};

/// Observables of a grid wavefunction. p_tunnel uses the window
/// [M/8, 5M/8): p = 1 - sum over the window of |psi_m|^2. The energy is
/// <V> + sum_k p_k^2/(2 mu) |psi~_k|^2 with psi~ the unitary DFT.
Observables observables(std::span<const complex_t> psi, const Grid& grid,
                        const std::vector<double>* potential = nullptr,
                        std::optional<double> mu = std::nullopt);

/// Same position-space observables from a bare probability distribution
/// (e.g. a measured histogram); energy is never available on this path.
Observables observables_from_probabilities(std::span<const double> prob, const Grid& grid);

/// Probability outside [M/8, 5M/8). Throws unless M is divisible by 8.
double tunneling_probability(std::span<const double> prob);

}  // namespace qmd
