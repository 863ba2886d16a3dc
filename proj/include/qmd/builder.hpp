#pragma once

#include <functional>
#include <span>

#include "qmd/circuit.hpp"
#include "qmd/grid.hpp"

namespace qmd {

struct QftOptions {
    /// 0 is exact; degree d drops the d smallest controlled-phase angle
    /// classes (pi/2^(n-1) first).
    int approximation_degree = 0;
    /// Append the final swap network. Off by default; all dynamics circuits
    /// use the no-swap form.
    bool include_swaps = false;
};

/// Angles of the quadratic phase polynomial exp(i(m^2 alpha + m beta + gamma))
/// realizing exp(-i V_m dt) for a harmonic potential. gamma is a global
/// phase: recorded for auditability, never applied.
struct PotentialAngles {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

/// Same polynomial for the kinetic propagator in momentum space,
/// exp(i(m^2 theta + m phi + delta)) = exp(-i p_m^2 dt / (2 mu)), with
/// phi = -theta*M and the global phase delta = theta*M^2/4 (never applied).
struct KineticAngles {
    double theta = 0.0;
    double phi = 0.0;
    double delta = 0.0;
};

enum class PropagationMode { MultiStep, SingleStep };

/// No-swap quantum Fourier transform. The forward circuit realizes the
/// unitary DFT (kernel exp(-2*pi*i*k*m/M)/sqrt(M)) with bit-reversed output
/// order: n H gates plus n(n-1)/2 CP gates of magnitude pi/2^k, k=1..n-1.
/// The inverse reverses the gate order and negates the angles.
Circuit qft(int n, const QftOptions& opts = {}, bool inverse = false);

/// Ry(pi) on qubit n-2 and Ry(pi/2) on qubits 0..n-3: spreads |0...0> evenly
/// over the second quarter of states, |psi_m|^2 = 1/(M/4) on [M/4, M/2).
Circuit step_packet_init(int n);

/// Shallow initializer for a real, non-negative, unimodal target: one Ry on
/// the most significant qubit, then for each lower qubit a base Ry plus one
/// controlled-Ry from the qubit above (n-1 two-qubit constructions, each
/// decomposed as Ry/CNOT/Ry/CNOT with CNOT = H.CP(pi).H). Angles come from a
/// deterministic coordinate-descent fit seeded with the target's conditional
/// bit marginals. Throws if the achieved fidelity is below 0.99.
Circuit gaussian_packet_init(int n, std::span<const double> target);

/// Best-effort fit used by gaussian_packet_init; returns the circuit and the
/// achieved fidelity without enforcing the threshold.
struct GaussianInitFit {
    Circuit circuit;
    double fidelity = 0.0;
};
GaussianInitFit fit_gaussian_packet_init(int n, std::span<const double> target);

/// diag(exp(i*m*angle_per_unit)): P(2^j * angle_per_unit) on every qubit j.
/// Used to stamp a linear phase (e.g. a momentum boost) onto a real packet.
Circuit linear_phase_layer(int n, double angle_per_unit);

/// Double-well potential propagator for one interval dt: a single
/// P(-v_min*dt) on qubit n-2 (phase lands exactly on the well states).
Circuit double_well_op(int n, double v_min, double dt);

/// alpha = -k dr^2 dt / 2, beta, gamma such that
/// m^2 alpha + m beta + gamma = -V(r_m) dt for every m.
PotentialAngles harmonic_angles(const Grid& grid, double force_constant, double r_eq, double dt);

/// Linear layer P(2^j beta) on each qubit j, then the quadratic layer
/// P(2^(2j) alpha) on each j and CP(2*2^(j+k) alpha) for every pair j < k.
Circuit harmonic_op(int n, const PotentialAngles& angles);

/// theta = -(2 pi / (r_max - r_min))^2 dt / (2 mu); guarantees
/// m^2 theta + m phi + delta = -p_m^2 dt / (2 mu) for all m.
KineticAngles kinetic_angles(const Grid& grid, double mu, double dt);

/// Same gate pattern as harmonic_op with every qubit index j replaced by
/// n-1-j (the no-swap QFT leaves the register bit-reversed).
Circuit kinetic_phase_op(int n, const KineticAngles& angles);

/// exp(-i T dt) as QFT . X(q0) . kinetic_phase_op . X(q0) . IQFT, all in the
/// no-swap form. The X conjugation on q0 pairwise-reorders the bit-reversed
/// momentum states so the composite with exact QFT equals the classical
/// Fourier-sandwich propagator on every basis state (up to global phase);
/// for n <= 6 the builder verifies this once per register size and caches.
Circuit kinetic_step(const Grid& grid, double mu, double dt, const QftOptions& opts = {});

/// One Strang step: half_potential . kinetic_step(dt) . half_potential.
/// The caller passes the potential circuit built for dt/2.
Circuit split_step(const Circuit& half_potential, const Grid& grid, double mu, double dt,
                   const QftOptions& opts = {});

/// MultiStep: init followed by j copies of step_builder(dt). SingleStep:
/// init followed by one step_builder(j*dt). Both reach time j*dt.
Circuit build_propagation(const Circuit& init, const std::function<Circuit(double)>& step_builder,
                          double dt, int j, PropagationMode mode);

/// Propagation circuit assembled from potential/kinetic parts. With
/// merge_half_steps, interior half-potential pairs of consecutive Strang
/// steps are fused into full-step potential circuits (fewer gates, same
/// unitary); off by default so the build is gate-for-gate the repeated
/// split step.
Circuit build_split_propagation(const Circuit& init,
                                const std::function<Circuit(double)>& potential_builder,
                                const Grid& grid, double mu, double dt, int j,
                                PropagationMode mode, const QftOptions& opts = {},
                                bool merge_half_steps = false);

}  // namespace qmd
