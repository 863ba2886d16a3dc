#include "qmd/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qmd/oracle.hpp"

namespace qmd {

namespace {
// The benchmark free-particle packet (r_s = 1, a = 0.25 on [0,5]/256) sits at
// boundary amplitude 3.8e-8 after normalization and must be admitted.
constexpr double kBoundaryAmplitudeTol = 1e-6;
}  // namespace

std::vector<double> Grid::points() const {
    std::vector<double> r(num_points);
    for (std::size_t m = 0; m < num_points; ++m) r[m] = point(m);
    return r;
}

Grid make_grid(double r_min, double r_max, int n_qubits) {
    if (!(r_max > r_min))
        throw std::invalid_argument("make_grid: r_max must exceed r_min");
    if (n_qubits < 1 || n_qubits > 24)
        throw std::invalid_argument("make_grid: n_qubits must be in [1, 24]");
    Grid g;
    g.r_min = r_min;
    g.r_max = r_max;
    g.n_qubits = n_qubits;
    g.num_points = std::size_t{1} << n_qubits;
    g.delta_r = (r_max - r_min) / static_cast<double>(g.num_points);
    return g;
}

std::vector<double> MomentumGrid::points() const {
    std::vector<double> p(num_points);
    for (std::size_t m = 0; m < num_points; ++m) p[m] = point(m);
    return p;
}

MomentumGrid momentum_grid(const Grid& grid) {
    if (grid.num_points < 2) throw std::invalid_argument("momentum_grid: invalid grid");
    MomentumGrid mg;
    mg.num_points = grid.num_points;
    mg.delta_p = 2.0 * std::numbers::pi / grid.extent();
    mg.p_max = static_cast<double>(grid.num_points) * mg.delta_p / 2.0;
    return mg;
}

std::vector<double> sample_potential(const PotentialSpec& spec, const Grid& grid) {
    const std::size_t M = grid.num_points;
    std::vector<double> v(M, 0.0);
    if (std::holds_alternative<Flat>(spec)) return v;
    if (const auto* dw = std::get_if<DoubleWell>(&spec)) {
        if (grid.n_qubits < 2)
            throw std::invalid_argument("sample_potential: double well needs n_qubits >= 2");
        if (dw->v_min > 0.0)
            throw std::invalid_argument("sample_potential: double well v_min must be <= 0");
        const std::size_t bit = std::size_t{1} << (grid.n_qubits - 2);
        for (std::size_t m = 0; m < M; ++m)
            if (m & bit) v[m] = dw->v_min;
        return v;
    }
    const auto& h = std::get<Harmonic>(spec);
    if (!(h.force_constant() > 0.0))
        throw std::invalid_argument("sample_potential: harmonic force constant must be positive");
    for (std::size_t m = 0; m < M; ++m) {
        const double d = grid.point(m) - h.r_eq;
        v[m] = 0.5 * h.force_constant() * d * d;
    }
    return v;
}

std::vector<complex_t> gaussian_amplitudes(const Grid& grid, const GaussianPacket& packet) {
    if (!(packet.a > 0.0))
        throw std::invalid_argument("gaussian_amplitudes: width parameter a must be positive");
    const std::size_t M = grid.num_points;
    std::vector<complex_t> psi(M);
    double norm2 = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
        const double r = grid.point(m);
        const double u = (r - packet.r_s) / packet.a;
        const double mag = std::exp(-u * u);
        psi[m] = std::polar(mag, r * packet.p_s);
        norm2 += mag * mag;
    }
    if (norm2 <= 0.0) throw std::invalid_argument("gaussian_amplitudes: vanishing packet");
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& a : psi) a *= scale;
    const double edge = std::max(std::abs(psi.front()), std::abs(psi.back()));
    if (edge > kBoundaryAmplitudeTol)
        throw std::invalid_argument(
            "gaussian_amplitudes: packet does not fit the grid (boundary amplitude " +
            std::to_string(edge) + ")");
    return psi;
}

std::vector<complex_t> step_amplitudes(const Grid& grid) {
    if (grid.n_qubits < 2)
        throw std::invalid_argument("step_amplitudes: needs n_qubits >= 2");
    const std::size_t M = grid.num_points;
    std::vector<complex_t> psi(M, complex_t{0.0, 0.0});
    const double amp = 1.0 / std::sqrt(static_cast<double>(M / 4));
    for (std::size_t m = M / 4; m < M / 2; ++m) psi[m] = amp;
    return psi;
}

std::vector<complex_t> packet_amplitudes(const WavePacketSpec& spec, const Grid& grid) {
    if (const auto* g = std::get_if<GaussianPacket>(&spec)) return gaussian_amplitudes(grid, *g);
    return step_amplitudes(grid);
}

double tunneling_probability(std::span<const double> prob) {
    const std::size_t M = prob.size();
    if (M % 8 != 0)
        throw std::invalid_argument("tunneling_probability: grid size must be divisible by 8");
    double inside = 0.0;
    for (std::size_t m = M / 8; m < 5 * M / 8; ++m) inside += prob[m];
    return 1.0 - inside;
}

namespace {

Observables position_observables(std::span<const double> prob, const Grid& grid) {
    if (prob.size() != grid.num_points)
        throw std::invalid_argument("observables: length does not match grid");
    Observables o;
    double mean = 0.0, mean2 = 0.0, norm = 0.0;
    for (std::size_t m = 0; m < prob.size(); ++m) {
        const double r = grid.point(m);
        norm += prob[m];
        mean += r * prob[m];
        mean2 += r * r * prob[m];
    }
    o.norm = norm;
    o.mean_r = mean;
    const double var = mean2 - mean * mean;
    o.sigma = std::sqrt(var > 0.0 ? var : 0.0);
    if (grid.num_points % 8 == 0) o.p_tunnel = tunneling_probability(prob);
    return o;
}

}  // namespace

Observables observables_from_probabilities(std::span<const double> prob, const Grid& grid) {
    return position_observables(prob, grid);
}

Observables observables(std::span<const complex_t> psi, const Grid& grid,
                        const std::vector<double>* potential, std::optional<double> mu) {
    if (psi.size() != grid.num_points)
        throw std::invalid_argument("observables: length does not match grid");
    std::vector<double> prob(psi.size());
    for (std::size_t m = 0; m < psi.size(); ++m) prob[m] = std::norm(psi[m]);
    Observables o = position_observables(prob, grid);
    if (potential || mu) {
        if (!potential || !mu)
            throw std::invalid_argument("observables: energy needs both potential and mu");
        if (potential->size() != psi.size())
            throw std::invalid_argument("observables: potential length mismatch");
        double e = 0.0;
        for (std::size_t m = 0; m < psi.size(); ++m) e += (*potential)[m] * prob[m];
        // Kinetic part through the unitary DFT; bin k carries the aliased
        // momentum s(k)*delta_p with s(k) = k for k < M/2, k - M otherwise.
        const std::vector<complex_t> ft = oracle::unitary_dft(psi, false);
        const std::size_t M = ft.size();
        const MomentumGrid mg = momentum_grid(grid);
        for (std::size_t k = 0; k < M; ++k) {
            const double s = (k < M / 2) ? static_cast<double>(k)
                                         : static_cast<double>(k) - static_cast<double>(M);
            const double p = s * mg.delta_p;
            e += p * p / (2.0 * *mu) * std::norm(ft[k]);
        }
        o.energy = e;
    }
    return o;
}

}  // namespace qmd
