#include "qmd/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace qmd::oracle {

namespace {

bool is_pow2(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

}  // namespace

void fft_pow2_inplace(std::span<complex_t> data, bool inverse) {
    const std::size_t M = data.size();
    if (!is_pow2(M)) throw std::invalid_argument("fft: length must be a power of two");
    // bit-reversal reorder
    for (std::size_t i = 1, j = 0; i < M; ++i) {
        std::size_t bit = M >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    if (M == 1) return;
    // twiddle table from std::polar directly; strided per stage
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<complex_t> tw(M / 2);
    for (std::size_t k = 0; k < M / 2; ++k)
        tw[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                                    static_cast<double>(M));
    for (std::size_t len = 2; len <= M; len <<= 1) {
        const std::size_t stride = M / len;
        for (std::size_t i = 0; i < M; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const complex_t w = tw[k * stride];
                const complex_t u = data[i + k];
                const complex_t t = w * data[i + k + len / 2];
                data[i + k] = u + t;
                data[i + k + len / 2] = u - t;
            }
        }
    }
}

std::vector<complex_t> unitary_dft(std::span<const complex_t> psi, bool inverse) {
    std::vector<complex_t> out(psi.begin(), psi.end());
    fft_pow2_inplace(out, inverse);
    const double scale = 1.0 / std::sqrt(static_cast<double>(out.size()));
    for (auto& a : out) a *= scale;
    return out;
}

OracleState make_oracle_state(const Grid& grid, std::vector<complex_t> psi) {
    if (psi.size() != grid.num_points)
        throw std::invalid_argument("make_oracle_state: length does not match grid");
    return OracleState{grid, std::move(psi)};
}

void kinetic_apply(OracleState& state, double mu, double dt) {
    if (!(mu > 0.0)) throw std::invalid_argument("kinetic_apply: mu must be positive");
    const std::size_t M = state.psi.size();
    const MomentumGrid mg = momentum_grid(state.grid);
    fft_pow2_inplace(state.psi, false);
    for (std::size_t k = 0; k < M; ++k) {
        const double s = (k < M / 2) ? static_cast<double>(k)
                                     : static_cast<double>(k) - static_cast<double>(M);
        const double p = s * mg.delta_p;
        state.psi[k] *= std::polar(1.0, -p * p * dt / (2.0 * mu));
    }
    fft_pow2_inplace(state.psi, true);
    const double inv_m = 1.0 / static_cast<double>(M);
    for (auto& a : state.psi) a *= inv_m;
}

std::vector<OracleState> split_operator_propagate(const OracleState& state,
                                                  std::span<const double> potential, double mu,
                                                  double dt, int steps) {
    if (potential.size() != state.psi.size())
        throw std::invalid_argument("split_operator_propagate: potential length mismatch");
    if (steps < 1) throw std::invalid_argument("split_operator_propagate: steps must be >= 1");
    const std::size_t M = state.psi.size();
    std::vector<complex_t> half(M);
    for (std::size_t m = 0; m < M; ++m) half[m] = std::polar(1.0, -potential[m] * dt / 2.0);
    std::vector<OracleState> traj;
    traj.reserve(static_cast<std::size_t>(steps) + 1);
    traj.push_back(state);
    OracleState cur = state;
    for (int s = 0; s < steps; ++s) {
        for (std::size_t m = 0; m < M; ++m) cur.psi[m] *= half[m];
        kinetic_apply(cur, mu, dt);
        for (std::size_t m = 0; m < M; ++m) cur.psi[m] *= half[m];
        traj.push_back(cur);
    }
    return traj;
}

namespace {

// U <- G_emb * U for one gate, from the embedded-entry formula: a
// single-qubit gate couples row r only to rows that differ in the target
// bit; P and CP scale rows in place.
void left_multiply(const GateOp& g, int n, DenseMatrix& u) {
    const std::size_t M = std::size_t{1} << n;
    switch (g.kind) {
        case GateKind::P: {
            const complex_t ph = std::polar(1.0, g.angle);
            const std::size_t bit = std::size_t{1} << g.target;
            for (std::size_t r = 0; r < M; ++r)
                if (r & bit)
                    for (std::size_t c = 0; c < M; ++c) u[r * M + c] *= ph;
            return;
        }
        case GateKind::CP: {
            const complex_t ph = std::polar(1.0, g.angle);
            const std::size_t tb = std::size_t{1} << g.target;
            const std::size_t cb = std::size_t{1} << g.control;
            for (std::size_t r = 0; r < M; ++r)
                if ((r & tb) && (r & cb))
                    for (std::size_t c = 0; c < M; ++c) u[r * M + c] *= ph;
            return;
        }
        default: {
            const auto m2 = g.matrix2();
            const std::size_t bit = std::size_t{1} << g.target;
            for (std::size_t r0 = 0; r0 < M; ++r0) {
                if (r0 & bit) continue;
                const std::size_t r1 = r0 | bit;
                for (std::size_t c = 0; c < M; ++c) {
                    const complex_t a = u[r0 * M + c];
                    const complex_t b = u[r1 * M + c];
                    u[r0 * M + c] = m2[0] * a + m2[1] * b;
                    u[r1 * M + c] = m2[2] * a + m2[3] * b;
                }
            }
            return;
        }
    }
}

}  // namespace

DenseMatrix circuit_unitary(const Circuit& circuit) {
    if (circuit.n_qubits < 1 || circuit.n_qubits > 10)
        throw std::invalid_argument("circuit_unitary: n_qubits must be in [1, 10]");
    const std::size_t M = std::size_t{1} << circuit.n_qubits;
    DenseMatrix u(M * M, complex_t{0.0, 0.0});
    for (std::size_t i = 0; i < M; ++i) u[i * M + i] = 1.0;
    for (const auto& g : circuit.gates) left_multiply(g, circuit.n_qubits, u);
    return u;
}

}  // namespace qmd::oracle
