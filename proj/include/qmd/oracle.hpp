#pragma once

#include <span>
#include <vector>

#include "qmd/circuit.hpp"
#include "qmd/common.hpp"
#include "qmd/grid.hpp"

namespace qmd::oracle {

/// Unitary DFT, forward kernel exp(-2*pi*i*k*m/M)/sqrt(M); the inverse is the
/// conjugate transform. Radix-2 iterative scheme, power-of-two lengths only.
std::vector<complex_t> unitary_dft(std::span<const complex_t> psi, bool inverse);

/// In-place unnormalized radix-2 FFT (same kernel convention as unitary_dft).
void fft_pow2_inplace(std::span<complex_t> data, bool inverse);

/// Classical reference wavefunction on a grid.
struct OracleState {
    Grid grid;
    std::vector<complex_t> psi;
};

OracleState make_oracle_state(const Grid& grid, std::vector<complex_t> psi);

/// exp(-i T dt) via the Fourier sandwich: transform to momentum space,
/// multiply exp(-i p^2 dt / (2 mu)) per bin (bin k carries momentum
/// s(k)*delta_p with s(k) = k for k < M/2, k - M otherwise, which places the
/// monotonic p_m of bin m at frequency index m XOR M/2), transform back.
/// A packet with p_s > 0 moves toward increasing r.
void kinetic_apply(OracleState& state, double mu, double dt);

/// Strang-split trajectory: each step applies exp(-i V dt/2), the kinetic
/// sandwich, exp(-i V dt/2). Returns steps+1 states, [0] being the input.
/// Boundary conditions are periodic by construction.
std::vector<OracleState> split_operator_propagate(const OracleState& state,
                                                  std::span<const double> potential, double mu,
                                                  double dt, int steps);

/// Row-major M x M dense matrix.
using DenseMatrix = std::vector<complex_t>;

/// Dense unitary of a circuit (n <= 10): the product of embedded gate
/// matrices in sequence order, built from the Kronecker entry formula.
/// Independent of the statevector kernels; used to verify them.
DenseMatrix circuit_unitary(const Circuit& circuit);

}  // namespace qmd::oracle
