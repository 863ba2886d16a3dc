#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qmd/circuit.hpp"
#include "qmd/common.hpp"
#include "qmd/gates.hpp"

namespace qmd {

/// Per-gate stochastic Pauli injection: after every gate, with probability
/// p_err an X, Y or Z lands on a uniformly random qubit. Qualitative stand-in
/// for hardware noise; p_err = 0 reproduces the exact evolution bit-for-bit.
struct NoiseSpec {
    double p_err = 0.0;
    std::uint64_t seed = 0;
};

/// Kernel selection. Auto parallelizes once the register is large enough to
/// amortize thread startup; results are bitwise identical either way.
enum class ExecPolicy { Auto, Serial, Parallel };

/// 2^n complex amplitudes indexed little-endian: qubit 0 is the least
/// significant bit of the basis index m.
class StateVector {
  public:
    explicit StateVector(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    std::size_t size() const { return amps_.size(); }
    std::span<const complex_t> amplitudes() const { return amps_; }
    std::span<complex_t> amplitudes() { return amps_; }
    double norm2() const;
    std::vector<double> probabilities() const;

  private:
    int n_qubits_;
    std::vector<complex_t> amps_;
};

/// |0...0>; n in [1, 24].
StateVector new_zero_state(int n_qubits);

/// Inject amplitudes (renormalized on entry). Rejects length mismatches and
/// vectors whose 2-norm is off unity by more than 1e-9.
void set_amplitudes(StateVector& state, std::span<const complex_t> amplitudes);

void apply_gate(StateVector& state, const GateOp& gate, ExecPolicy policy = ExecPolicy::Auto);

void apply_circuit(StateVector& state, const Circuit& circuit, const NoiseSpec* noise = nullptr,
                   ExecPolicy policy = ExecPolicy::Auto);

/// Multinomial sample of |psi_m|^2: shots draws via the seeded Pcg32 and an
/// inverse-CDF lookup. Deterministic for a fixed (state, shots, seed).
std::map<std::uint64_t, std::uint64_t> sample_counts(const StateVector& state,
                                                     std::uint64_t shots, std::uint64_t seed);

/// <a|b>.
complex_t overlap(const StateVector& a, const StateVector& b);

}  // namespace qmd
