#include "qmd/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qmd/kernels.hpp"
#include "qmd/rng.hpp"

namespace qmd {

namespace {

// Below this register size the OpenMP fork costs more than the gate.
constexpr int kParallelThresholdQubits = 14;

bool use_parallel(std::size_t size, ExecPolicy policy) {
    switch (policy) {
        case ExecPolicy::Serial: return false;
        case ExecPolicy::Parallel: return true;
        case ExecPolicy::Auto: return size >= (std::size_t{1} << kParallelThresholdQubits);
    }
    return false;
}

void check_qubit(int q, int n, const char* what) {
    if (q < 0 || q >= n) throw std::invalid_argument(std::string(what) + ": qubit out of range");
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 24)
        throw std::invalid_argument("StateVector: n_qubits must be in [1, 24]");
    amps_.assign(std::size_t{1} << n_qubits, complex_t{0.0, 0.0});
    amps_[0] = 1.0;
}

double StateVector::norm2() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t m = 0; m < amps_.size(); ++m) p[m] = std::norm(amps_[m]);
    return p;
}

StateVector new_zero_state(int n_qubits) { return StateVector(n_qubits); }

void set_amplitudes(StateVector& state, std::span<const complex_t> amplitudes) {
    if (amplitudes.size() != state.size())
        throw std::invalid_argument("set_amplitudes: length mismatch");
    double norm2 = 0.0;
    for (const auto& a : amplitudes) norm2 += std::norm(a);
    if (norm2 == 0.0) throw std::invalid_argument("set_amplitudes: zero vector");
    const double norm = std::sqrt(norm2);
    if (std::abs(norm - 1.0) > 1e-9)
        throw std::invalid_argument("set_amplitudes: 2-norm must be within 1e-9 of 1");
    const double scale = 1.0 / norm;
    auto out = state.amplitudes();
    for (std::size_t m = 0; m < amplitudes.size(); ++m) out[m] = amplitudes[m] * scale;
}

void apply_gate(StateVector& state, const GateOp& gate, ExecPolicy policy) {
    const int n = state.n_qubits();
    check_qubit(gate.target, n, "apply_gate");
    auto amps = state.amplitudes();
    const bool par = use_parallel(amps.size(), policy);
    switch (gate.kind) {
        case GateKind::P: {
            const complex_t ph = std::polar(1.0, gate.angle);
            par ? kernels::apply_phase_parallel(amps, gate.target, ph)
                : kernels::apply_phase_serial(amps, gate.target, ph);
            return;
        }
        case GateKind::CP: {
            check_qubit(gate.control, n, "apply_gate");
            if (gate.control == gate.target)
                throw std::invalid_argument("apply_gate: CP control equals target");
            const complex_t ph = std::polar(1.0, gate.angle);
            par ? kernels::apply_controlled_phase_parallel(amps, gate.control, gate.target, ph)
                : kernels::apply_controlled_phase_serial(amps, gate.control, gate.target, ph);
            return;
        }
        default: {
            const auto u = gate.matrix2();
            par ? kernels::apply_single_qubit_parallel(amps, gate.target, u)
                : kernels::apply_single_qubit_serial(amps, gate.target, u);
            return;
        }
    }
}

namespace {

void apply_pauli(StateVector& state, int which, int qubit, ExecPolicy policy) {
    auto amps = state.amplitudes();
    const bool par = use_parallel(amps.size(), policy);
    switch (which) {
        case 0:  // X
            apply_gate(state, GateOp::x(qubit), policy);
            return;
        case 1: {  // Y
            const std::array<complex_t, 4> y = {complex_t{0.0, 0.0}, complex_t{0.0, -1.0},
                                                complex_t{0.0, 1.0}, complex_t{0.0, 0.0}};
            par ? kernels::apply_single_qubit_parallel(amps, qubit, y)
                : kernels::apply_single_qubit_serial(amps, qubit, y);
            return;
        }
        default:  // Z
            par ? kernels::apply_phase_parallel(amps, qubit, complex_t{-1.0, 0.0})
                : kernels::apply_phase_serial(amps, qubit, complex_t{-1.0, 0.0});
            return;
    }
}

}  // namespace

void apply_circuit(StateVector& state, const Circuit& circuit, const NoiseSpec* noise,
                   ExecPolicy policy) {
    if (circuit.n_qubits != state.n_qubits())
        throw std::invalid_argument("apply_circuit: qubit count mismatch");
    if (noise == nullptr || noise->p_err <= 0.0) {
        for (const auto& g : circuit.gates) apply_gate(state, g, policy);
        return;
    }
    if (noise->p_err > 1.0) throw std::invalid_argument("apply_circuit: p_err must be in [0, 1]");
    Pcg32 rng(noise->seed);
    for (const auto& g : circuit.gates) {
        apply_gate(state, g, policy);
        if (rng.next_double() < noise->p_err) {
            const int pauli = static_cast<int>(rng.next_below(3));
            const int qubit =
                static_cast<int>(rng.next_below(static_cast<std::uint32_t>(state.n_qubits())));
            apply_pauli(state, pauli, qubit, policy);
        }
    }
}

std::map<std::uint64_t, std::uint64_t> sample_counts(const StateVector& state,
                                                     std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("sample_counts: shots must be >= 1");
    const auto prob = state.probabilities();
    std::vector<double> cdf(prob.size());
    double acc = 0.0;
    for (std::size_t m = 0; m < prob.size(); ++m) {
        acc += prob[m];
        cdf[m] = acc;
    }
    cdf.back() = std::max(cdf.back(), 1.0);
    Pcg32 rng(seed);
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.next_double();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const auto m = static_cast<std::uint64_t>(
            std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
        ++counts[m];
    }
    return counts;
}

complex_t overlap(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("overlap: size mismatch");
    complex_t s{0.0, 0.0};
    const auto aa = a.amplitudes();
    const auto bb = b.amplitudes();
    for (std::size_t m = 0; m < aa.size(); ++m) s += std::conj(aa[m]) * bb[m];
    return s;
}

}  // namespace qmd
