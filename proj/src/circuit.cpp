#include "qmd/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmd {

std::array<complex_t, 4> GateOp::matrix2() const {
    switch (kind) {
        case GateKind::P:
            return {complex_t{1.0, 0.0}, complex_t{0.0, 0.0}, complex_t{0.0, 0.0},
                    std::polar(1.0, angle)};
        case GateKind::Ry: {
            const double c = std::cos(angle / 2.0);
            const double s = std::sin(angle / 2.0);
            return {complex_t{c, 0.0}, complex_t{-s, 0.0}, complex_t{s, 0.0}, complex_t{c, 0.0}};
        }
        case GateKind::X:
            return {complex_t{0.0, 0.0}, complex_t{1.0, 0.0}, complex_t{1.0, 0.0},
                    complex_t{0.0, 0.0}};
        case GateKind::H: {
            const double s = 1.0 / std::sqrt(2.0);
            return {complex_t{s, 0.0}, complex_t{s, 0.0}, complex_t{s, 0.0}, complex_t{-s, 0.0}};
        }
        case GateKind::CP:
            throw std::logic_error("matrix2: CP is not a single-qubit gate");
    }
    throw std::logic_error("matrix2: unknown gate kind");
}

GateOp inverse_gate(const GateOp& g) {
    GateOp inv = g;
    switch (g.kind) {
        case GateKind::P:
        case GateKind::Ry:
        case GateKind::CP:
            inv.angle = -g.angle;
            break;
        case GateKind::X:
        case GateKind::H:
            break;
    }
    return inv;
}

void Circuit::append(const GateOp& g) {
    if (g.target < 0 || g.target >= n_qubits)
        throw std::invalid_argument("Circuit::append: target out of range");
    if (g.kind == GateKind::CP && (g.control < 0 || g.control >= n_qubits))
        throw std::invalid_argument("Circuit::append: control out of range");
    gates.push_back(g);
    if (g.is_two_qubit()) ++two_qubit_constructions;
}

void Circuit::append(const Circuit& other) {
    if (other.n_qubits != n_qubits)
        throw std::invalid_argument("Circuit::append: qubit count mismatch");
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
    two_qubit_constructions += other.two_qubit_constructions;
}

Circuit Circuit::inverse() const {
    Circuit inv(n_qubits);
    inv.two_qubit_constructions = two_qubit_constructions;
    inv.gates.reserve(gates.size());
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) inv.gates.push_back(inverse_gate(*it));
    return inv;
}

CircuitStats Circuit::stats() const {
    CircuitStats s;
    std::vector<std::size_t> level(static_cast<std::size_t>(n_qubits), 0);
    for (const auto& g : gates) {
        switch (g.kind) {
            case GateKind::P: ++s.p; break;
            case GateKind::Ry: ++s.ry; break;
            case GateKind::X: ++s.x; break;
            case GateKind::H: ++s.h; break;
            case GateKind::CP: ++s.cp; break;
        }
        std::size_t d = level[static_cast<std::size_t>(g.target)];
        if (g.kind == GateKind::CP)
            d = std::max(d, level[static_cast<std::size_t>(g.control)]);
        ++d;
        level[static_cast<std::size_t>(g.target)] = d;
        if (g.kind == GateKind::CP) level[static_cast<std::size_t>(g.control)] = d;
    }
    s.two_qubit_gates = s.cp;
    s.depth = level.empty() ? 0 : *std::max_element(level.begin(), level.end());
    return s;
}

}  // namespace qmd
