#pragma once

#include <array>
#include <stdexcept>

#include "qmd/common.hpp"

namespace qmd {

enum class GateKind { P, Ry, X, H, CP };

/// One primitive gate. `control` is -1 except for CP. Qubit 0 is the least
/// significant bit of the basis-state index (little-endian register).
struct GateOp {
    GateKind kind = GateKind::P;
    double angle = 0.0;
    int target = 0;
    int control = -1;

    static GateOp p(double phi, int target) { return {GateKind::P, phi, target, -1}; }
    static GateOp ry(double phi, int target) { return {GateKind::Ry, phi, target, -1}; }
    static GateOp x(int target) { return {GateKind::X, 0.0, target, -1}; }
    static GateOp h(int target) { return {GateKind::H, 0.0, target, -1}; }
    static GateOp cp(double phi, int control, int target) {
        if (control == target) throw std::invalid_argument("CP: control equals target");
        return {GateKind::CP, phi, target, control};
    }

    bool is_two_qubit() const { return kind == GateKind::CP; }

    /// 2x2 matrix {m00, m01, m10, m11} for the single-qubit kinds.
    std::array<complex_t, 4> matrix2() const;
};

/// Gate with negated angle; P/Ry/CP invert by negation, X/H are involutions.
GateOp inverse_gate(const GateOp& g);

}  // namespace qmd
