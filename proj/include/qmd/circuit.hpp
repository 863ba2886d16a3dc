#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qmd/gates.hpp"

namespace qmd {

struct CircuitStats {
    std::size_t p = 0;
    std::size_t ry = 0;
    std::size_t x = 0;
    std::size_t h = 0;
    std::size_t cp = 0;
    std::size_t two_qubit_gates = 0;  // primitive CP count
    std::size_t depth = 0;
    std::size_t total() const { return p + ry + x + h + cp; }
};

/// Ordered gate sequence on an n-qubit register. gates[0] acts first.
struct Circuit {
    int n_qubits = 0;
    std::vector<GateOp> gates;

    /// Block-level two-qubit count: a controlled-Ry block is one two-qubit
    /// gate even though it decomposes into several primitives. Maintained by
    /// append(); builders override where the accounting differs.
    std::size_t two_qubit_constructions = 0;

    /// Free-form builder annotation (e.g. reorder-gate placement).
    std::string note;

    explicit Circuit(int n = 0) : n_qubits(n) {}

    void append(const GateOp& g);
    void append(const Circuit& other);

    /// Reversed gate order with negated angles.
    Circuit inverse() const;

    /// Recomputed from the gate list.
    CircuitStats stats() const;
};

}  // namespace qmd
