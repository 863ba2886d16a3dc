#pragma once

#include <array>
#include <span>

#include "qmd/common.hpp"

namespace qmd::kernels {

/// Gate kernels over a 2^n amplitude array. Each comes in a serial reference
/// form and an OpenMP form iterating the same index decomposition; every
/// amplitude is written exactly once per gate from values read before any
/// write, so the parallel results are bitwise identical to the serial ones.

/// Generic 2x2 gate u = {m00, m01, m10, m11} on `target`.
void apply_single_qubit_serial(std::span<complex_t> amps, int target,
                               const std::array<complex_t, 4>& u);
void apply_single_qubit_parallel(std::span<complex_t> amps, int target,
                                 const std::array<complex_t, 4>& u);

/// diag(1, phase) on `target`.
void apply_phase_serial(std::span<complex_t> amps, int target, complex_t phase);
void apply_phase_parallel(std::span<complex_t> amps, int target, complex_t phase);

/// phase on the |11> subspace of (control, target).
void apply_controlled_phase_serial(std::span<complex_t> amps, int control, int target,
                                   complex_t phase);
void apply_controlled_phase_parallel(std::span<complex_t> amps, int control, int target,
                                     complex_t phase);

}  // namespace qmd::kernels
