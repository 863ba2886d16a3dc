#include "qmd/kernels.hpp"

#include <cstdint>

namespace qmd::kernels {

namespace {

// j-th pair index -> amplitude index with `target` bit cleared
inline std::size_t insert_zero(std::size_t j, int bit) {
    const std::size_t low = j & ((std::size_t{1} << bit) - 1);
    return ((j >> bit) << (bit + 1)) | low;
}

// j-th index with both sorted bits (b0 < b1) set
inline std::size_t insert_two_ones(std::size_t j, int b0, int b1) {
    std::size_t i = insert_zero(j, b0);
    const std::size_t low = i & ((std::size_t{1} << b1) - 1);
    i = ((i >> b1) << (b1 + 1)) | low;
    return i | (std::size_t{1} << b0) | (std::size_t{1} << b1);
}

}  // namespace

void apply_single_qubit_serial(std::span<complex_t> amps, int target,
                               const std::array<complex_t, 4>& u) {
    const std::size_t pairs = amps.size() / 2;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t j = 0; j < pairs; ++j) {
        const std::size_t i0 = insert_zero(j, target);
        const std::size_t i1 = i0 | tbit;
        const complex_t a0 = amps[i0];
        const complex_t a1 = amps[i1];
        amps[i0] = u[0] * a0 + u[1] * a1;
        amps[i1] = u[2] * a0 + u[3] * a1;
    }
}

void apply_single_qubit_parallel(std::span<complex_t> amps, int target,
                                 const std::array<complex_t, 4>& u) {
    const auto pairs = static_cast<std::int64_t>(amps.size() / 2);
    const std::size_t tbit = std::size_t{1} << target;
    complex_t* a = amps.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < pairs; ++j) {
        const std::size_t i0 = insert_zero(static_cast<std::size_t>(j), target);
        const std::size_t i1 = i0 | tbit;
        const complex_t a0 = a[i0];
        const complex_t a1 = a[i1];
        a[i0] = u[0] * a0 + u[1] * a1;
        a[i1] = u[2] * a0 + u[3] * a1;
    }
}

void apply_phase_serial(std::span<complex_t> amps, int target, complex_t phase) {
    const std::size_t half = amps.size() / 2;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t j = 0; j < half; ++j) {
        const std::size_t i1 = insert_zero(j, target) | tbit;
        amps[i1] *= phase;
    }
}

void apply_phase_parallel(std::span<complex_t> amps, int target, complex_t phase) {
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    const std::size_t tbit = std::size_t{1} << target;
    complex_t* a = amps.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < half; ++j) {
        const std::size_t i1 = insert_zero(static_cast<std::size_t>(j), target) | tbit;
        a[i1] *= phase;
    }
}

void apply_controlled_phase_serial(std::span<complex_t> amps, int control, int target,
                                   complex_t phase) {
    const std::size_t quarter = amps.size() / 4;
    const int b0 = control < target ? control : target;
    const int b1 = control < target ? target : control;
    for (std::size_t j = 0; j < quarter; ++j) {
        amps[insert_two_ones(j, b0, b1)] *= phase;
    }
}

void apply_controlled_phase_parallel(std::span<complex_t> amps, int control, int target,
                                     complex_t phase) {
    const auto quarter = static_cast<std::int64_t>(amps.size() / 4);
    const int b0 = control < target ? control : target;
    const int b1 = control < target ? target : control;
    complex_t* a = amps.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < quarter; ++j) {
        a[insert_two_ones(static_cast<std::size_t>(j), b0, b1)] *= phase;
    }
}

}  // namespace qmd::kernels
