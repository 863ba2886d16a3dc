#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "qmd/common.hpp"
#include "qmd/oracle.hpp"
#include "qmd/rng.hpp"
#include "qmd/statevector.hpp"

namespace qmd::test {

inline std::vector<complex_t> random_amplitudes(int n, std::uint64_t seed) {
    Pcg32 rng(seed);
    std::vector<complex_t> amps(std::size_t{1} << n);
    double norm2 = 0.0;
    for (auto& a : amps) {
        a = complex_t{rng.next_double() - 0.5, rng.next_double() - 0.5};
        norm2 += std::norm(a);
    }
    const double s = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) a *= s;
    return amps;
}

inline StateVector random_state(int n, std::uint64_t seed) {
    StateVector sv(n);
    set_amplitudes(sv, random_amplitudes(n, seed));
    return sv;
}

/// Max |a_m - e^{i phi} b_m| after aligning the global phase via <a|b>.
inline double phase_aligned_distance(std::span<const complex_t> a, std::span<const complex_t> b) {
    complex_t ov{0.0, 0.0};
    for (std::size_t m = 0; m < a.size(); ++m) ov += std::conj(b[m]) * a[m];
    const complex_t phase = std::abs(ov) > 0.0 ? ov / std::abs(ov) : complex_t{1.0, 0.0};
    double worst = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m)
        worst = std::max(worst, std::abs(a[m] - phase * b[m]));
    return worst;
}

/// Quadratic-cost DFT straight from the definition, for checking the fast one.
inline std::vector<complex_t> dft_reference(std::span<const complex_t> psi, bool inverse) {
    const std::size_t M = psi.size();
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<complex_t> out(M, complex_t{0.0, 0.0});
    for (std::size_t k = 0; k < M; ++k)
        for (std::size_t m = 0; m < M; ++m)
            out[k] += psi[m] * std::polar(1.0, sign * 2.0 * std::numbers::pi *
                                                   static_cast<double>(k * m % M) /
                                                   static_cast<double>(M));
    const double scale = 1.0 / std::sqrt(static_cast<double>(M));
    for (auto& a : out) a *= scale;
    return out;
}

inline std::size_t bit_reverse(std::size_t x, int n) {
    std::size_t r = 0;
    for (int i = 0; i < n; ++i) {
        r = (r << 1) | (x & 1u);
        x >>= 1;
    }
    return r;
}

/// y = U x for a row-major dense matrix.
inline std::vector<complex_t> mat_vec(const oracle::DenseMatrix& u,
                                      std::span<const complex_t> x) {
    const std::size_t M = x.size();
    std::vector<complex_t> y(M, complex_t{0.0, 0.0});
    for (std::size_t r = 0; r < M; ++r)
        for (std::size_t c = 0; c < M; ++c) y[r] += u[r * M + c] * x[c];
    return y;
}

/// max |(U^dag U - I)_{rc}|.
inline double unitarity_defect(const oracle::DenseMatrix& u, std::size_t M) {
    double worst = 0.0;
    for (std::size_t r = 0; r < M; ++r) {
        for (std::size_t c = 0; c < M; ++c) {
            complex_t s{0.0, 0.0};
            for (std::size_t k = 0; k < M; ++k) s += std::conj(u[k * M + r]) * u[k * M + c];
            const complex_t expect = (r == c) ? complex_t{1.0, 0.0} : complex_t{0.0, 0.0};
            worst = std::max(worst, std::abs(s - expect));
        }
    }
    return worst;
}

}  // namespace qmd::test
