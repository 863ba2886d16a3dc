// Timings of the gate kernels, serial reference vs OpenMP, plus the oracle
// transform. The workload per register size is one H per qubit, a CP ladder
// and one phase per qubit, repeated until the total work is comparable
// across sizes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qmd/kernels.hpp"
#include "qmd/oracle.hpp"
#include "qmd/rng.hpp"

using qmd::complex_t;

namespace {

std::vector<complex_t> random_state(int n, std::uint64_t seed) {
    qmd::Pcg32 rng(seed);
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

template <typename F>
double time_ms(F&& f, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void workload(std::vector<complex_t>& amps, int n, bool parallel) {
    using namespace qmd::kernels;
    const std::array<complex_t, 4> h = {complex_t{std::numbers::sqrt2 / 2, 0},
                                        complex_t{std::numbers::sqrt2 / 2, 0},
                                        complex_t{std::numbers::sqrt2 / 2, 0},
                                        complex_t{-std::numbers::sqrt2 / 2, 0}};
    const complex_t ph = std::polar(1.0, 0.3);
    for (int q = 0; q < n; ++q)
        parallel ? apply_single_qubit_parallel(amps, q, h)
                 : apply_single_qubit_serial(amps, q, h);
    for (int q = 0; q + 1 < n; ++q)
        parallel ? apply_controlled_phase_parallel(amps, q, q + 1, ph)
                 : apply_controlled_phase_serial(amps, q, q + 1, ph);
    for (int q = 0; q < n; ++q)
        parallel ? apply_phase_parallel(amps, q, ph) : apply_phase_serial(amps, q, ph);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel columns run serial code\n");
#endif
    std::printf("%-8s %14s %14s %9s %14s\n", "qubits", "serial (ms)", "parallel (ms)", "speedup",
                "fft (ms)");
    for (int n : {14, 16, 18, 20}) {
        auto base = random_state(n, 42);
        auto a = base;
        const int reps = n <= 16 ? 20 : 5;
        const double ts = time_ms([&] { workload(a, n, false); }, reps);
        auto b = base;
        const double tp = time_ms([&] { workload(b, n, true); }, reps);
        // the two paths must agree bit for bit
        for (std::size_t m = 0; m < a.size(); ++m) {
            if (a[m] != b[m]) {
                std::printf("MISMATCH at n=%d m=%zu\n", n, m);
                return 1;
            }
        }
        auto c = base;
        const double tf = time_ms([&] { qmd::oracle::fft_pow2_inplace(c, false); }, reps);
        std::printf("%-8d %14.3f %14.3f %9.2f %14.3f\n", n, ts, tp, ts / tp, tf);
    }
    return 0;
}
