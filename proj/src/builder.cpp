#include "qmd/builder.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qmd/oracle.hpp"
#include "qmd/statevector.hpp"

namespace qmd {

namespace {
constexpr double kPi = std::numbers::pi;
}

Circuit qft(int n, const QftOptions& opts, bool inverse) {
    if (n < 1) throw std::invalid_argument("qft: n must be >= 1");
    if (opts.approximation_degree < 0 || opts.approximation_degree > n - 1)
        throw std::invalid_argument("qft: approximation degree must be in [0, n-1]");
    Circuit c(n);
    for (int j = n - 1; j >= 0; --j) {
        c.append(GateOp::h(j));
        for (int i = j - 1; i >= 0; --i) {
            const int k = j - i;  // angle class pi/2^k
            if (k > n - 1 - opts.approximation_degree) continue;
            c.append(GateOp::cp(-kPi / static_cast<double>(1 << k), i, j));
        }
    }
    if (opts.include_swaps) {
        // swap(a, b) as three CNOTs, CNOT(c, t) = H(t) CP(pi) H(t)
        auto cnot = [&c](int ctrl, int tgt) {
            c.append(GateOp::h(tgt));
            c.append(GateOp::cp(kPi, ctrl, tgt));
            c.append(GateOp::h(tgt));
        };
        for (int a = 0; a < n / 2; ++a) {
            const int b = n - 1 - a;
            cnot(a, b);
            cnot(b, a);
            cnot(a, b);
        }
    }
    return inverse ? c.inverse() : c;
}

Circuit step_packet_init(int n) {
    if (n < 2) throw std::invalid_argument("step_packet_init: n must be >= 2");
    Circuit c(n);
    c.append(GateOp::ry(kPi, n - 2));
    for (int j = 0; j <= n - 3; ++j) c.append(GateOp::ry(kPi / 2.0, j));
    return c;
}

Circuit linear_phase_layer(int n, double angle_per_unit) {
    if (n < 1) throw std::invalid_argument("linear_phase_layer: n must be >= 1");
    Circuit c(n);
    for (int j = 0; j < n; ++j)
        c.append(GateOp::p(static_cast<double>(std::size_t{1} << j) * angle_per_unit, j));
    return c;
}

Circuit double_well_op(int n, double v_min, double dt) {
    if (n < 2) throw std::invalid_argument("double_well_op: n must be >= 2");
    Circuit c(n);
    c.append(GateOp::p(-v_min * dt, n - 2));
    return c;
}

PotentialAngles harmonic_angles(const Grid& grid, double force_constant, double r_eq, double dt) {
    if (force_constant < 0.0)
        throw std::invalid_argument("harmonic_angles: force constant must be non-negative");
    PotentialAngles a;
    a.alpha = -force_constant * grid.delta_r * grid.delta_r * dt / 2.0;
    const double bracket = (2.0 * grid.r_min - 2.0 * r_eq + grid.delta_r) / grid.delta_r;
    a.beta = a.alpha * bracket;
    a.gamma = a.alpha * (bracket / 2.0) * (bracket / 2.0);
    return a;
}

namespace {

// P(2^j * linear) on mapped qubit of j, P(2^(2j) * quad) likewise, and
// CP(2 * 2^(j+k) * quad) on every mapped pair j < k: the binary expansion of
// exp(i(m^2*quad + m*linear)) over the register.
Circuit quadratic_phase_circuit(int n, double quad, double linear, bool bit_reversed) {
    Circuit c(n);
    auto q = [n, bit_reversed](int j) { return bit_reversed ? n - 1 - j : j; };
    for (int j = 0; j < n; ++j)
        c.append(GateOp::p(static_cast<double>(std::size_t{1} << j) * linear, q(j)));
    for (int j = 0; j < n; ++j)
        c.append(GateOp::p(static_cast<double>(std::size_t{1} << (2 * j)) * quad, q(j)));
    for (int k = 1; k < n; ++k)
        for (int j = 0; j < k; ++j)
            c.append(GateOp::cp(2.0 * static_cast<double>(std::size_t{1} << (j + k)) * quad,
                                q(j), q(k)));
    return c;
}

}  // namespace

Circuit harmonic_op(int n, const PotentialAngles& angles) {
    if (n < 1) throw std::invalid_argument("harmonic_op: n must be >= 1");
    return quadratic_phase_circuit(n, angles.alpha, angles.beta, /*bit_reversed=*/false);
}

KineticAngles kinetic_angles(const Grid& grid, double mu, double dt) {
    if (!(mu > 0.0)) throw std::invalid_argument("kinetic_angles: mu must be positive");
    const double w = 2.0 * kPi / grid.extent();
    KineticAngles a;
    a.theta = -w * w * dt / (2.0 * mu);
    const auto M = static_cast<double>(grid.num_points);
    a.phi = -a.theta * M;
    a.delta = a.theta * M * M / 4.0;
    return a;
}

Circuit kinetic_phase_op(int n, const KineticAngles& angles) {
    if (n < 1) throw std::invalid_argument("kinetic_phase_op: n must be >= 1");
    return quadratic_phase_circuit(n, angles.theta, angles.phi, /*bit_reversed=*/true);
}

namespace {

// One-time equivalence check of the composite against the Fourier-sandwich
// propagator, per register size.
void verify_kinetic_composite(const Circuit& composite, const Grid& grid, double mu, double dt) {
    static std::mutex mtx;
    static std::set<int> verified;
    {
        std::scoped_lock lock(mtx);
        if (verified.count(grid.n_qubits)) return;
    }
    const std::size_t M = grid.num_points;
    complex_t phase_ref{0.0, 0.0};
    double worst = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
        StateVector sv(grid.n_qubits);
        std::vector<complex_t> basis(M, complex_t{0.0, 0.0});
        basis[m] = 1.0;
        set_amplitudes(sv, basis);
        apply_circuit(sv, composite);
        oracle::OracleState os{grid, std::move(basis)};
        oracle::kinetic_apply(os, mu, dt);
        // one operator-level global phase, fixed by the first significant entry
        if (m == 0) {
            std::size_t pick = 0;
            for (std::size_t i = 0; i < M; ++i)
                if (std::abs(os.psi[i]) > std::abs(os.psi[pick])) pick = i;
            phase_ref = sv.amplitudes()[pick] / os.psi[pick];
            phase_ref /= std::abs(phase_ref);
        }
        for (std::size_t i = 0; i < M; ++i)
            worst = std::max(worst, std::abs(sv.amplitudes()[i] - phase_ref * os.psi[i]));
    }
    if (worst > 1e-12) {
        std::ostringstream msg;
        msg << "kinetic_step: composite deviates from the Fourier-sandwich propagator by "
            << worst;
        throw std::runtime_error(msg.str());
    }
    std::scoped_lock lock(mtx);
    verified.insert(grid.n_qubits);
}

}  // namespace

Circuit kinetic_step(const Grid& grid, double mu, double dt, const QftOptions& opts) {
    if (opts.include_swaps)
        throw std::invalid_argument("kinetic_step: dynamics circuits use the no-swap QFT");
    const int n = grid.n_qubits;
    Circuit c(n);
    c.append(qft(n, opts, /*inverse=*/false));
    c.append(GateOp::x(0));
    c.append(kinetic_phase_op(n, kinetic_angles(grid, mu, dt)));
    c.append(GateOp::x(0));
    c.append(qft(n, opts, /*inverse=*/true));
    c.note = "reorder: X(q0) conjugates the kinetic phase block";
    if (opts.approximation_degree == 0 && n <= 6) verify_kinetic_composite(c, grid, mu, dt);
    return c;
}

Circuit split_step(const Circuit& half_potential, const Grid& grid, double mu, double dt,
                   const QftOptions& opts) {
    if (half_potential.n_qubits != grid.n_qubits)
        throw std::invalid_argument("split_step: qubit count mismatch");
    Circuit c(grid.n_qubits);
    c.append(half_potential);
    c.append(kinetic_step(grid, mu, dt, opts));
    c.append(half_potential);
    return c;
}

Circuit build_propagation(const Circuit& init, const std::function<Circuit(double)>& step_builder,
                          double dt, int j, PropagationMode mode) {
    if (j < 1) throw std::invalid_argument("build_propagation: j must be >= 1");
    Circuit c = init;
    if (mode == PropagationMode::MultiStep) {
        const Circuit step = step_builder(dt);
        for (int s = 0; s < j; ++s) c.append(step);
    } else {
        c.append(step_builder(dt * static_cast<double>(j)));
    }
    return c;
}

Circuit build_split_propagation(const Circuit& init,
                                const std::function<Circuit(double)>& potential_builder,
                                const Grid& grid, double mu, double dt, int j,
                                PropagationMode mode, const QftOptions& opts,
                                bool merge_half_steps) {
    if (j < 1) throw std::invalid_argument("build_split_propagation: j must be >= 1");
    const double step_dt = (mode == PropagationMode::SingleStep) ? dt * j : dt;
    const int reps = (mode == PropagationMode::SingleStep) ? 1 : j;
    Circuit c = init;
    if (!merge_half_steps || reps == 1) {
        const Circuit step = split_step(potential_builder(step_dt / 2.0), grid, mu, step_dt, opts);
        for (int s = 0; s < reps; ++s) c.append(step);
        return c;
    }
    // half, [kinetic, full]*(reps-1), kinetic, half
    const Circuit half = potential_builder(step_dt / 2.0);
    const Circuit full = potential_builder(step_dt);
    const Circuit kin = kinetic_step(grid, mu, step_dt, opts);
    c.append(half);
    for (int s = 0; s < reps - 1; ++s) {
        c.append(kin);
        c.append(full);
    }
    c.append(kin);
    c.append(half);
    return c;
}

// ---------------------------------------------------------------------------
// Gaussian-like shallow initializer

namespace {

// Amplitude of basis state m under the chain ansatz: a Markov product over
// bits from the top qubit down, each level rotated by base[j] plus ctrl[j]
// when the qubit above is 1.
double chain_amplitude(int n, std::size_t m, double top, std::span<const double> base,
                       std::span<const double> ctrl) {
    const int bit_top = (m >> (n - 1)) & 1u;
    double v = bit_top ? std::sin(top / 2.0) : std::cos(top / 2.0);
    for (int idx = 0, j = n - 2; j >= 0; --j, ++idx) {
        const int above = (m >> (j + 1)) & 1u;
        const int b = (m >> j) & 1u;
        const double ang = base[idx] + (above ? ctrl[idx] : 0.0);
        v *= b ? std::sin(ang / 2.0) : std::cos(ang / 2.0);
    }
    return v;
}

double chain_fidelity(int n, std::span<const double> target, const std::vector<double>& angles) {
    const std::size_t M = std::size_t{1} << n;
    const std::span<const double> base(angles.data() + 1, static_cast<std::size_t>(n - 1));
    const std::span<const double> ctrl(angles.data() + n, static_cast<std::size_t>(n - 1));
    double dot = 0.0;
    for (std::size_t m = 0; m < M; ++m)
        dot += target[m] * chain_amplitude(n, m, angles[0], base, ctrl);
    return dot * dot;
}

void validate_target(int n, std::span<const double> target) {
    const std::size_t M = std::size_t{1} << n;
    if (target.size() != M)
        throw std::invalid_argument("gaussian_packet_init: target length must be 2^n");
    double norm2 = 0.0;
    for (double t : target) {
        if (t < 0.0) throw std::invalid_argument("gaussian_packet_init: target must be >= 0");
        norm2 += t * t;
    }
    if (std::abs(norm2 - 1.0) > 1e-9)
        throw std::invalid_argument("gaussian_packet_init: target must have unit 2-norm");
    // unimodal: nondecreasing up to the peak, nonincreasing after
    std::size_t peak = 0;
    for (std::size_t m = 1; m < M; ++m)
        if (target[m] > target[peak]) peak = m;
    for (std::size_t m = 1; m <= peak; ++m)
        if (target[m] < target[m - 1] - 1e-12)
            throw std::invalid_argument("gaussian_packet_init: target is not unimodal");
    for (std::size_t m = peak + 1; m < M; ++m)
        if (target[m] > target[m - 1] + 1e-12)
            throw std::invalid_argument("gaussian_packet_init: target is not unimodal");
}

std::vector<double> marginal_init(int n, std::span<const double> target) {
    const std::size_t M = std::size_t{1} << n;
    std::vector<double> prob(M);
    for (std::size_t m = 0; m < M; ++m) prob[m] = target[m] * target[m];
    std::vector<double> angles;
    angles.reserve(static_cast<std::size_t>(2 * n - 1));
    double p1 = 0.0;
    for (std::size_t m = M / 2; m < M; ++m) p1 += prob[m];
    angles.push_back(2.0 * std::atan2(std::sqrt(p1), std::sqrt(std::max(1.0 - p1, 0.0))));
    std::vector<double> base, ctrl;
    for (int j = n - 2; j >= 0; --j) {
        double p00 = 0.0, p01 = 0.0, p10 = 0.0, p11 = 0.0;
        for (std::size_t m = 0; m < M; ++m) {
            const int b = (m >> j) & 1u;
            const int a = (m >> (j + 1)) & 1u;
            (a ? (b ? p11 : p01) : (b ? p10 : p00)) += prob[m];
        }
        const double t0 = 2.0 * std::atan2(std::sqrt(p10), std::sqrt(p00));
        const double t1 = 2.0 * std::atan2(std::sqrt(p11), std::sqrt(p01));
        base.push_back(t0);
        ctrl.push_back(t1 - t0);
    }
    angles.insert(angles.end(), base.begin(), base.end());
    angles.insert(angles.end(), ctrl.begin(), ctrl.end());
    return angles;
}

constexpr int kFitMaxSweeps = 500;
constexpr double kFitTol = 1e-10;

std::vector<double> fit_angles(int n, std::span<const double> target) {
    std::vector<double> angles = marginal_init(n, target);
    auto objective = [&](const std::vector<double>& a) { return 1.0 - chain_fidelity(n, target, a); };
    double cur = objective(angles);
    for (int sweep = 0; sweep < kFitMaxSweeps; ++sweep) {
        const double prev = cur;
        for (std::size_t i = 0; i < angles.size(); ++i) {
            double lo = angles[i] - 0.5;
            double hi = angles[i] + 0.5;
            std::vector<double> trial = angles;
            for (int it = 0; it < 40; ++it) {
                const double m1 = lo + (hi - lo) * 0.382;
                const double m2 = lo + (hi - lo) * 0.618;
                trial[i] = m1;
                const double f1 = objective(trial);
                trial[i] = m2;
                const double f2 = objective(trial);
                if (f1 < f2)
                    hi = m2;
                else
                    lo = m1;
            }
            angles[i] = (lo + hi) / 2.0;
            cur = objective(angles);
        }
        if (prev - cur < kFitTol) break;
    }
    return angles;
}

void append_cry(Circuit& c, double angle, int control, int target) {
    c.append(GateOp::ry(angle / 2.0, target));
    c.append(GateOp::h(target));
    c.append(GateOp::cp(kPi, control, target));
    c.append(GateOp::h(target));
    c.append(GateOp::ry(-angle / 2.0, target));
    c.append(GateOp::h(target));
    c.append(GateOp::cp(kPi, control, target));
    c.append(GateOp::h(target));
}

}  // namespace

GaussianInitFit fit_gaussian_packet_init(int n, std::span<const double> target) {
    if (n < 1) throw std::invalid_argument("gaussian_packet_init: n must be >= 1");
    validate_target(n, target);
    if (n == 1) {
        Circuit c(1);
        const double theta = 2.0 * std::atan2(target[1], target[0]);
        c.append(GateOp::ry(theta, 0));
        c.two_qubit_constructions = 0;
        GaussianInitFit fit{std::move(c), 0.0};
        const double dot = target[0] * std::cos(theta / 2.0) + target[1] * std::sin(theta / 2.0);
        fit.fidelity = dot * dot;
        return fit;
    }
    const std::vector<double> angles = fit_angles(n, target);
    Circuit c(n);
    c.append(GateOp::ry(angles[0], n - 1));
    for (int idx = 0, j = n - 2; j >= 0; --j, ++idx) {
        c.append(GateOp::ry(angles[static_cast<std::size_t>(1 + idx)], j));
        append_cry(c, angles[static_cast<std::size_t>(n + idx)], j + 1, j);
    }
    // block-level accounting: each controlled-Ry is one two-qubit gate
    c.two_qubit_constructions = static_cast<std::size_t>(n - 1);
    GaussianInitFit fit{std::move(c), chain_fidelity(n, target, angles)};
    return fit;
}

Circuit gaussian_packet_init(int n, std::span<const double> target) {
    GaussianInitFit fit = fit_gaussian_packet_init(n, target);
    if (fit.fidelity < 0.99) {
        std::ostringstream msg;
        msg << "gaussian_packet_init: achieved fidelity " << fit.fidelity << " is below 0.99";
        throw std::runtime_error(msg.str());
    }
    std::ostringstream note;
    note << "gaussian init fidelity " << fit.fidelity;
    fit.circuit.note = note.str();
    return std::move(fit.circuit);
}

}  // namespace qmd
