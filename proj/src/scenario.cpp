#include "qmd/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qmd/oracle.hpp"

namespace qmd {

namespace {

constexpr double kOmegaCm1 = 3978.6;  // OH-stretch scale harmonic frequency

ScenarioConfig base_preset(const std::string& name, int n_qubits, double dt, int n_steps) {
    ScenarioConfig c;
    c.name = name;
    c.r_min = 0.0;
    c.r_max = 5.0;
    c.n_qubits = n_qubits;
    c.mu_amu = 0.9412;
    c.dt = dt;
    c.n_steps = n_steps;
    return c;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"FreeParticleA", "TunnelingA", "HarmonicA",
            "FreeParticleB", "TunnelingB", "HarmonicB"};
}

bool is_preset(const std::string& name) {
    const auto names = preset_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

ScenarioConfig preset_scenario(const std::string& name) {
    if (name == "FreeParticleA") {
        ScenarioConfig c = base_preset(name, 8, 1.5, 100);
        c.potential = Flat{};
        c.packet = GaussianPacket{1.0, 0.25, 30.0};
        c.init_mode = InitMode::ExactInjection;
        return c;
    }
    if (name == "TunnelingA") {
        ScenarioConfig c = base_preset(name, 7, 3.0, 100);
        c.potential = DoubleWell{-0.017};
        c.packet = StepSecondQuarter{};
        c.init_mode = InitMode::ShallowCircuit;
        return c;
    }
    if (name == "HarmonicA") {
        ScenarioConfig c = base_preset(name, 8, 11.0, 100);
        c.potential = Harmonic{2.5, units::cm1_to_hartree(kOmegaCm1), c.mu_au()};
        c.packet = GaussianPacket{1.5, 0.36, 0.0};
        c.init_mode = InitMode::ExactInjection;
        return c;
    }
    if (name == "FreeParticleB") {
        ScenarioConfig c = base_preset(name, 5, 31.25, 8);
        c.potential = Flat{};
        c.packet = GaussianPacket{2.5, 0.24, 0.0};
        c.init_mode = InitMode::ShallowCircuit;
        return c;
    }
    if (name == "TunnelingB") {
        ScenarioConfig c = base_preset(name, 5, 50.0, 8);
        c.potential = DoubleWell{-0.005};
        c.packet = StepSecondQuarter{};
        c.init_mode = InitMode::ShallowCircuit;
        return c;
    }
    if (name == "HarmonicB") {
        ScenarioConfig c = base_preset(name, 5, 43.75, 8);
        c.potential = Harmonic{3.0, units::cm1_to_hartree(kOmegaCm1), c.mu_au()};
        c.packet = GaussianPacket{2.5, 0.24, 0.0};
        c.init_mode = InitMode::ShallowCircuit;
        return c;
    }
    throw ScenarioError("preset", "unknown preset '" + name + "'");
}

void ScenarioConfig::validate() const {
    if (!(r_max > r_min)) throw ScenarioError("r_max", "must exceed r_min");
    if (n_qubits < 1 || n_qubits > 24) throw ScenarioError("n_qubits", "must be in [1, 24]");
    if (!(mu_amu > 0.0)) throw ScenarioError("mu_amu", "must be positive");
    if (!(dt > 0.0)) throw ScenarioError("dt", "must be positive");
    if (n_steps < 0) throw ScenarioError("n_steps", "must be >= 0");
    if (qft.approximation_degree < 0 || qft.approximation_degree > n_qubits - 1)
        throw ScenarioError("qft_approx", "must be in [0, n_qubits-1]");
    if (readout == ReadoutMode::Shots && shots < 1)
        throw ScenarioError("shots", "must be >= 1 for shot read-out");
    if (noise && (noise->p_err < 0.0 || noise->p_err > 1.0))
        throw ScenarioError("noise_p", "must be in [0, 1]");
    if (const auto* dw = std::get_if<DoubleWell>(&potential)) {
        if (dw->v_min > 0.0) throw ScenarioError("v_min", "must be <= 0");
        if (n_qubits < 2) throw ScenarioError("n_qubits", "double well needs n_qubits >= 2");
    }
    if (const auto* h = std::get_if<Harmonic>(&potential)) {
        if (!(h->omega > 0.0)) throw ScenarioError("omega_cm1", "must be positive");
    }
    if (const auto* g = std::get_if<GaussianPacket>(&packet)) {
        if (!(g->a > 0.0)) throw ScenarioError("a", "must be positive");
    } else if (n_qubits < 2) {
        throw ScenarioError("n_qubits", "step packet needs n_qubits >= 2");
    }
}

namespace {

using nlohmann::json;

const std::vector<std::string> kKnownKeys = {
    "name",   "r_min",     "r_max", "n_qubits", "mu_amu",    "potential", "v_min",
    "r_eq",   "omega_cm1", "packet", "r_s",     "a",         "p_s",       "dt",
    "n_steps", "init",     "qft_approx", "mode", "shots",    "shot_seed", "noise_p",
    "noise_seed"};

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ScenarioError(key, "has the wrong type");
    }
}

template <typename T>
T require(const json& j, const std::string& key) {
    if (!j.contains(key)) throw ScenarioError(key, "is required");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ScenarioError(key, "has the wrong type");
    }
}

}  // namespace

ScenarioConfig parse_scenario_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ScenarioError("document", std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ScenarioError("document", "must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
            throw ScenarioError(key, "is not a recognized field");
    }
    ScenarioConfig c;
    c.name = get_or<std::string>(j, "name", "custom");
    c.r_min = get_or<double>(j, "r_min", 0.0);
    c.r_max = get_or<double>(j, "r_max", 5.0);
    c.n_qubits = require<int>(j, "n_qubits");
    c.mu_amu = get_or<double>(j, "mu_amu", 0.9412);
    const auto pot = get_or<std::string>(j, "potential", "flat");
    if (pot == "flat") {
        c.potential = Flat{};
    } else if (pot == "double_well") {
        c.potential = DoubleWell{require<double>(j, "v_min")};
    } else if (pot == "harmonic") {
        c.potential = Harmonic{require<double>(j, "r_eq"),
                               units::cm1_to_hartree(require<double>(j, "omega_cm1")),
                               c.mu_au()};
    } else {
        throw ScenarioError("potential", "must be flat, double_well or harmonic");
    }
    const auto pk = require<std::string>(j, "packet");
    if (pk == "gaussian") {
        c.packet = GaussianPacket{require<double>(j, "r_s"), require<double>(j, "a"),
                                  get_or<double>(j, "p_s", 0.0)};
    } else if (pk == "step") {
        c.packet = StepSecondQuarter{};
    } else {
        throw ScenarioError("packet", "must be gaussian or step");
    }
    c.dt = require<double>(j, "dt");
    c.n_steps = require<int>(j, "n_steps");
    const auto init = get_or<std::string>(j, "init", "exact");
    if (init == "exact") {
        c.init_mode = InitMode::ExactInjection;
    } else if (init == "circuit") {
        c.init_mode = InitMode::ShallowCircuit;
    } else {
        throw ScenarioError("init", "must be exact or circuit");
    }
    c.qft.approximation_degree = get_or<int>(j, "qft_approx", 0);
    const auto mode = get_or<std::string>(j, "mode", "multi");
    if (mode == "multi") {
        c.propagation = PropagationMode::MultiStep;
    } else if (mode == "single") {
        c.propagation = PropagationMode::SingleStep;
    } else {
        throw ScenarioError("mode", "must be multi or single");
    }
    c.shots = get_or<std::uint64_t>(j, "shots", 0);
    c.shot_seed = get_or<std::uint64_t>(j, "shot_seed", 1);
    c.readout = c.shots > 0 ? ReadoutMode::Shots : ReadoutMode::ExactProbabilities;
    const double noise_p = get_or<double>(j, "noise_p", 0.0);
    if (noise_p > 0.0) c.noise = NoiseSpec{noise_p, get_or<std::uint64_t>(j, "noise_seed", 1)};
    c.validate();
    return c;
}

ScenarioConfig load_scenario(const std::string& source) {
    if (is_preset(source)) return preset_scenario(source);
    std::ifstream in(source);
    if (!in) throw ScenarioError("source", "'" + source + "' is neither a preset nor a readable file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_json(buf.str());
}

// ---------------------------------------------------------------------------
// Runs

namespace {

struct ScenarioParts {
    Grid grid;
    std::vector<double> potential;
    double mu = 0.0;
    std::vector<complex_t> exact;
};

ScenarioParts make_parts(const ScenarioConfig& config) {
    config.validate();
    ScenarioParts p{make_grid(config.r_min, config.r_max, config.n_qubits), {}, 0.0, {}};
    p.potential = sample_potential(config.potential, p.grid);
    p.mu = config.mu_au();
    p.exact = packet_amplitudes(config.packet, p.grid);
    return p;
}

/// Classical states at every record index, honoring the propagation mode.
std::vector<std::vector<complex_t>> classical_states(const ScenarioConfig& config,
                                                     const ScenarioParts& parts) {
    std::vector<std::vector<complex_t>> states;
    states.reserve(static_cast<std::size_t>(config.n_steps) + 1);
    states.push_back(parts.exact);
    if (config.n_steps == 0) return states;
    const oracle::OracleState initial = oracle::make_oracle_state(parts.grid, parts.exact);
    if (config.propagation == PropagationMode::MultiStep) {
        auto traj = oracle::split_operator_propagate(initial, parts.potential, parts.mu,
                                                     config.dt, config.n_steps);
        for (int s = 1; s <= config.n_steps; ++s)
            states.push_back(std::move(traj[static_cast<std::size_t>(s)].psi));
    } else {
        for (int s = 1; s <= config.n_steps; ++s) {
            auto traj = oracle::split_operator_propagate(initial, parts.potential, parts.mu,
                                                         config.dt * s, 1);
            states.push_back(std::move(traj[1].psi));
        }
    }
    return states;
}

Circuit initializer_circuit(const ScenarioConfig& config, const ScenarioParts& parts) {
    const int n = config.n_qubits;
    if (std::holds_alternative<StepSecondQuarter>(config.packet)) return step_packet_init(n);
    const auto& g = std::get<GaussianPacket>(config.packet);
    std::vector<double> target(parts.exact.size());
    for (std::size_t m = 0; m < target.size(); ++m) target[m] = std::abs(parts.exact[m]);
    Circuit init = gaussian_packet_init(n, target);
    if (g.p_s != 0.0) init.append(linear_phase_layer(n, g.p_s * parts.grid.delta_r));
    return init;
}

std::function<Circuit(double)> potential_builder(const ScenarioConfig& config,
                                                 const ScenarioParts& parts) {
    const int n = config.n_qubits;
    if (const auto* dw = std::get_if<DoubleWell>(&config.potential)) {
        const double v_min = dw->v_min;
        return [n, v_min](double dt) { return double_well_op(n, v_min, dt); };
    }
    if (const auto* h = std::get_if<Harmonic>(&config.potential)) {
        const Grid grid = parts.grid;
        const double k = h->force_constant();
        const double r_eq = h->r_eq;
        return [n, grid, k, r_eq](double dt) {
            return harmonic_op(n, harmonic_angles(grid, k, r_eq, dt));
        };
    }
    return [n](double) { return Circuit(n); };
}

double overlap_magnitude(std::span<const complex_t> a, std::span<const complex_t> b) {
    complex_t s{0.0, 0.0};
    for (std::size_t m = 0; m < a.size(); ++m) s += std::conj(a[m]) * b[m];
    return std::abs(s);
}

}  // namespace

RunResult run_quantum_path(const ScenarioConfig& config) {
    const ScenarioParts parts = make_parts(config);
    const auto oracle_states = classical_states(config, parts);
    const bool inject = config.init_mode == InitMode::ExactInjection;
    Circuit init(config.n_qubits);
    if (!inject) init = initializer_circuit(config, parts);
    const auto pot = potential_builder(config, parts);

    RunResult result;
    result.config = config;
    for (int j = 0; j <= config.n_steps; ++j) {
        Circuit circuit = init;
        if (j > 0)
            circuit.append(build_split_propagation(Circuit(config.n_qubits), pot, parts.grid,
                                                   parts.mu, config.dt, j, config.propagation,
                                                   config.qft));
        StateVector sv(config.n_qubits);
        if (inject) set_amplitudes(sv, parts.exact);
        if (config.noise) {
            // independent trajectory per read-out length, like the hardware protocol
            const NoiseSpec noise_j{config.noise->p_err,
                                    config.noise->seed + static_cast<std::uint64_t>(j)};
            apply_circuit(sv, circuit, &noise_j);
        } else {
            apply_circuit(sv, circuit);
        }

        std::vector<double> probs;
        Observables obs;
        if (config.readout == ReadoutMode::Shots) {
            const auto counts =
                sample_counts(sv, config.shots, config.shot_seed + static_cast<std::uint64_t>(j));
            probs.assign(sv.size(), 0.0);
            for (const auto& [m, c] : counts)
                probs[static_cast<std::size_t>(m)] =
                    static_cast<double>(c) / static_cast<double>(config.shots);
            obs = observables_from_probabilities(probs, parts.grid);
        } else {
            probs = sv.probabilities();
            obs = observables(sv.amplitudes(), parts.grid, &parts.potential, parts.mu);
        }
        const auto& ref = oracle_states[static_cast<std::size_t>(j)];
        StepRecord rec{j, config.dt * j, obs, overlap_magnitude(sv.amplitudes(), ref)};
        result.records.push_back(rec);
        result.probs.push_back(std::move(probs));
        std::vector<double> refp(ref.size());
        for (std::size_t m = 0; m < ref.size(); ++m) refp[m] = std::norm(ref[m]);
        result.oracle_probs.push_back(std::move(refp));

        if (j == config.n_steps) {
            const CircuitStats st = circuit.stats();
            result.meta.gates = st.total();
            result.meta.two_qubit = circuit.two_qubit_constructions;
            result.meta.depth = st.depth;
        }
    }
    return result;
}

RunResult run_classical_path(const ScenarioConfig& config) {
    const ScenarioParts parts = make_parts(config);
    const auto states = classical_states(config, parts);
    RunResult result;
    result.config = config;
    for (int j = 0; j <= config.n_steps; ++j) {
        const auto& psi = states[static_cast<std::size_t>(j)];
        const Observables obs = observables(psi, parts.grid, &parts.potential, parts.mu);
        result.records.push_back(StepRecord{j, config.dt * j, obs, 1.0});
        std::vector<double> probs(psi.size());
        for (std::size_t m = 0; m < psi.size(); ++m) probs[m] = std::norm(psi[m]);
        result.oracle_probs.push_back(probs);
        result.probs.push_back(std::move(probs));
    }
    return result;
}

double ComparisonReport::max_overall() const {
    return std::max({max_d_mean_r, max_d_sigma, max_d_p_tunnel});
}

ComparisonReport compare_runs(const RunResult& a, const RunResult& b) {
    if (a.records.size() != b.records.size())
        throw std::invalid_argument("compare_runs: step counts differ");
    if (a.config.n_qubits != b.config.n_qubits || a.config.r_min != b.config.r_min ||
        a.config.r_max != b.config.r_max)
        throw std::invalid_argument("compare_runs: grids differ");
    ComparisonReport rep;
    rep.meta_a = a.meta;
    rep.meta_b = b.meta;
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        const auto& oa = a.records[i].obs;
        const auto& ob = b.records[i].obs;
        rep.d_mean_r.push_back(std::abs(oa.mean_r - ob.mean_r));
        rep.d_sigma.push_back(std::abs(oa.sigma - ob.sigma));
        if (oa.p_tunnel && ob.p_tunnel)
            rep.d_p_tunnel.push_back(std::abs(*oa.p_tunnel - *ob.p_tunnel));
    }
    auto maxof = [](const std::vector<double>& v) {
        return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
    };
    rep.max_d_mean_r = maxof(rep.d_mean_r);
    rep.max_d_sigma = maxof(rep.d_sigma);
    rep.max_d_p_tunnel = maxof(rep.d_p_tunnel);
    rep.final_d_mean_r = rep.d_mean_r.empty() ? 0.0 : rep.d_mean_r.back();
    rep.final_d_sigma = rep.d_sigma.empty() ? 0.0 : rep.d_sigma.back();
    rep.final_d_p_tunnel = rep.d_p_tunnel.empty() ? 0.0 : rep.d_p_tunnel.back();
    const auto& pa = a.probs.back();
    const auto& pb = b.probs.back();
    double tv = 0.0;
    for (std::size_t m = 0; m < pa.size(); ++m) tv += std::abs(pa[m] - pb[m]);
    rep.tv_final = tv / 2.0;
    return rep;
}

bool is_ideal_path_config(const ScenarioConfig& config) {
    return config.init_mode == InitMode::ExactInjection && config.qft.approximation_degree == 0 &&
           config.readout == ReadoutMode::ExactProbabilities && !config.noise;
}

// ---------------------------------------------------------------------------
// File emission

std::string format_g12(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

namespace {

std::string describe_options(const ScenarioConfig& c) {
    std::ostringstream s;
    s << "mode: " << (c.propagation == PropagationMode::MultiStep ? "multi" : "single")
      << "  qft_approx: " << c.qft.approximation_degree << "  init: "
      << (c.init_mode == InitMode::ExactInjection ? "exact" : "circuit") << "  readout: ";
    if (c.readout == ReadoutMode::Shots)
        s << "shots=" << c.shots << " seed=" << c.shot_seed;
    else
        s << "exact";
    s << "  noise: ";
    if (c.noise)
        s << "p=" << format_g12(c.noise->p_err) << " seed=" << c.noise->seed;
    else
        s << "off";
    return s.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_outputs: cannot open " + path.string());
    out << content;
    if (!out) throw std::runtime_error("emit_outputs: write failed for " + path.string());
}

std::string series_csv(const RunResult& run) {
    std::ostringstream out;
    out << "step,t,mean_r,sigma,p_tunnel,norm,overlap_oracle\n";
    for (const auto& rec : run.records) {
        out << rec.step << ',' << format_g12(rec.t) << ',' << format_g12(rec.obs.mean_r) << ','
            << format_g12(rec.obs.sigma) << ','
            << (rec.obs.p_tunnel ? format_g12(*rec.obs.p_tunnel) : std::string("nan")) << ','
            << format_g12(rec.obs.norm) << ',' << format_g12(rec.overlap_oracle) << '\n';
    }
    return out.str();
}

void write_frames(const RunResult& quantum, const std::vector<std::vector<double>>& classical,
                  const Grid& grid, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (std::size_t j = 0; j < quantum.probs.size(); ++j) {
        std::ostringstream name;
        name << "step_";
        name.fill('0');
        name.width(4);
        name << j;
        name << ".csv";
        std::ostringstream out;
        out << "m,r,prob_quantum,prob_classical\n";
        for (std::size_t m = 0; m < quantum.probs[j].size(); ++m) {
            out << m << ',' << format_g12(grid.point(m)) << ','
                << format_g12(quantum.probs[j][m]) << ',' << format_g12(classical[j][m]) << '\n';
        }
        write_file(dir / name.str(), out.str());
    }
}

}  // namespace

void emit_outputs(const RunResult& run, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const Grid grid = make_grid(run.config.r_min, run.config.r_max, run.config.n_qubits);
    write_file(out_dir / "series.csv", series_csv(run));
    write_frames(run, run.oracle_probs, grid, out_dir / "frames");
    std::ostringstream rep;
    rep << "run: " << run.config.name << '\n';
    rep << describe_options(run.config) << '\n';
    rep << "steps: " << run.config.n_steps << "  dt: " << format_g12(run.config.dt)
        << "  t_fin: " << format_g12(run.config.t_fin()) << '\n';
    rep << "gates: " << run.meta.gates << "  two-qubit: " << run.meta.two_qubit
        << "  depth: " << run.meta.depth << '\n';
    const auto& last = run.records.back();
    rep << "final: mean_r=" << format_g12(last.obs.mean_r)
        << " sigma=" << format_g12(last.obs.sigma);
    if (last.obs.p_tunnel) rep << " p_tunnel=" << format_g12(*last.obs.p_tunnel);
    rep << " norm=" << format_g12(last.obs.norm) << '\n';
    double min_overlap = 1.0;
    for (const auto& rec : run.records) min_overlap = std::min(min_overlap, rec.overlap_oracle);
    rep << "min overlap with oracle: " << format_g12(min_overlap) << '\n';
    write_file(out_dir / "report.txt", rep.str());
}

void emit_outputs(const RunResult& quantum, const RunResult& classical,
                  const ComparisonReport& report, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const Grid grid =
        make_grid(quantum.config.r_min, quantum.config.r_max, quantum.config.n_qubits);
    write_file(out_dir / "series.csv", series_csv(quantum));
    write_frames(quantum, classical.probs, grid, out_dir / "frames");
    std::ostringstream rep;
    rep << "compare: " << quantum.config.name << '\n';
    rep << describe_options(quantum.config) << '\n';
    rep << "steps: " << quantum.config.n_steps << "  dt: " << format_g12(quantum.config.dt)
        << "  t_fin: " << format_g12(quantum.config.t_fin()) << '\n';
    rep << "quantum path gates: " << report.meta_a.gates
        << "  two-qubit: " << report.meta_a.two_qubit << "  depth: " << report.meta_a.depth
        << '\n';
    rep << "max |d mean_r| = " << format_g12(report.max_d_mean_r)
        << "  final = " << format_g12(report.final_d_mean_r) << '\n';
    rep << "max |d sigma|  = " << format_g12(report.max_d_sigma)
        << "  final = " << format_g12(report.final_d_sigma) << '\n';
    rep << "max |d p|      = " << format_g12(report.max_d_p_tunnel)
        << "  final = " << format_g12(report.final_d_p_tunnel) << '\n';
    rep << "final total-variation distance = " << format_g12(report.tv_final) << '\n';
    if (is_ideal_path_config(quantum.config)) {
        rep << "path equivalence (tol " << format_g12(kPathEquivalenceTol)
            << "): " << (report.max_overall() < kPathEquivalenceTol ? "PASS" : "FAIL") << '\n';
    } else {
        rep << "path equivalence: n/a (non-ideal options)\n";
    }
    write_file(out_dir / "report.txt", rep.str());
}

}  // namespace qmd
