#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qmd/qasm.hpp"
#include "qmd/scenario.hpp"

namespace {

struct CommonFlags {
    std::optional<std::string> mode;
    std::optional<int> qft_approx;
    std::optional<std::uint64_t> shots;
    std::optional<std::uint64_t> seed;
    std::optional<double> noise_p;
    std::optional<std::uint64_t> noise_seed;
    std::optional<std::string> init;
    std::string out_dir = "out";
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--mode", f.mode, "Propagation reconstruction: multi or single");
    cmd->add_option("--qft-approx", f.qft_approx, "QFT approximation degree (0 = exact)");
    cmd->add_option("--shots", f.shots, "Sampled read-out with this many shots");
    cmd->add_option("--seed", f.seed, "Seed for shots (and noise unless --noise-seed is given)");
    cmd->add_option("--noise", f.noise_p, "Per-gate Pauli noise probability");
    cmd->add_option("--noise-seed", f.noise_seed, "Separate seed for the noise stream");
    cmd->add_option("--init", f.init, "Initializer: exact or circuit");
    cmd->add_option("--out", f.out_dir, "Output directory");
}

qmd::ScenarioConfig apply_flags(qmd::ScenarioConfig config, const CommonFlags& f) {
    if (f.mode) {
        if (*f.mode == "multi")
            config.propagation = qmd::PropagationMode::MultiStep;
        else if (*f.mode == "single")
            config.propagation = qmd::PropagationMode::SingleStep;
        else
            throw qmd::ScenarioError("mode", "must be multi or single");
    }
    if (f.qft_approx) config.qft.approximation_degree = *f.qft_approx;
    if (f.shots) {
        config.shots = *f.shots;
        config.readout =
            *f.shots > 0 ? qmd::ReadoutMode::Shots : qmd::ReadoutMode::ExactProbabilities;
    }
    if (f.seed) config.shot_seed = *f.seed;
    if (f.noise_p && *f.noise_p > 0.0) {
        qmd::NoiseSpec noise;
        noise.p_err = *f.noise_p;
        noise.seed = f.noise_seed ? *f.noise_seed : (f.seed ? *f.seed : 1);
        config.noise = noise;
    }
    if (f.init) {
        if (*f.init == "exact")
            config.init_mode = qmd::InitMode::ExactInjection;
        else if (*f.init == "circuit")
            config.init_mode = qmd::InitMode::ShallowCircuit;
        else
            throw qmd::ScenarioError("init", "must be exact or circuit");
    }
    config.validate();
    return config;
}

void print_preset(const qmd::ScenarioConfig& c) {
    std::cout << c.name << ": n_qubits=" << c.n_qubits << " r=[" << c.r_min << "," << c.r_max
              << "] dt=" << c.dt << " n_steps=" << c.n_steps << " t_fin=" << c.t_fin();
    if (const auto* dw = std::get_if<qmd::DoubleWell>(&c.potential))
        std::cout << " double_well(v_min=" << dw->v_min << ")";
    else if (const auto* h = std::get_if<qmd::Harmonic>(&c.potential))
        std::cout << " harmonic(r_eq=" << h->r_eq << ", omega=" << h->omega << " au)";
    else
        std::cout << " flat";
    if (const auto* g = std::get_if<qmd::GaussianPacket>(&c.packet))
        std::cout << " gaussian(r_s=" << g->r_s << ", a=" << g->a << ", p_s=" << g->p_s << ")";
    else
        std::cout << " step";
    std::cout << " init="
              << (c.init_mode == qmd::InitMode::ExactInjection ? "exact" : "circuit") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grid-encoded wave-packet dynamics on an emulated gate register, "
                 "with a split-operator reference"};
    app.require_subcommand(1);

    CommonFlags run_flags, cmp_flags;
    std::string run_source, cmp_source, qasm_source;
    int qasm_step = 1;
    std::string qasm_out;

    CLI::App* run = app.add_subcommand("run", "Run the quantum path for a preset or config file");
    run->add_option("scenario", run_source, "Preset name or config file")->required();
    add_common(run, run_flags);

    CLI::App* cmp =
        app.add_subcommand("compare", "Run quantum and classical paths and report deviations");
    cmp->add_option("scenario", cmp_source, "Preset name or config file")->required();
    add_common(cmp, cmp_flags);

    CLI::App* exp = app.add_subcommand("export-qasm", "Export the propagation circuit as OpenQASM");
    exp->add_option("scenario", qasm_source, "Preset name or config file")->required();
    exp->add_option("--step", qasm_step, "Number of time steps in the exported circuit")
        ->required();
    exp->add_option("--out", qasm_out, "Output file (stdout if omitted)");
    CommonFlags exp_flags;
    exp->add_option("--mode", exp_flags.mode, "Propagation reconstruction: multi or single");
    exp->add_option("--qft-approx", exp_flags.qft_approx, "QFT approximation degree");
    exp->add_option("--init", exp_flags.init, "Initializer: exact or circuit");

    CLI::App* pre = app.add_subcommand("presets", "List the built-in presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (pre->parsed()) {
            for (const auto& name : qmd::preset_names()) print_preset(qmd::preset_scenario(name));
            return 0;
        }
        if (run->parsed()) {
            const auto config = apply_flags(qmd::load_scenario(run_source), run_flags);
            const auto result = qmd::run_quantum_path(config);
            qmd::emit_outputs(result, run_flags.out_dir);
            const auto& last = result.records.back();
            std::cout << config.name << ": " << result.records.size() << " records -> "
                      << run_flags.out_dir << "\nfinal mean_r=" << qmd::format_g12(last.obs.mean_r)
                      << " sigma=" << qmd::format_g12(last.obs.sigma);
            if (last.obs.p_tunnel)
                std::cout << " p_tunnel=" << qmd::format_g12(*last.obs.p_tunnel);
            std::cout << "\n";
            return 0;
        }
        if (cmp->parsed()) {
            const auto config = apply_flags(qmd::load_scenario(cmp_source), cmp_flags);
            const auto quantum = qmd::run_quantum_path(config);
            const auto classical = qmd::run_classical_path(config);
            const auto report = qmd::compare_runs(quantum, classical);
            qmd::emit_outputs(quantum, classical, report, cmp_flags.out_dir);
            std::cout << config.name << ": max|d mean_r|=" << qmd::format_g12(report.max_d_mean_r)
                      << " max|d sigma|=" << qmd::format_g12(report.max_d_sigma)
                      << " max|d p|=" << qmd::format_g12(report.max_d_p_tunnel) << " -> "
                      << cmp_flags.out_dir << "\n";
            if (qmd::is_ideal_path_config(config) &&
                report.max_overall() >= qmd::kPathEquivalenceTol) {
                std::cerr << "path equivalence threshold exceeded: "
                          << qmd::format_g12(report.max_overall()) << "\n";
                return 2;
            }
            return 0;
        }
        if (exp->parsed()) {
            const auto config = apply_flags(qmd::load_scenario(qasm_source), exp_flags);
            if (qasm_step < 0) throw qmd::ScenarioError("step", "must be >= 0");
            const auto grid = qmd::make_grid(config.r_min, config.r_max, config.n_qubits);
            // same circuit run_quantum_path executes at read-out j = step
            qmd::Circuit circuit(config.n_qubits);
            if (config.init_mode == qmd::InitMode::ShallowCircuit) {
                if (std::holds_alternative<qmd::StepSecondQuarter>(config.packet)) {
                    circuit = qmd::step_packet_init(config.n_qubits);
                } else {
                    const auto exact = qmd::packet_amplitudes(config.packet, grid);
                    std::vector<double> target(exact.size());
                    for (std::size_t m = 0; m < exact.size(); ++m) target[m] = std::abs(exact[m]);
                    circuit = qmd::gaussian_packet_init(config.n_qubits, target);
                    const auto& g = std::get<qmd::GaussianPacket>(config.packet);
                    if (g.p_s != 0.0)
                        circuit.append(
                            qmd::linear_phase_layer(config.n_qubits, g.p_s * grid.delta_r));
                }
            }
            if (qasm_step > 0) {
                auto pot = [&](double dt) -> qmd::Circuit {
                    if (const auto* dw = std::get_if<qmd::DoubleWell>(&config.potential))
                        return qmd::double_well_op(config.n_qubits, dw->v_min, dt);
                    if (const auto* h = std::get_if<qmd::Harmonic>(&config.potential))
                        return qmd::harmonic_op(
                            config.n_qubits,
                            qmd::harmonic_angles(grid, h->force_constant(), h->r_eq, dt));
                    return qmd::Circuit(config.n_qubits);
                };
                circuit = qmd::build_split_propagation(circuit, pot, grid, config.mu_au(),
                                                       config.dt, qasm_step, config.propagation,
                                                       config.qft);
            }
            const std::string text = qmd::export_qasm(circuit);
            if (qasm_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(qasm_out, std::ios::binary);
                if (!out) throw std::runtime_error("cannot open " + qasm_out);
                out << text;
                std::cout << "wrote " << qasm_out << " (" << circuit.gates.size() << " gates)\n";
            }
            return 0;
        }
    } catch (const qmd::ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
