#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmd/builder.hpp"
#include "qmd/grid.hpp"
#include "qmd/statevector.hpp"

namespace qmd {

enum class InitMode { ExactInjection, ShallowCircuit };
enum class ReadoutMode { ExactProbabilities, Shots };

/// One full experiment: grid, potential, initial packet, time step and the
/// option axes (initializer, QFT approximation, propagation reconstruction,
/// read-out, optional gate noise).
struct ScenarioConfig {
    std::string name = "custom";
    double r_min = 0.0;
    double r_max = 5.0;
    int n_qubits = 5;
    double mu_amu = 0.9412;
    PotentialSpec potential = Flat{};
    WavePacketSpec packet = StepSecondQuarter{};
    double dt = 1.0;
    int n_steps = 1;
    InitMode init_mode = InitMode::ExactInjection;
    QftOptions qft;
    PropagationMode propagation = PropagationMode::MultiStep;
    ReadoutMode readout = ReadoutMode::ExactProbabilities;
    std::uint64_t shots = 0;
    std::uint64_t shot_seed = 1;
    std::optional<NoiseSpec> noise;

    double mu_au() const { return units::amu_to_au(mu_amu); }
    double t_fin() const { return dt * n_steps; }

    /// Throws ScenarioError naming the offending field.
    void validate() const;
};

class ScenarioError : public std::runtime_error {
  public:
    ScenarioError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
ScenarioConfig preset_scenario(const std::string& name);

/// Preset name, or a path to a flat JSON key-value document (see README for
/// the schema).
ScenarioConfig load_scenario(const std::string& source);
ScenarioConfig parse_scenario_json(const std::string& text);

struct StepRecord {
    int step = 0;
    double t = 0.0;
    Observables obs;
    double overlap_oracle = 0.0;  // |<psi_path | psi_classical>| at this step
};

struct PathMetadata {
    std::size_t gates = 0;      // gate count of the longest (j = n_steps) circuit
    std::size_t two_qubit = 0;  // block-level count (a controlled-Ry counts once)
    std::size_t depth = 0;
};

struct RunResult {
    ScenarioConfig config;
    std::vector<StepRecord> records;                 // n_steps + 1, including t = 0
    std::vector<std::vector<double>> probs;          // own-path distribution per record
    std::vector<std::vector<double>> oracle_probs;   // classical reference per record
    PathMetadata meta;
};

/// Emulates the circuit pipeline: for each j in 0..n_steps the initializer
/// plus the propagation circuit for j (per PropagationMode) is applied to a
/// fresh zero state and read out per ReadoutMode.
RunResult run_quantum_path(const ScenarioConfig& config);

/// The split-operator reference on the exact packet amplitudes. The
/// propagation mode is honored for comparability; read-out is always exact
/// probabilities and noise never applies.
RunResult run_classical_path(const ScenarioConfig& config);

struct ComparisonReport {
    std::vector<double> d_mean_r;
    std::vector<double> d_sigma;
    std::vector<double> d_p_tunnel;
    double max_d_mean_r = 0.0, final_d_mean_r = 0.0;
    double max_d_sigma = 0.0, final_d_sigma = 0.0;
    double max_d_p_tunnel = 0.0, final_d_p_tunnel = 0.0;
    double tv_final = 0.0;  // total-variation distance of the final distributions
    PathMetadata meta_a, meta_b;

    double max_overall() const;
};

ComparisonReport compare_runs(const RunResult& a, const RunResult& b);

/// The two paths agree to this bound when run with exact injection, exact
/// QFT, exact probabilities and no noise.
inline constexpr double kPathEquivalenceTol = 1e-10;

/// True when the config is the ideal combination the equivalence bound
/// applies to.
bool is_ideal_path_config(const ScenarioConfig& config);

/// Writes series.csv, frames/step_####.csv and report.txt. Byte-stable for
/// identical inputs.
void emit_outputs(const RunResult& run, const std::filesystem::path& out_dir);
void emit_outputs(const RunResult& quantum, const RunResult& classical,
                  const ComparisonReport& report, const std::filesystem::path& out_dir);

/// Locale-independent formatting with 12 significant digits.
std::string format_g12(double v);

}  // namespace qmd
