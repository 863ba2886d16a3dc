#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qmd/scenario.hpp"

using namespace qmd;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("preset parameters") {
    const auto names = preset_names();
    REQUIRE(names.size() == 6);

    const auto tun_a = preset_scenario("TunnelingA");
    CHECK(tun_a.n_qubits == 7);
    CHECK(tun_a.dt == 3.0);
    CHECK(tun_a.n_steps == 100);
    CHECK(tun_a.t_fin() == 300.0);
    CHECK(std::get<DoubleWell>(tun_a.potential).v_min == -0.017);

    const auto fp_a = preset_scenario("FreeParticleA");
    CHECK(fp_a.n_qubits == 8);
    CHECK(fp_a.dt == 1.5);
    const auto& g = std::get<GaussianPacket>(fp_a.packet);
    CHECK(g.r_s == 1.0);
    CHECK(g.a == 0.25);
    CHECK(g.p_s == 30.0);

    const auto har_a = preset_scenario("HarmonicA");
    CHECK(har_a.dt == 11.0);
    CHECK(std::get<Harmonic>(har_a.potential).r_eq == 2.5);
    CHECK(std::get<Harmonic>(har_a.potential).omega ==
          doctest::Approx(0.0181278).epsilon(1e-4));
    CHECK(std::get<GaussianPacket>(har_a.packet).a == 0.36);
    CHECK(std::get<GaussianPacket>(har_a.packet).r_s == 1.5);

    const auto fp_b = preset_scenario("FreeParticleB");
    CHECK(fp_b.n_qubits == 5);
    CHECK(fp_b.dt == 31.25);
    CHECK(fp_b.n_steps == 8);
    CHECK(fp_b.t_fin() == 250.0);
    CHECK(std::get<GaussianPacket>(fp_b.packet).r_s == 2.5);
    CHECK(std::get<GaussianPacket>(fp_b.packet).p_s == 0.0);

    const auto tun_b = preset_scenario("TunnelingB");
    CHECK(tun_b.dt == 50.0);
    CHECK(std::get<DoubleWell>(tun_b.potential).v_min == -0.005);

    const auto har_b = preset_scenario("HarmonicB");
    CHECK(har_b.dt == 43.75);
    CHECK(std::get<Harmonic>(har_b.potential).r_eq == 3.0);
    CHECK(std::get<GaussianPacket>(har_b.packet).r_s == 2.5);

    CHECK_THROWS_AS(preset_scenario("Nope"), ScenarioError);
}

TEST_CASE("config document parsing") {
    SUBCASE("a full document round-trips into a config") {
        const auto c = parse_scenario_json(R"({
            "name": "custom-dw", "n_qubits": 5, "potential": "double_well", "v_min": -0.005,
            "packet": "step", "dt": 50.0, "n_steps": 8, "mode": "single",
            "qft_approx": 1, "shots": 1024, "shot_seed": 7, "init": "circuit"
        })");
        CHECK(c.name == "custom-dw");
        CHECK(c.propagation == PropagationMode::SingleStep);
        CHECK(c.qft.approximation_degree == 1);
        CHECK(c.readout == ReadoutMode::Shots);
        CHECK(c.shots == 1024);
        CHECK(c.init_mode == InitMode::ShallowCircuit);
    }
    SUBCASE("validation failures name the field") {
        const std::string bad_dt = R"({"n_qubits": 5, "packet": "step", "dt": -1, "n_steps": 8})";
        try {
            parse_scenario_json(bad_dt);
            FAIL("expected ScenarioError");
        } catch (const ScenarioError& e) {
            CHECK(e.field() == "dt");
        }
        const std::string unknown =
            R"({"n_qubits": 5, "packet": "step", "dt": 1, "n_steps": 8, "dz": 2})";
        try {
            parse_scenario_json(unknown);
            FAIL("expected ScenarioError");
        } catch (const ScenarioError& e) {
            CHECK(e.field() == "dz");
        }
        CHECK_THROWS_AS(parse_scenario_json("not json at all"), ScenarioError);
        CHECK_THROWS_AS(
            parse_scenario_json(R"({"n_qubits": 5, "packet": "step", "dt": 1})"),
            ScenarioError);  // n_steps missing
    }
    SUBCASE("load_scenario resolves presets and files") {
        CHECK(load_scenario("TunnelingB").name == "TunnelingB");
        const auto dir = std::filesystem::temp_directory_path() / "qmd_cfg_test";
        std::filesystem::create_directories(dir);
        const auto file = dir / "cfg.json";
        std::ofstream(file) << R"({"n_qubits": 4, "packet": "step", "dt": 2.0, "n_steps": 3})";
        const auto c = load_scenario(file.string());
        CHECK(c.n_qubits == 4);
        CHECK(c.n_steps == 3);
        CHECK_THROWS_AS(load_scenario("no/such/file.json"), ScenarioError);
    }
}

TEST_CASE("n_steps = 0 gives a single t = 0 record") {
    auto c = preset_scenario("TunnelingB");
    c.n_steps = 0;
    const auto run = run_quantum_path(c);
    REQUIRE(run.records.size() == 1);
    CHECK(run.records[0].t == 0.0);
    REQUIRE(run.records[0].obs.p_tunnel.has_value());
    CHECK(std::abs(*run.records[0].obs.p_tunnel) < 1e-12);
}

TEST_CASE("record count and times") {
    auto c = preset_scenario("FreeParticleB");
    c.init_mode = InitMode::ExactInjection;
    const auto run = run_quantum_path(c);
    REQUIRE(run.records.size() == static_cast<std::size_t>(c.n_steps) + 1);
    for (int j = 0; j <= c.n_steps; ++j) {
        CHECK(run.records[static_cast<std::size_t>(j)].step == j);
        CHECK(run.records[static_cast<std::size_t>(j)].t == doctest::Approx(c.dt * j));
        CHECK(std::abs(run.records[static_cast<std::size_t>(j)].obs.norm - 1.0) < 1e-9);
    }
    CHECK(run.meta.gates > 0);
    CHECK(run.meta.depth > 0);
}

TEST_CASE("classical path honors both propagation modes and matches itself at j=1") {
    auto c = preset_scenario("TunnelingB");
    c.n_steps = 1;
    auto multi = c;
    multi.propagation = PropagationMode::MultiStep;
    auto single = c;
    single.propagation = PropagationMode::SingleStep;
    const auto a = run_classical_path(multi);
    const auto b = run_classical_path(single);
    const auto rep = compare_runs(a, b);
    CHECK(rep.max_overall() == 0.0);
}

TEST_CASE("quantum and classical paths agree on an ideal-config preset") {
    auto c = preset_scenario("TunnelingB");
    c.init_mode = InitMode::ExactInjection;
    REQUIRE(is_ideal_path_config(c));
    const auto q = run_quantum_path(c);
    const auto cl = run_classical_path(c);
    const auto rep = compare_runs(q, cl);
    CHECK(rep.max_overall() < kPathEquivalenceTol);
    for (const auto& rec : q.records) CHECK(rec.overlap_oracle > 1.0 - 1e-10);
}

TEST_CASE("flat potential with zero momentum pins the mean position") {
    auto c = preset_scenario("FreeParticleB");
    c.init_mode = InitMode::ExactInjection;
    const auto run = run_classical_path(c);
    for (const auto& rec : run.records)
        CHECK(std::abs(rec.obs.mean_r - run.records[0].obs.mean_r) < 1e-9);
}

TEST_CASE("injecting exact amplitudes reproduces the grid-model observables") {
    auto c = preset_scenario("FreeParticleA");
    c.init_mode = InitMode::ExactInjection;
    c.n_steps = 0;
    const auto run = run_quantum_path(c);
    const Grid g = make_grid(c.r_min, c.r_max, c.n_qubits);
    const auto exact = packet_amplitudes(c.packet, g);
    const auto direct = observables(exact, g);
    // set_amplitudes renormalizes on entry, so agreement is to the last ulp
    CHECK(std::abs(run.records[0].obs.mean_r - direct.mean_r) < 1e-14);
    CHECK(std::abs(run.records[0].obs.sigma - direct.sigma) < 1e-14);
}

TEST_CASE("AQFT deviation from the classical path grows with the degree") {
    double prev = -1.0;
    for (int d = 0; d <= 2; ++d) {
        auto c = preset_scenario("HarmonicB");
        c.init_mode = InitMode::ExactInjection;
        c.qft.approximation_degree = d;
        const auto rep = compare_runs(run_quantum_path(c), run_classical_path(c));
        if (d > 0) CHECK(rep.max_overall() > 1e-4);
        CHECK(rep.max_overall() >= prev);
        prev = rep.max_overall();
    }
}

TEST_CASE("mode consistency under time-step refinement") {
    // multi-step converges to the fine-dt oracle; a single-step read-out at a
    // fixed physical time is one big step and thus invariant under refinement
    auto run_mode = [](double dt, int steps, PropagationMode mode) {
        auto c = preset_scenario("HarmonicB");
        c.init_mode = InitMode::ExactInjection;
        c.dt = dt;
        c.n_steps = steps;
        c.propagation = mode;
        return run_classical_path(c);
    };
    const double dt = 43.75;
    const auto fine = run_mode(dt / 8.0, 64, PropagationMode::MultiStep);
    double prev_err = 1e9;
    for (int halvings = 0; halvings <= 2; ++halvings) {
        const int scale = 1 << halvings;
        const auto run = run_mode(dt / scale, 8 * scale, PropagationMode::MultiStep);
        double err = 0.0;
        for (std::size_t i = 0; i < run.records.size(); ++i) {
            const std::size_t fine_idx = i * static_cast<std::size_t>(8 / scale);
            err = std::max(err, std::abs(run.records[i].obs.mean_r -
                                         fine.records[fine_idx].obs.mean_r));
        }
        CHECK(err < prev_err / 2.5);
        prev_err = err;
    }
    const auto single_coarse = run_mode(dt, 8, PropagationMode::SingleStep);
    const auto single_half = run_mode(dt / 2.0, 16, PropagationMode::SingleStep);
    for (std::size_t i = 0; i < single_coarse.records.size(); ++i) {
        const auto& a = single_coarse.records[i];
        const auto& b = single_half.records[2 * i];
        CHECK(std::abs(a.obs.mean_r - b.obs.mean_r) < 1e-12);
    }
}

TEST_CASE("sampled mean position converges for every preset") {
    for (const auto& name : preset_names()) {
        auto c = preset_scenario(name);
        c.init_mode = InitMode::ExactInjection;
        c.n_steps = 1;
        auto exact = run_quantum_path(c);
        c.readout = ReadoutMode::Shots;
        c.shots = 1000000;
        c.shot_seed = 3;
        const auto sampled = run_quantum_path(c);
        for (std::size_t i = 0; i < exact.records.size(); ++i)
            CHECK(std::abs(sampled.records[i].obs.mean_r - exact.records[i].obs.mean_r) < 0.01);
    }
}

TEST_CASE("circuit init with a momentum boost transports the packet") {
    const auto c = parse_scenario_json(R"({
        "name": "boosted", "n_qubits": 5, "packet": "gaussian",
        "r_s": 2.5, "a": 0.24, "p_s": 8.0, "dt": 20.0, "n_steps": 4,
        "init": "circuit"
    })");
    const auto run = run_quantum_path(c);
    CHECK(run.records[0].overlap_oracle > 0.99);  // init fidelity vs the exact boosted packet
    CHECK(run.records.back().obs.mean_r > run.records.front().obs.mean_r + 0.3);
}

TEST_CASE("compare of a run against itself is all zeros") {
    auto c = preset_scenario("FreeParticleB");
    c.n_steps = 3;
    const auto run = run_classical_path(c);
    const auto rep = compare_runs(run, run);
    CHECK(rep.max_overall() == 0.0);
    CHECK(rep.tv_final == 0.0);
}

TEST_CASE("shot read-out perturbs observables but stays deterministic") {
    auto c = preset_scenario("TunnelingB");
    c.n_steps = 2;
    c.readout = ReadoutMode::Shots;
    c.shots = 100000;
    c.shot_seed = 5;
    const auto a = run_quantum_path(c);
    const auto b = run_quantum_path(c);
    for (std::size_t i = 0; i < a.records.size(); ++i)
        CHECK(a.records[i].obs.mean_r == b.records[i].obs.mean_r);
    auto exact = c;
    exact.readout = ReadoutMode::ExactProbabilities;
    exact.shots = 0;
    const auto e = run_quantum_path(exact);
    const auto rep = compare_runs(a, e);
    CHECK(rep.max_d_mean_r > 0.0);
    CHECK(rep.max_d_mean_r < 0.05);
}

TEST_CASE("noisy runs differ from clean ones but norm survives") {
    auto c = preset_scenario("TunnelingB");
    c.n_steps = 2;
    c.noise = NoiseSpec{0.05, 11};
    const auto noisy = run_quantum_path(c);
    auto clean_cfg = c;
    clean_cfg.noise.reset();
    const auto clean = run_quantum_path(clean_cfg);
    const auto rep = compare_runs(noisy, clean);
    CHECK(rep.max_overall() > 0.0);
    for (const auto& rec : noisy.records) CHECK(std::abs(rec.obs.norm - 1.0) < 1e-9);
}

TEST_CASE("emit_outputs writes byte-stable artifacts") {
    auto c = preset_scenario("FreeParticleB");
    c.n_steps = 8;
    const auto run = run_quantum_path(c);
    const auto base = std::filesystem::temp_directory_path() / "qmd_emit_test";
    std::filesystem::remove_all(base);
    emit_outputs(run, base / "a");
    emit_outputs(run, base / "b");

    const std::string series = slurp(base / "a" / "series.csv");
    CHECK(series == slurp(base / "b" / "series.csv"));
    CHECK(series.rfind("step,t,mean_r,sigma,p_tunnel,norm,overlap_oracle\n", 0) == 0);
    // 9 data rows + header
    CHECK(std::count(series.begin(), series.end(), '\n') == 10);

    int frames = 0;
    for (const auto& entry : std::filesystem::directory_iterator(base / "a" / "frames")) {
        ++frames;
        const std::string frame = slurp(entry.path());
        CHECK(frame.rfind("m,r,prob_quantum,prob_classical\n", 0) == 0);
    }
    CHECK(frames == 9);

    SUBCASE("frame probabilities sum to one") {
        const std::string frame = slurp(base / "a" / "frames" / "step_0008.csv");
        std::istringstream in(frame);
        std::string line;
        std::getline(in, line);  // header
        double q_sum = 0.0, c_sum = 0.0;
        while (std::getline(in, line)) {
            std::istringstream row(line);
            std::string cell;
            std::getline(row, cell, ',');
            std::getline(row, cell, ',');
            std::getline(row, cell, ',');
            q_sum += std::stod(cell);
            std::getline(row, cell, ',');
            c_sum += std::stod(cell);
        }
        CHECK(std::abs(q_sum - 1.0) < 1e-9);
        CHECK(std::abs(c_sum - 1.0) < 1e-9);
    }
    std::filesystem::remove_all(base);
}
