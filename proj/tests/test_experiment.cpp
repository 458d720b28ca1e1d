#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include <bric/experiment.hpp>
#include <bric/scenario.hpp>

using namespace bric;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("bric_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

nlohmann::json preset_json(const std::string& name) {
    return nlohmann::json::parse(serialize(preset(name)));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ExperimentConfig short_pendulum(const std::string& tag) {
    ExperimentConfig cfg = preset("fig1_bric");
    cfg.name = tag;
    cfg.sim.t_end = 0.5;
    cfg.output.dir = temp_dir(tag).string();
    cfg.output.prefix = tag;
    return cfg;
}

}  // namespace

TEST_CASE("presets serialize and load back identically") {
    for (const std::string& name : preset_names()) {
        CHECK(is_preset(name));
        const ExperimentConfig original = preset(name);
        const std::string text = serialize(original);
        const LoadReport report = load_config_text(text);
        REQUIRE_MESSAGE(report.ok(), name);
        CHECK(report.notes.empty());  // nothing defaulted: presets are explicit
        CHECK(serialize(*report.config) == text);
    }
    CHECK_FALSE(is_preset("no_such_preset"));
    CHECK_THROWS_AS((void)preset("no_such_preset"), std::out_of_range);
}

TEST_CASE("invalid values are all reported with their locations") {
    nlohmann::json doc = preset_json("fig1_bric");
    doc["controller"]["kappa"] = -1.0;
    doc["funnel"]["channels"][0]["floor"] = 0.0;
    const LoadReport report = load_config_text(doc.dump());
    CHECK_FALSE(report.ok());
    REQUIRE(report.errors.size() >= 2);
    bool saw_kappa = false;
    bool saw_floor = false;
    for (const std::string& err : report.errors) {
        saw_kappa = saw_kappa || err.find("kappa") != std::string::npos;
        saw_floor = saw_floor || err.find("floor") != std::string::npos;
    }
    CHECK(saw_kappa);
    CHECK(saw_floor);
}

TEST_CASE("unknown keys are rejected with paths") {
    nlohmann::json doc = preset_json("fig1_bric");
    doc["plant"]["params"]["J3"] = 1.0;
    const LoadReport report = load_config_text(doc.dump());
    CHECK_FALSE(report.ok());
    REQUIRE(report.errors.size() == 1);
    CHECK(report.errors[0].find("plant.params.J3") != std::string::npos);
    CHECK(report.errors[0].find("unknown key") != std::string::npos);
}

TEST_CASE("omitted lambda defaults to 1 with a note") {
    nlohmann::json doc = preset_json("fig1_bric");
    doc["controller"].erase("lambda");
    const LoadReport report = load_config_text(doc.dump());
    REQUIRE(report.ok());
    REQUIRE(report.notes.size() == 1);
    CHECK(report.notes[0].find("lambda") != std::string::npos);
    CHECK(report.notes[0].find("defaulted") != std::string::npos);
    const auto& ctl = std::get<BricController>(report.config->controller);
    CHECK(ctl.gains.lambda == 1.0);
}

TEST_CASE("referential completeness between controller and funnel") {
    nlohmann::json bric_doc = preset_json("fig1_bric");
    bric_doc.erase("funnel");
    CHECK_FALSE(load_config_text(bric_doc.dump()).ok());

    nlohmann::json ppc_doc = preset_json("fig1_ppc");
    ppc_doc["funnel"] = {{"channels", nlohmann::json::array()}};
    CHECK_FALSE(load_config_text(ppc_doc.dump()).ok());
}

TEST_CASE("dimension cross-checks") {
    nlohmann::json doc = preset_json("fig1_bric");
    doc["initial"]["x"] = {1.0, 2.0, 3.0};
    const LoadReport report = load_config_text(doc.dump());
    CHECK_FALSE(report.ok());
    CHECK(report.errors[0].find("initial.x") != std::string::npos);

    nlohmann::json doc2 = preset_json("oracle");
    doc2["target"]["x1_d"] = {0.0};
    CHECK_FALSE(load_config_text(doc2.dump()).ok());
}

TEST_CASE("parse errors are reported") {
    CHECK_FALSE(load_config_text("{ not json").ok());
    CHECK_FALSE(load_config_text("[1, 2, 3]").ok());
    CHECK_FALSE(load_config_file("/nonexistent/config.json").ok());
}

TEST_CASE("make_plant dispatches on the configured type") {
    const ExperimentConfig pend = preset("fig1_bric");
    CHECK(dynamic_cast<PendulumPlant*>(make_plant(pend).get()) != nullptr);
    const ExperimentConfig di = preset("oracle");
    CHECK(dynamic_cast<DoubleIntegratorPlant*>(make_plant(di).get()) != nullptr);
}

TEST_CASE("integrator initial values flow from config to the run") {
    nlohmann::json doc = preset_json("fig1_bric");
    doc["controller"]["d1_init"] = 3.0;
    doc["controller"]["d2_init"] = {0.5, -0.5};
    doc["sim"]["t_end"] = 0.01;
    const LoadReport report = load_config_text(doc.dump());
    REQUIRE(report.ok());

    const auto plant = make_plant(*report.config);
    const RunResult result = run_closed_loop(*plant, report.config->controller,
                                             report.config->target, report.config->sim,
                                             report.config->initial);
    REQUIRE(result.ok());
    CHECK(result.trajectory.rows.front().d1_hat == 3.0);
    CHECK(result.trajectory.rows.front().d2_hat == Eigen::Vector2d(0.5, -0.5));
    CHECK(result.trajectory.rows.back().d1_hat > 3.0);
}

TEST_CASE("trajectory csv schema and determinism") {
    const ExperimentConfig cfg = short_pendulum("csv");
    std::ostringstream log;
    ScenarioArtifacts artifacts;
    REQUIRE(run_scenario(cfg, log, &artifacts) == exit_ok);

    const std::string csv = slurp(artifacts.trajectory_csv);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header ==
          "t,theta1,theta2,omega1,omega2,e1_1,e1_2,s2_1,s2_2,zeta_1,zeta_2,chi_1,chi_2,"
          "u_1,u_2,d1hat,d2hat_1,d2hat_2,phi_1,phi_2");
    CHECK(std::count(header.begin(), header.end(), ',') == 19);  // 20 columns

    // deterministic re-run produces byte-identical artifacts
    std::ostringstream log2;
    ScenarioArtifacts again;
    REQUIRE(run_scenario(cfg, log2, &again) == exit_ok);
    CHECK(slurp(again.trajectory_csv) == csv);
    CHECK(slurp(again.metrics_json) == slurp(artifacts.metrics_json));

    // floats carry full precision (17 significant digits on the first state)
    std::string row0;
    std::getline(lines, row0);
    CHECK(row0.find("-1.6000000000000001") != std::string::npos);

    // the final sample lands exactly on t_end
    std::string line, last;
    while (std::getline(lines, line)) {
        if (!line.empty()) {
            last = line;
        }
    }
    CHECK(last.rfind("0.5,", 0) == 0);
}

TEST_CASE("empty trajectory is never written") {
    Trajectory traj;
    traj.dims = {2, 2, 0};
    const fs::path path = temp_dir("emptycsv") / "t.csv";
    CHECK_THROWS_AS(write_trajectory_csv(traj, path), std::invalid_argument);
    CHECK_FALSE(fs::exists(path));
}

TEST_CASE("run_scenario exit codes") {
    SUBCASE("config error leaves no artifacts") {
        const fs::path dir = temp_dir("cfgerr");
        const fs::path cfg_path = dir / "bad.json";
        std::ofstream(cfg_path) << "{\"plant\": {\"type\": \"hovercraft\"}}";
        std::ostringstream log;
        ScenarioArtifacts artifacts;
        CHECK(run_scenario(cfg_path.string(), log, &artifacts) == exit_config_error);
        CHECK(log.str().find("config error") != std::string::npos);
        CHECK_FALSE(fs::exists(artifacts.trajectory_csv));
        CHECK_FALSE(fs::exists(artifacts.metrics_json));
    }

    SUBCASE("funnel violation maps to exit 3 and writes only the log") {
        ExperimentConfig cfg = short_pendulum("viol");
        auto& ctl = std::get<BricController>(cfg.controller);
        ctl.funnel.channels = {{0.5, 1e-6}, {0.5, 1e-6}};
        ctl.funnel_ratio_cap = 1e12;
        cfg.sim.t_end = 20.0;
        cfg.sim.h = 0.1;
        std::ostringstream log;
        ScenarioArtifacts artifacts;
        CHECK(run_scenario(cfg, log, &artifacts) == exit_funnel_violation);
        CHECK(log.str().find("violation") != std::string::npos);
        CHECK(fs::exists(artifacts.run_log));
        CHECK_FALSE(fs::exists(artifacts.trajectory_csv));
        CHECK(slurp(artifacts.run_log).find("nan") == std::string::npos);
    }

    SUBCASE("environment override redirects the output directory") {
        ExperimentConfig cfg = short_pendulum("envdir");
        const fs::path other = temp_dir("envdir_other");
        setenv("BRIC_OUTPUT_DIR", other.c_str(), 1);
        std::ostringstream log;
        ScenarioArtifacts artifacts;
        const int code = run_scenario(cfg, log, &artifacts);
        unsetenv("BRIC_OUTPUT_DIR");
        REQUIRE(code == exit_ok);
        CHECK(artifacts.trajectory_csv.parent_path() == other);
        CHECK(fs::exists(artifacts.trajectory_csv));
    }
}

TEST_CASE("compare_runs orders the metrics") {
    const fs::path dir = temp_dir("compare");
    Metrics a;
    a.final_error = 0.01;
    a.effort = 100.0;
    a.min_margin = 0.4;
    Metrics b;
    b.final_error = 0.5;
    b.effort = 220.0;
    b.min_margin = 0.02;
    write_metrics_json(a, dir / "a.json");
    write_metrics_json(b, dir / "b.json");

    std::ostringstream report;
    CHECK(compare_runs(dir / "a.json", dir / "b.json", report) == exit_ok);
    const std::string text = report.str();
    CHECK(text.find("final_error") != std::string::npos);
    CHECK(text.find("effort") != std::string::npos);
    CHECK(text.find("min_margin") != std::string::npos);
    // A wins all three orderings in this setup
    CHECK(std::count(text.begin(), text.end(), 'A') >= 3);

    std::ostringstream bad;
    CHECK(compare_runs(dir / "missing.json", dir / "b.json", bad) == exit_config_error);
}
