#include <bric/scenario.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace bric {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void append_block(std::string& line, const Eigen::VectorXd& v) {
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        line += ',';
        line += fmt17(v[j]);
    }
}

void write_text_file(const std::string& content, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << content;
    if (!out) {
        out.close();
        std::filesystem::remove(path);
        throw std::runtime_error("write failed for " + path.string());
    }
}

}  // namespace

void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
    if (traj.empty()) {
        throw std::invalid_argument("refusing to write an empty trajectory to " + path.string());
    }
    const int n = traj.dims.channels;
    const int k = traj.dims.order;

    std::string out = "t";
    for (const std::string& name : traj.state_names) {
        out += ',';
        out += name;
    }
    auto add_cols = [&out, n](const std::string& stem) {
        for (int j = 1; j <= n; ++j) {
            out += ',';
            out += stem + "_" + std::to_string(j);
        }
    };
    add_cols("e1");
    add_cols("s" + std::to_string(k));
    add_cols("zeta");
    add_cols("chi");
    add_cols("u");
    out += ",d1hat";
    add_cols("d2hat");
    add_cols("phi");
    out += '\n';

    for (const TrajectoryRow& row : traj.rows) {
        std::string line = fmt17(row.t);
        append_block(line, row.x);
        append_block(line, row.e.head(n));
        append_block(line, row.s.tail(n));
        append_block(line, row.zeta);
        append_block(line, row.chi);
        append_block(line, row.u);
        line += ',';
        line += fmt17(row.d1_hat);
        append_block(line, row.d2_hat);
        append_block(line, row.bound);
        out += line;
        out += '\n';
    }
    write_text_file(out, path);
}

void write_metrics_json(const Metrics& metrics, const std::filesystem::path& path) {
    json j;
    j["final_error"] = metrics.final_error;
    j["effort"] = metrics.effort;
    j["min_margin"] = metrics.min_margin;
    j["d1_drift"] = metrics.d1_drift;
    if (metrics.envelope_ok) {
        j["envelope_ok"] = *metrics.envelope_ok;
    }
    write_text_file(j.dump(2) + "\n", path);
}

int run_scenario(const std::string& preset_or_path, std::ostream& log,
                 ScenarioArtifacts* artifacts) {
    LoadReport report;
    if (is_preset(preset_or_path)) {
        report.config = preset(preset_or_path);
    } else {
        report = load_config_file(preset_or_path);
        for (const std::string& note : report.notes) {
            log << "note: " << note << "\n";
        }
        if (!report.ok()) {
            for (const std::string& err : report.errors) {
                log << "config error: " << err << "\n";
            }
            return exit_config_error;
        }
    }
    return run_scenario(*report.config, log, artifacts);
}

int run_scenario(const ExperimentConfig& cfg, std::ostream& log, ScenarioArtifacts* artifacts) {
    try {
        std::filesystem::path out_dir = cfg.output.dir;
        if (const char* env = std::getenv("BRIC_OUTPUT_DIR"); env != nullptr && *env != '\0') {
            out_dir = env;
        }
        std::filesystem::create_directories(out_dir);
        const auto stem = [&](const std::string& suffix) {
            return out_dir / (cfg.output.prefix + suffix);
        };
        ScenarioArtifacts paths{stem("_trajectory.csv"), stem("_metrics.json"),
                                stem("_run.log")};
        if (artifacts != nullptr) {
            *artifacts = paths;
        }

        const auto plant = make_plant(cfg);
        const auto wall_start = std::chrono::steady_clock::now();
        const RunResult result =
            run_closed_loop(*plant, cfg.controller, cfg.target, cfg.sim, cfg.initial);
        const double wall_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();

        std::ostringstream run_log;
        run_log << "scenario: " << cfg.name << "\n";
        run_log << "plant: " << cfg.plant.type << "\n";
        run_log << "controller: "
                << (std::holds_alternative<BricController>(cfg.controller) ? "bric" : "ppc")
                << "\n";
        run_log << "wall_time_s: " << wall_s << "\n";
        run_log << "status: "
                << (result.status == RunStatus::success ? "success"
                    : result.status == RunStatus::funnel_violation ? "funnel_violation"
                                                                   : "numeric_failure")
                << "\n";
        run_log << "detail: " << result.message << "\n";

        if (result.status == RunStatus::funnel_violation) {
            const ViolationInfo& v = *result.violation;
            run_log << "violation: t = " << v.t << ", channel = " << v.channel
                    << ", zeta = " << v.zeta << "\n";
            write_text_file(run_log.str(), paths.run_log);
            log << run_log.str();
            return exit_funnel_violation;
        }
        if (result.status == RunStatus::numeric_failure) {
            write_text_file(run_log.str(), paths.run_log);
            log << run_log.str();
            return exit_numeric_failure;
        }

        const Metrics metrics = compute_metrics(result.trajectory);
        run_log << "rows: " << result.trajectory.rows.size() << "\n";
        run_log << "final_error: " << fmt17(metrics.final_error) << "\n";
        run_log << "effort: " << fmt17(metrics.effort) << "\n";
        run_log << "min_margin: " << fmt17(metrics.min_margin) << "\n";
        run_log << "d1_drift: " << fmt17(metrics.d1_drift) << "\n";

        write_trajectory_csv(result.trajectory, paths.trajectory_csv);
        write_metrics_json(metrics, paths.metrics_json);
        write_text_file(run_log.str(), paths.run_log);
        log << run_log.str();
        return exit_ok;
    } catch (const std::invalid_argument& e) {
        log << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return exit_internal;
    }
}

int compare_runs(const std::filesystem::path& metrics_a, const std::filesystem::path& metrics_b,
                 std::ostream& report) {
    auto read = [](const std::filesystem::path& p) -> std::optional<json> {
        std::ifstream in(p);
        if (!in) {
            return std::nullopt;
        }
        try {
            json j;
            in >> j;
            return j;
        } catch (const json::parse_error&) {
            return std::nullopt;
        }
    };
    const auto a = read(metrics_a);
    const auto b = read(metrics_b);
    if (!a || !b) {
        report << "cannot read metrics from " << (a ? metrics_b : metrics_a) << "\n";
        return exit_config_error;
    }

    struct Line {
        const char* key;
        bool lower_is_better;
    };
    report << "metric         A=" << metrics_a.filename().string()
           << "  B=" << metrics_b.filename().string() << "\n";
    for (const Line& line : {Line{"final_error", true}, Line{"effort", true},
                             Line{"min_margin", false}}) {
        if (!a->contains(line.key) || !b->contains(line.key)) {
            report << line.key << ": missing\n";
            continue;
        }
        const double va = (*a)[line.key].get<double>();
        const double vb = (*b)[line.key].get<double>();
        const char* winner = "tie";
        if (va != vb) {
            const bool a_wins = line.lower_is_better ? va < vb : va > vb;
            winner = a_wins ? "A" : "B";
        }
        report << line.key << ": A = " << va << ", B = " << vb << " -> " << winner << "\n";
    }
    return exit_ok;
}

}  // namespace bric
