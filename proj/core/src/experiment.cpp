#include <bric/experiment.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace bric {

namespace {

using nlohmann::json;

/// Collects every validation failure with a dotted path to its location.
struct Diagnostics {
    std::vector<std::string>& errors;
    std::vector<std::string>& notes;

    void error(const std::string& path, const std::string& msg) {
        errors.push_back(path + ": " + msg);
    }
    void note(const std::string& path, const std::string& msg) {
        notes.push_back(path + ": " + msg);
    }
};

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         const std::set<std::string>& allowed, Diagnostics& diag) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            diag.error(join(path, it.key()), "unknown key");
        }
    }
}

bool expect_object(const json& j, const std::string& path, Diagnostics& diag) {
    if (!j.is_object()) {
        diag.error(path, "expected an object");
        return false;
    }
    return true;
}

double get_number(const json& obj, const std::string& path, const std::string& key,
                  double fallback, Diagnostics& diag) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) {
        diag.error(join(path, key), "expected a number");
        return fallback;
    }
    return v.get<double>();
}

int get_integer(const json& obj, const std::string& path, const std::string& key, int fallback,
                Diagnostics& diag) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
        diag.error(join(path, key), "expected an integer");
        return fallback;
    }
    return v.get<int>();
}

bool get_bool(const json& obj, const std::string& path, const std::string& key, bool fallback,
              Diagnostics& diag) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_boolean()) {
        diag.error(join(path, key), "expected a boolean");
        return fallback;
    }
    return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& path, const std::string& key,
                       const std::string& fallback, Diagnostics& diag) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_string()) {
        diag.error(join(path, key), "expected a string");
        return fallback;
    }
    return v.get<std::string>();
}

Eigen::VectorXd get_vector(const json& obj, const std::string& path, const std::string& key,
                           Diagnostics& diag) {
    if (!obj.contains(key)) {
        return {};
    }
    const json& v = obj.at(key);
    if (!v.is_array()) {
        diag.error(join(path, key), "expected an array of numbers");
        return {};
    }
    Eigen::VectorXd out(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) {
            diag.error(join(path, key) + "[" + std::to_string(i) + "]", "expected a number");
            return {};
        }
        out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
    }
    return out;
}

void require_positive(double v, const std::string& path, Diagnostics& diag) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        diag.error(path, "must be positive and finite, got " + std::to_string(v));
    }
}

void parse_plant(const json& j, ExperimentConfig& cfg, Diagnostics& diag) {
    const std::string path = "plant";
    if (!expect_object(j, path, diag)) {
        return;
    }
    reject_unknown_keys(j, path, {"type", "params", "flags"}, diag);
    cfg.plant.type = get_string(j, path, "type", "pendulum", diag);
    if (cfg.plant.type != "pendulum" && cfg.plant.type != "double_integrator") {
        diag.error(join(path, "type"), "must be 'pendulum' or 'double_integrator'");
        return;
    }

    const json params = j.contains("params") ? j.at("params") : json::object();
    const std::string ppath = join(path, "params");
    if (!expect_object(params, ppath, diag)) {
        return;
    }
    if (cfg.plant.type == "double_integrator") {
        reject_unknown_keys(params, ppath, {"f_d"}, diag);
        cfg.plant.f_d = get_vector(params, ppath, "f_d", diag);
        if (cfg.plant.f_d.size() == 0) {
            diag.error(join(ppath, "f_d"), "double_integrator needs a non-empty drift vector");
        }
        if (j.contains("flags")) {
            diag.error(join(path, "flags"), "scenario flags only apply to the pendulum plant");
        }
        return;
    }

    PendulumParams& p = cfg.plant.pendulum;
    reject_unknown_keys(params, ppath,
                        {"J1", "J2", "m1", "m2", "r_c", "d_c", "l_c", "k_c", "b_c", "g", "sigma0",
                         "sigma1", "sigma2", "theta_dot_s", "T_s", "T_c", "stribeck_uses_bristle"},
                        diag);
    p.J1 = get_number(params, ppath, "J1", p.J1, diag);
    p.J2 = get_number(params, ppath, "J2", p.J2, diag);
    p.m1 = get_number(params, ppath, "m1", p.m1, diag);
    p.m2 = get_number(params, ppath, "m2", p.m2, diag);
    p.r_c = get_number(params, ppath, "r_c", p.r_c, diag);
    p.d_c = get_number(params, ppath, "d_c", p.d_c, diag);
    p.l_c = get_number(params, ppath, "l_c", p.l_c, diag);
    p.k_c = get_number(params, ppath, "k_c", p.k_c, diag);
    p.b_c = get_number(params, ppath, "b_c", p.b_c, diag);
    p.g = get_number(params, ppath, "g", p.g, diag);
    p.sigma0 = get_number(params, ppath, "sigma0", p.sigma0, diag);
    p.sigma1 = get_number(params, ppath, "sigma1", p.sigma1, diag);
    p.sigma2 = get_number(params, ppath, "sigma2", p.sigma2, diag);
    p.theta_dot_s = get_number(params, ppath, "theta_dot_s", p.theta_dot_s, diag);
    p.T_s = get_number(params, ppath, "T_s", p.T_s, diag);
    p.T_c = get_number(params, ppath, "T_c", p.T_c, diag);
    p.stribeck_uses_bristle =
        get_bool(params, ppath, "stribeck_uses_bristle", p.stribeck_uses_bristle, diag);
    for (const auto& [value, name] :
         std::initializer_list<std::pair<double, const char*>>{
             {p.J1, "J1"}, {p.J2, "J2"}, {p.m1, "m1"}, {p.m2, "m2"}, {p.r_c, "r_c"},
             {p.d_c, "d_c"}, {p.l_c, "l_c"}, {p.k_c, "k_c"}, {p.b_c, "b_c"}, {p.g, "g"},
             {p.sigma0, "sigma0"}, {p.sigma1, "sigma1"}, {p.sigma2, "sigma2"},
             {p.theta_dot_s, "theta_dot_s"}, {p.T_s, "T_s"}, {p.T_c, "T_c"}}) {
        require_positive(value, join(ppath, name), diag);
    }

    const json flags = j.contains("flags") ? j.at("flags") : json::object();
    const std::string fpath = join(path, "flags");
    if (!expect_object(flags, fpath, diag)) {
        return;
    }
    ScenarioFlags& f = cfg.plant.flags;
    reject_unknown_keys(flags, fpath,
                        {"motor_failure", "failure_start", "failure_end", "failure_factor",
                         "disturbance", "disturbance_after_inertia"},
                        diag);
    f.motor_failure = get_bool(flags, fpath, "motor_failure", f.motor_failure, diag);
    f.failure_start = get_number(flags, fpath, "failure_start", f.failure_start, diag);
    f.failure_end = get_number(flags, fpath, "failure_end", f.failure_end, diag);
    f.failure_factor = get_number(flags, fpath, "failure_factor", f.failure_factor, diag);
    f.disturbance = get_bool(flags, fpath, "disturbance", f.disturbance, diag);
    f.disturbance_after_inertia =
        get_bool(flags, fpath, "disturbance_after_inertia", f.disturbance_after_inertia, diag);
    if (!(f.failure_start < f.failure_end)) {
        diag.error(fpath, "failure window start must precede its end");
    }
}

void parse_controller(const json& root, ExperimentConfig& cfg, Diagnostics& diag) {
    const std::string path = "controller";
    const json j = root.contains("controller") ? root.at("controller") : json::object();
    if (!expect_object(j, path, diag)) {
        return;
    }
    const std::string type = get_string(j, path, "type", "bric", diag);
    if (type == "bric") {
        reject_unknown_keys(
            j, path, {"type", "lambda", "kappa", "mu_g", "mu_d1", "mu_d2", "d1_init", "d2_init"},
            diag);
        BricController ctl;
        if (!j.contains("lambda")) {
            diag.note(join(path, "lambda"), "defaulted to 1");
        }
        ctl.gains.lambda = get_number(j, path, "lambda", 1.0, diag);
        ctl.gains.kappa = get_number(j, path, "kappa", ctl.gains.kappa, diag);
        ctl.gains.mu_g = get_number(j, path, "mu_g", ctl.gains.mu_g, diag);
        ctl.gains.mu_d1 = get_number(j, path, "mu_d1", ctl.gains.mu_d1, diag);
        ctl.gains.mu_d2 = get_number(j, path, "mu_d2", ctl.gains.mu_d2, diag);
        ctl.d1_init = get_number(j, path, "d1_init", 0.0, diag);
        ctl.d2_init = get_vector(j, path, "d2_init", diag);
        require_positive(ctl.gains.lambda, join(path, "lambda"), diag);
        require_positive(ctl.gains.kappa, join(path, "kappa"), diag);
        require_positive(ctl.gains.mu_g, join(path, "mu_g"), diag);
        require_positive(ctl.gains.mu_d1, join(path, "mu_d1"), diag);
        require_positive(ctl.gains.mu_d2, join(path, "mu_d2"), diag);

        // Funnel section (required for the barrier controller).
        if (!root.contains("funnel")) {
            diag.error("funnel", "required when controller.type is 'bric'");
        } else {
            const json& fj = root.at("funnel");
            if (expect_object(fj, "funnel", diag)) {
                reject_unknown_keys(fj, "funnel", {"channels", "ratio_cap"}, diag);
                ctl.funnel_ratio_cap =
                    get_number(fj, "funnel", "ratio_cap", ctl.funnel_ratio_cap, diag);
                require_positive(ctl.funnel_ratio_cap, "funnel.ratio_cap", diag);
                if (!fj.contains("channels") || !fj.at("channels").is_array()) {
                    diag.error("funnel.channels", "expected an array of {rate, floor} objects");
                } else {
                    for (size_t i = 0; i < fj.at("channels").size(); ++i) {
                        const json& ch = fj.at("channels")[i];
                        const std::string cpath = "funnel.channels[" + std::to_string(i) + "]";
                        if (!expect_object(ch, cpath, diag)) {
                            continue;
                        }
                        reject_unknown_keys(ch, cpath, {"rate", "floor"}, diag);
                        FunnelChannel f;
                        f.rate = get_number(ch, cpath, "rate", f.rate, diag);
                        f.floor = get_number(ch, cpath, "floor", f.floor, diag);
                        ctl.funnel.channels.push_back(f);
                    }
                    const FunnelDiagnostics fd = validate_funnel(ctl.funnel, ctl.funnel_ratio_cap);
                    for (const std::string& issue : fd.issues) {
                        diag.error("funnel", issue);
                    }
                }
            }
        }
        cfg.controller = std::move(ctl);
    } else if (type == "ppc") {
        reject_unknown_keys(j, path, {"type", "lambda", "k_ppc", "rho0", "rho_rate", "rho_floor"},
                            diag);
        if (root.contains("funnel")) {
            diag.error("funnel", "only applies when controller.type is 'bric'");
        }
        PpcController ctl;
        if (!j.contains("lambda")) {
            diag.note(join(path, "lambda"), "defaulted to 1");
        }
        ctl.lambda = get_number(j, path, "lambda", 1.0, diag);
        ctl.cfg.k_ppc = get_number(j, path, "k_ppc", ctl.cfg.k_ppc, diag);
        ctl.cfg.rho_rate = get_number(j, path, "rho_rate", ctl.cfg.rho_rate, diag);
        ctl.cfg.rho_floor = get_number(j, path, "rho_floor", ctl.cfg.rho_floor, diag);
        require_positive(ctl.lambda, join(path, "lambda"), diag);
        require_positive(ctl.cfg.k_ppc, join(path, "k_ppc"), diag);
        require_positive(ctl.cfg.rho_rate, join(path, "rho_rate"), diag);
        require_positive(ctl.cfg.rho_floor, join(path, "rho_floor"), diag);
        if (j.contains("rho0") && j.at("rho0").is_string()) {
            if (j.at("rho0").get<std::string>() != "auto") {
                diag.error(join(path, "rho0"), "must be a number or \"auto\"");
            }
            ctl.rho0_auto = true;
        } else if (j.contains("rho0")) {
            ctl.rho0_auto = false;
            ctl.cfg.rho0 = get_number(j, path, "rho0", ctl.cfg.rho0, diag);
            if (!(ctl.cfg.rho0 > ctl.cfg.rho_floor)) {
                diag.error(join(path, "rho0"), "must exceed rho_floor");
            }
        } else {
            ctl.rho0_auto = true;
        }
        cfg.controller = std::move(ctl);
    } else {
        diag.error(join(path, "type"), "must be 'bric' or 'ppc'");
    }
}

void parse_sim(const json& root, ExperimentConfig& cfg, Diagnostics& diag) {
    const json j = root.contains("sim") ? root.at("sim") : json::object();
    const std::string path = "sim";
    if (!expect_object(j, path, diag)) {
        return;
    }
    reject_unknown_keys(j, path,
                        {"t_end", "h", "record_every", "guard_margin", "max_substep_halvings"},
                        diag);
    SimConfig& s = cfg.sim;
    s.t_end = get_number(j, path, "t_end", s.t_end, diag);
    s.h = get_number(j, path, "h", s.h, diag);
    s.record_every = get_integer(j, path, "record_every", s.record_every, diag);
    s.guard_margin = get_number(j, path, "guard_margin", s.guard_margin, diag);
    s.max_substep_halvings = get_integer(j, path, "max_substep_halvings",
                                         s.max_substep_halvings, diag);
    if (!(s.t_end > 0.0)) {
        diag.error(join(path, "t_end"), "must be positive");
    }
    if (!(s.h > 0.0) || s.h > s.t_end) {
        diag.error(join(path, "h"), "must satisfy 0 < h <= t_end");
    }
    if (s.record_every < 1) {
        diag.error(join(path, "record_every"), "must be >= 1");
    }
    if (!(s.guard_margin > 0.0) || s.guard_margin >= 1e-3) {
        diag.error(join(path, "guard_margin"), "must be in (0, 1e-3)");
    }
    if (s.max_substep_halvings < 0) {
        diag.error(join(path, "max_substep_halvings"), "must be >= 0");
    }
}

void cross_validate(ExperimentConfig& cfg, Diagnostics& diag) {
    int n = 0;
    int k = 2;
    int n_z = 0;
    if (cfg.plant.type == "pendulum") {
        n = 2;
        n_z = 2;
    } else {
        n = static_cast<int>(cfg.plant.f_d.size());
    }
    if (n == 0) {
        return;  // plant parsing already failed
    }
    if (cfg.target.x1_d.size() != n) {
        diag.error("target.x1_d", "expected " + std::to_string(n) + " entries, got " +
                                      std::to_string(cfg.target.x1_d.size()));
    }
    if (cfg.initial.x.size() != static_cast<Eigen::Index>(k) * n) {
        diag.error("initial.x", "expected " + std::to_string(k * n) + " entries, got " +
                                    std::to_string(cfg.initial.x.size()));
    }
    if (cfg.initial.z.size() != n_z) {
        diag.error("initial.z", "expected " + std::to_string(n_z) + " entries, got " +
                                    std::to_string(cfg.initial.z.size()));
    }
    if (const auto* bric = std::get_if<BricController>(&cfg.controller)) {
        if (bric->funnel.size() != 0 && bric->funnel.size() != n) {
            diag.error("funnel.channels", "expected " + std::to_string(n) + " channels, got " +
                                              std::to_string(bric->funnel.size()));
        }
        if (bric->d2_init.size() != 0 && bric->d2_init.size() != n) {
            diag.error("controller.d2_init", "expected " + std::to_string(n) + " entries");
        }
    }
    if (!cfg.initial.x.allFinite() || !cfg.initial.z.allFinite() || !cfg.target.x1_d.allFinite()) {
        diag.error("initial", "states and target must be finite");
    }
}

}  // namespace

LoadReport load_config_text(const std::string& text) {
    LoadReport report;
    Diagnostics diag{report.errors, report.notes};

    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        report.errors.push_back(std::string("parse error: ") + e.what());
        return report;
    }
    if (!root.is_object()) {
        report.errors.push_back("top level: expected an object");
        return report;
    }

    ExperimentConfig cfg;
    reject_unknown_keys(
        root, "", {"name", "plant", "controller", "funnel", "target", "initial", "sim", "output"},
        diag);
    cfg.name = get_string(root, "", "name", "custom", diag);

    if (root.contains("plant")) {
        parse_plant(root.at("plant"), cfg, diag);
    } else {
        diag.error("plant", "required section");
    }
    parse_controller(root, cfg, diag);

    const json target = root.contains("target") ? root.at("target") : json::object();
    if (expect_object(target, "target", diag)) {
        reject_unknown_keys(target, "target", {"x1_d"}, diag);
        cfg.target.x1_d = get_vector(target, "target", "x1_d", diag);
        if (cfg.target.x1_d.size() == 0) {
            diag.error("target.x1_d", "required");
        }
    }

    const json initial = root.contains("initial") ? root.at("initial") : json::object();
    if (expect_object(initial, "initial", diag)) {
        reject_unknown_keys(initial, "initial", {"x", "z"}, diag);
        cfg.initial.x = get_vector(initial, "initial", "x", diag);
        cfg.initial.z = get_vector(initial, "initial", "z", diag);
        if (cfg.initial.x.size() == 0) {
            diag.error("initial.x", "required");
        }
    }

    parse_sim(root, cfg, diag);

    const json output = root.contains("output") ? root.at("output") : json::object();
    if (expect_object(output, "output", diag)) {
        reject_unknown_keys(output, "output", {"dir", "prefix"}, diag);
        cfg.output.dir = get_string(output, "output", "dir", cfg.output.dir, diag);
        cfg.output.prefix = get_string(output, "output", "prefix", cfg.name, diag);
    }

    if (report.errors.empty()) {
        cross_validate(cfg, diag);
    }
    if (report.errors.empty()) {
        report.config = std::move(cfg);
    }
    return report;
}

LoadReport load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        LoadReport report;
        report.errors.push_back("cannot open config file: " + path.string());
        return report;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return load_config_text(buf.str());
}

std::string serialize(const ExperimentConfig& cfg) {
    json root;
    root["name"] = cfg.name;

    json plant;
    plant["type"] = cfg.plant.type;
    if (cfg.plant.type == "double_integrator") {
        plant["params"]["f_d"] = std::vector<double>(cfg.plant.f_d.begin(), cfg.plant.f_d.end());
    } else {
        const PendulumParams& p = cfg.plant.pendulum;
        json params;
        params["J1"] = p.J1;
        params["J2"] = p.J2;
        params["m1"] = p.m1;
        params["m2"] = p.m2;
        params["r_c"] = p.r_c;
        params["d_c"] = p.d_c;
        params["l_c"] = p.l_c;
        params["k_c"] = p.k_c;
        params["b_c"] = p.b_c;
        params["g"] = p.g;
        params["sigma0"] = p.sigma0;
        params["sigma1"] = p.sigma1;
        params["sigma2"] = p.sigma2;
        params["theta_dot_s"] = p.theta_dot_s;
        params["T_s"] = p.T_s;
        params["T_c"] = p.T_c;
        params["stribeck_uses_bristle"] = p.stribeck_uses_bristle;
        plant["params"] = params;
        const ScenarioFlags& f = cfg.plant.flags;
        json flags;
        flags["motor_failure"] = f.motor_failure;
        flags["failure_start"] = f.failure_start;
        flags["failure_end"] = f.failure_end;
        flags["failure_factor"] = f.failure_factor;
        flags["disturbance"] = f.disturbance;
        flags["disturbance_after_inertia"] = f.disturbance_after_inertia;
        plant["flags"] = flags;
    }
    root["plant"] = plant;

    if (const auto* bric = std::get_if<BricController>(&cfg.controller)) {
        json ctl;
        ctl["type"] = "bric";
        ctl["lambda"] = bric->gains.lambda;
        ctl["kappa"] = bric->gains.kappa;
        ctl["mu_g"] = bric->gains.mu_g;
        ctl["mu_d1"] = bric->gains.mu_d1;
        ctl["mu_d2"] = bric->gains.mu_d2;
        ctl["d1_init"] = bric->d1_init;
        if (bric->d2_init.size() > 0) {
            ctl["d2_init"] = std::vector<double>(bric->d2_init.begin(), bric->d2_init.end());
        }
        root["controller"] = ctl;
        json channels = json::array();
        for (const FunnelChannel& ch : bric->funnel.channels) {
            channels.push_back({{"rate", ch.rate}, {"floor", ch.floor}});
        }
        root["funnel"]["channels"] = channels;
        root["funnel"]["ratio_cap"] = bric->funnel_ratio_cap;
    } else {
        const auto& ppc = std::get<PpcController>(cfg.controller);
        json ctl;
        ctl["type"] = "ppc";
        ctl["lambda"] = ppc.lambda;
        ctl["k_ppc"] = ppc.cfg.k_ppc;
        if (ppc.rho0_auto) {
            ctl["rho0"] = "auto";
        } else {
            ctl["rho0"] = ppc.cfg.rho0;
        }
        ctl["rho_rate"] = ppc.cfg.rho_rate;
        ctl["rho_floor"] = ppc.cfg.rho_floor;
        root["controller"] = ctl;
    }

    root["target"]["x1_d"] =
        std::vector<double>(cfg.target.x1_d.begin(), cfg.target.x1_d.end());
    root["initial"]["x"] = std::vector<double>(cfg.initial.x.begin(), cfg.initial.x.end());
    root["initial"]["z"] = std::vector<double>(cfg.initial.z.begin(), cfg.initial.z.end());

    json sim;
    sim["t_end"] = cfg.sim.t_end;
    sim["h"] = cfg.sim.h;
    sim["record_every"] = cfg.sim.record_every;
    sim["guard_margin"] = cfg.sim.guard_margin;
    sim["max_substep_halvings"] = cfg.sim.max_substep_halvings;
    root["sim"] = sim;

    root["output"]["dir"] = cfg.output.dir;
    root["output"]["prefix"] = cfg.output.prefix;

    return root.dump(2) + "\n";
}

namespace {

// The filtered-error pole is calibrated to 2 for the benchmark presets: it
// reproduces the reference closed-loop behaviour (position error visually at
// zero by 20 s) while keeping comfortable funnel margins. Configs that omit
// lambda still default to 1.
constexpr double kPresetLambda = 2.0;

ExperimentConfig pendulum_base(const std::string& name) {
    ExperimentConfig cfg;
    cfg.name = name;
    cfg.plant.type = "pendulum";

    BricController ctl;
    ctl.gains.lambda = kPresetLambda;
    ctl.funnel.channels = {{0.5, 0.5}, {0.5, 0.5}};
    cfg.controller = ctl;

    cfg.target.x1_d = Eigen::Vector2d(-M_PI / 4.0, M_PI / 4.0);
    cfg.initial.x = Eigen::Vector4d(-1.6, 0.96, 0.0, 0.0);
    cfg.initial.z = Eigen::Vector2d::Zero();
    cfg.output.prefix = name;
    return cfg;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"fig1_bric", "fig1_ppc", "fig2", "fig3_disturbance", "oracle"};
}

bool is_preset(const std::string& name) {
    const auto names = preset_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

ExperimentConfig preset(const std::string& name) {
    if (name == "fig1_bric") {
        return pendulum_base(name);
    }
    if (name == "fig1_ppc") {
        ExperimentConfig cfg = pendulum_base(name);
        PpcController ctl;
        ctl.lambda = kPresetLambda;
        cfg.controller = ctl;
        return cfg;
    }
    if (name == "fig2") {
        // The nominal barrier-integral run again; of interest here are the
        // integrator columns of the trajectory file.
        return pendulum_base(name);
    }
    if (name == "fig3_disturbance") {
        ExperimentConfig cfg = pendulum_base(name);
        cfg.plant.flags.disturbance = true;
        return cfg;
    }
    if (name == "oracle") {
        ExperimentConfig cfg;
        cfg.name = name;
        cfg.plant.type = "double_integrator";
        cfg.plant.f_d = Eigen::Vector2d(1.0, -2.0);
        BricController ctl;
        ctl.funnel.channels = {{0.5, 0.5}, {0.5, 0.5}};
        cfg.controller = ctl;
        cfg.target.x1_d = Eigen::Vector2d::Zero();
        cfg.initial.x = Eigen::Vector4d(5.0, -5.0, 0.0, 0.0);
        cfg.initial.z = Eigen::VectorXd();
        cfg.output.prefix = name;
        return cfg;
    }
    throw std::out_of_range("unknown preset: " + name);
}

std::unique_ptr<PlantModel> make_plant(const ExperimentConfig& cfg) {
    if (cfg.plant.type == "double_integrator") {
        return std::make_unique<DoubleIntegratorPlant>(cfg.plant.f_d);
    }
    if (cfg.plant.type == "pendulum") {
        return std::make_unique<PendulumPlant>(cfg.plant.pendulum, cfg.plant.flags);
    }
    throw std::invalid_argument("unknown plant type: " + cfg.plant.type);
}

}  // namespace bric
