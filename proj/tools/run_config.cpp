#include "run_config.hpp"

#include <iostream>
#include <sstream>

#include "omsim/io.hpp"

namespace omsim::cli {

using nlohmann::json;

RunMode parse_mode(const std::string& s) {
    if (s == "point") return RunMode::Point;
    if (s == "sweep") return RunMode::Sweep;
    if (s == "threshold") return RunMode::Threshold;
    if (s == "robustness") return RunMode::Robustness;
    if (s == "oracle") return RunMode::Oracle;
    throw ConfigError("mode: expected one of point|sweep|threshold|robustness|oracle, got \"" + s + "\"");
}

const char* mode_name(RunMode m) {
    switch (m) {
        case RunMode::Point: return "point";
        case RunMode::Sweep: return "sweep";
        case RunMode::Threshold: return "threshold";
        case RunMode::Robustness: return "robustness";
        case RunMode::Oracle: return "oracle";
    }
    return "?";
}

BipartitionPair parse_bipartition(const std::string& s) {
    if (s == "om") return BipartitionPair::OpticalMechanical;
    if (s == "oa") return BipartitionPair::OpticalAcoustic;
    if (s == "ma") return BipartitionPair::MechanicalAcoustic;
    throw ConfigError("bipartition: expected om|oa|ma, got \"" + s + "\"");
}

namespace {

const json& require_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    return j;
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) { known = true; break; }
        }
        if (!known) throw ConfigError(where + ": unknown key \"" + key + "\"");
    }
}

double get_number(const json& obj, const std::string& where, const char* key,
                  double fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number()) {
        throw ConfigError(where + "." + key + ": expected a number");
    }
    return it->get<double>();
}

int get_int(const json& obj, const std::string& where, const char* key,
            int fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number_integer()) {
        throw ConfigError(where + "." + key + ": expected an integer");
    }
    return it->get<int>();
}

std::string get_string(const json& obj, const std::string& where, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
        throw ConfigError(where + "." + key + ": expected a string");
    }
    return it->get<std::string>();
}

SystemParams parse_system_params(const json& j) {
    require_object(j, "params");
    reject_unknown(j, "params",
                   {"omega_m", "kappa", "gamma_m", "gamma_a", "delta_tilde",
                    "delta_a", "G_m", "G_a", "J_m", "theta", "n_th",
                    "omega_m_over_2pi_hz"});
    SystemParams p;
    p.omega_m = get_number(j, "params", "omega_m", p.omega_m);
    p.kappa = get_number(j, "params", "kappa", p.kappa);
    p.gamma_m = get_number(j, "params", "gamma_m", p.gamma_m);
    p.gamma_a = get_number(j, "params", "gamma_a", p.gamma_a);
    p.delta_tilde = get_number(j, "params", "delta_tilde", p.delta_tilde);
    p.delta_a = get_number(j, "params", "delta_a", p.delta_a);
    p.G_m = get_number(j, "params", "G_m", p.G_m);
    p.G_a = get_number(j, "params", "G_a", p.G_a);
    p.J_m = get_number(j, "params", "J_m", p.J_m);
    p.theta = get_number(j, "params", "theta", p.theta);
    p.n_th = get_number(j, "params", "n_th", p.n_th);
    p.omega_m_over_2pi_hz =
        get_number(j, "params", "omega_m_over_2pi_hz", p.omega_m_over_2pi_hz);
    p.validate();
    return p;
}

RawParams parse_raw_params(const json& j) {
    require_object(j, "raw_params");
    reject_unknown(j, "raw_params",
                   {"g_m", "g_a", "E_1", "E_2", "delta_1", "delta_2", "kappa_2",
                    "omega_m", "omega_a", "kappa", "gamma_m", "gamma_a",
                    "delta_a", "J_m", "theta", "n_th"});
    RawParams r;
    r.g_m = get_number(j, "raw_params", "g_m", r.g_m);
    r.g_a = get_number(j, "raw_params", "g_a", r.g_a);
    r.E_1 = get_number(j, "raw_params", "E_1", r.E_1);
    r.E_2 = get_number(j, "raw_params", "E_2", r.E_2);
    r.delta_1 = get_number(j, "raw_params", "delta_1", r.delta_1);
    r.delta_2 = get_number(j, "raw_params", "delta_2", r.delta_2);
    r.kappa_2 = get_number(j, "raw_params", "kappa_2", r.kappa_2);
    r.omega_m = get_number(j, "raw_params", "omega_m", r.omega_m);
    r.omega_a = get_number(j, "raw_params", "omega_a", r.omega_a);
    r.kappa = get_number(j, "raw_params", "kappa", r.kappa);
    r.gamma_m = get_number(j, "raw_params", "gamma_m", r.gamma_m);
    r.gamma_a = get_number(j, "raw_params", "gamma_a", r.gamma_a);
    r.delta_a = get_number(j, "raw_params", "delta_a", r.delta_a);
    r.J_m = get_number(j, "raw_params", "J_m", r.J_m);
    r.theta = get_number(j, "raw_params", "theta", r.theta);
    r.n_th = get_number(j, "raw_params", "n_th", r.n_th);
    r.validate();
    return r;
}

std::vector<SweepAxis> parse_axes(const json& j) {
    if (!j.is_array() || j.empty() || j.size() > 2) {
        throw ConfigError("axes: expected an array of 1 or 2 axis objects");
    }
    std::vector<SweepAxis> axes;
    for (const auto& item : j) {
        require_object(item, "axes[]");
        reject_unknown(item, "axes[]", {"param", "min", "max", "steps"});
        SweepAxis ax;
        ax.param = get_string(item, "axes[]", "param");
        ax.min = get_number(item, "axes[]", "min",
                            std::numeric_limits<double>::quiet_NaN());
        ax.max = get_number(item, "axes[]", "max",
                            std::numeric_limits<double>::quiet_NaN());
        ax.steps = get_int(item, "axes[]", "steps", 0);
        ax.validate();
        axes.push_back(ax);
    }
    return axes;
}

ThresholdSpec parse_threshold(const json& j) {
    require_object(j, "threshold");
    reject_unknown(j, "threshold", {"param", "lo", "hi"});
    ThresholdSpec t;
    t.param = get_string(j, "threshold", "param");
    param_field(t.param);
    t.lo = get_number(j, "threshold", "lo",
                      std::numeric_limits<double>::quiet_NaN());
    t.hi = get_number(j, "threshold", "hi",
                      std::numeric_limits<double>::quiet_NaN());
    if (!(t.lo < t.hi)) throw ConfigError("threshold: requires lo < hi");
    return t;
}

RobustnessSpec parse_robustness(const json& j) {
    require_object(j, "robustness");
    reject_unknown(j, "robustness", {"n_th_min", "n_th_max", "steps", "J_m_values"});
    RobustnessSpec r;
    r.n_th_min = get_number(j, "robustness", "n_th_min",
                            std::numeric_limits<double>::quiet_NaN());
    r.n_th_max = get_number(j, "robustness", "n_th_max",
                            std::numeric_limits<double>::quiet_NaN());
    r.steps = get_int(j, "robustness", "steps", 0);
    if (!(r.n_th_min < r.n_th_max) || r.steps < 2) {
        throw ConfigError("robustness: requires n_th_min < n_th_max and steps >= 2");
    }
    const auto it = j.find("J_m_values");
    if (it == j.end() || !it->is_array() || it->empty()) {
        throw ConfigError("robustness.J_m_values: expected a non-empty array");
    }
    for (const auto& v : *it) {
        if (!v.is_number()) throw ConfigError("robustness.J_m_values: expected numbers");
        r.j_m_values.push_back(v.get<double>());
    }
    return r;
}

OracleConfig parse_oracle(const json& j) {
    require_object(j, "oracle");
    reject_unknown(j, "oracle",
                   {"n_traj", "dt", "t_burn", "t_sample", "seed", "threads"});
    OracleConfig o;
    o.n_traj = get_int(j, "oracle", "n_traj", o.n_traj);
    o.dt = get_number(j, "oracle", "dt", o.dt);
    o.t_burn = get_number(j, "oracle", "t_burn", o.t_burn);
    o.t_sample = get_number(j, "oracle", "t_sample", o.t_sample);
    const auto sit = j.find("seed");
    if (sit != j.end()) {
        if (!sit->is_number_unsigned() && !sit->is_number_integer()) {
            throw ConfigError("oracle.seed: expected a non-negative integer");
        }
        o.seed = sit->get<std::uint64_t>();
    }
    o.threads = get_int(j, "oracle", "threads", o.threads);
    return o;
}

void require_section(const json& doc, const char* key, RunMode mode) {
    if (!doc.contains(key)) {
        throw ConfigError(std::string(key) + ": required for mode \"" +
                          mode_name(mode) + "\"");
    }
}

void forbid_section(const json& doc, const char* key, RunMode mode) {
    if (doc.contains(key)) {
        throw ConfigError(std::string(key) + ": not valid for mode \"" +
                          mode_name(mode) + "\"");
    }
}

} // namespace

RunConfig parse_config(const json& doc) {
    require_object(doc, "config");
    reject_unknown(doc, "config",
                   {"mode", "params", "raw_params", "axes", "threshold",
                    "robustness", "oracle", "out", "bipartition", "threads"});

    RunConfig cfg;
    cfg.mode = parse_mode(get_string(doc, "config", "mode"));

    const bool has_params = doc.contains("params");
    const bool has_raw = doc.contains("raw_params");
    if (has_params == has_raw) {
        throw ConfigError("params: exactly one of params/raw_params is required");
    }
    if (has_params) {
        cfg.params = parse_system_params(doc.at("params"));
    } else {
        cfg.raw = parse_raw_params(doc.at("raw_params"));
    }

    if (cfg.mode == RunMode::Sweep) {
        require_section(doc, "axes", cfg.mode);
        cfg.axes = parse_axes(doc.at("axes"));
    } else {
        forbid_section(doc, "axes", cfg.mode);
    }
    if (cfg.mode == RunMode::Threshold) {
        require_section(doc, "threshold", cfg.mode);
        cfg.threshold = parse_threshold(doc.at("threshold"));
    } else {
        forbid_section(doc, "threshold", cfg.mode);
    }
    if (cfg.mode == RunMode::Robustness) {
        require_section(doc, "robustness", cfg.mode);
        cfg.robustness = parse_robustness(doc.at("robustness"));
    } else {
        forbid_section(doc, "robustness", cfg.mode);
    }
    if (cfg.mode == RunMode::Oracle) {
        if (doc.contains("oracle")) cfg.oracle = parse_oracle(doc.at("oracle"));
    } else {
        forbid_section(doc, "oracle", cfg.mode);
    }

    if (doc.contains("out")) cfg.out = get_string(doc, "config", "out");
    if (doc.contains("bipartition")) {
        cfg.pair = parse_bipartition(get_string(doc, "config", "bipartition"));
    }
    cfg.threads = get_int(doc, "config", "threads", cfg.threads);
    if (cfg.threads < 1) throw ConfigError("threads: must be >= 1");
    return cfg;
}

RunConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return parse_config(doc);
}

json to_json(const RunConfig& cfg) {
    json doc;
    doc["mode"] = mode_name(cfg.mode);
    if (cfg.raw) {
        const RawParams& r = *cfg.raw;
        doc["raw_params"] = {
            {"g_m", r.g_m},       {"g_a", r.g_a},         {"E_1", r.E_1},
            {"E_2", r.E_2},       {"delta_1", r.delta_1}, {"delta_2", r.delta_2},
            {"kappa_2", r.kappa_2}, {"omega_m", r.omega_m}, {"omega_a", r.omega_a},
            {"kappa", r.kappa},   {"gamma_m", r.gamma_m}, {"gamma_a", r.gamma_a},
            {"delta_a", r.delta_a}, {"J_m", r.J_m},       {"theta", r.theta},
            {"n_th", r.n_th}};
    } else {
        const SystemParams& p = cfg.params;
        doc["params"] = {
            {"omega_m", p.omega_m},       {"kappa", p.kappa},
            {"gamma_m", p.gamma_m},       {"gamma_a", p.gamma_a},
            {"delta_tilde", p.delta_tilde}, {"delta_a", p.delta_a},
            {"G_m", p.G_m},               {"G_a", p.G_a},
            {"J_m", p.J_m},               {"theta", p.theta},
            {"n_th", p.n_th},
            {"omega_m_over_2pi_hz", p.omega_m_over_2pi_hz}};
    }
    if (cfg.mode == RunMode::Sweep) {
        doc["axes"] = json::array();
        for (const SweepAxis& ax : cfg.axes) {
            doc["axes"].push_back({{"param", ax.param},
                                   {"min", ax.min},
                                   {"max", ax.max},
                                   {"steps", ax.steps}});
        }
    }
    if (cfg.mode == RunMode::Threshold && cfg.threshold) {
        doc["threshold"] = {{"param", cfg.threshold->param},
                            {"lo", cfg.threshold->lo},
                            {"hi", cfg.threshold->hi}};
    }
    if (cfg.mode == RunMode::Robustness && cfg.robustness) {
        doc["robustness"] = {{"n_th_min", cfg.robustness->n_th_min},
                             {"n_th_max", cfg.robustness->n_th_max},
                             {"steps", cfg.robustness->steps},
                             {"J_m_values", cfg.robustness->j_m_values}};
    }
    if (cfg.mode == RunMode::Oracle) {
        doc["oracle"] = {{"n_traj", cfg.oracle.n_traj},
                         {"dt", cfg.oracle.dt},
                         {"t_burn", cfg.oracle.t_burn},
                         {"t_sample", cfg.oracle.t_sample},
                         {"seed", cfg.oracle.seed},
                         {"threads", cfg.oracle.threads}};
    }
    if (!cfg.out.empty()) doc["out"] = cfg.out;
    const char* pair_code =
        cfg.pair == BipartitionPair::OpticalMechanical
            ? "om"
            : (cfg.pair == BipartitionPair::OpticalAcoustic ? "oa" : "ma");
    doc["bipartition"] = pair_code;
    doc["threads"] = cfg.threads;
    return doc;
}

namespace {

void emit(const RunConfig& cfg, const std::string& contents) {
    if (cfg.out.empty()) {
        std::cout << contents;
    } else {
        atomic_write_file(cfg.out, contents);
    }
}

int dispatch(const RunConfig& cfg) {
    SystemParams p = cfg.params;
    if (cfg.raw) {
        const MeanFields mf = solve_mean_fields(*cfg.raw);
        p = effective_params(*cfg.raw, mf);
    }

    std::ostringstream os;
    switch (cfg.mode) {
        case RunMode::Point: {
            const LinearModel model = build_linear_model(p);
            const StabilityReport stab = check_stability(model.A);
            const CovarianceMatrix cov = solve_steady_lyapunov(model.A, model.D);
            write_point_report(os, p, stab, cov, full_report(cov, stab));
            break;
        }
        case RunMode::Sweep: {
            write_sweep_csv(os, sweep(p, cfg.axes, cfg.threads));
            break;
        }
        case RunMode::Threshold: {
            const double x = find_threshold(p, cfg.threshold->param,
                                            cfg.threshold->lo, cfg.threshold->hi,
                                            cfg.pair);
            os << "param,threshold\n"
               << cfg.threshold->param << ',' << format_value(x) << '\n';
            break;
        }
        case RunMode::Robustness: {
            write_robustness_csv(
                os, robustness_scan(p, cfg.robustness->n_th_min,
                                    cfg.robustness->n_th_max, cfg.robustness->steps,
                                    cfg.robustness->j_m_values, cfg.pair));
            break;
        }
        case RunMode::Oracle: {
            OracleConfig oc = cfg.oracle;
            write_oracle_csv(os, estimate_covariance(build_linear_model(p), oc));
            break;
        }
    }
    emit(cfg, os.str());
    return 0;
}

} // namespace

int run(const RunConfig& cfg) {
    try {
        return dispatch(cfg);
    } catch (const InvalidParameter& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const UnstableSystem& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const SingularSystem& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const NonConvergence& e) {
        std::cerr << "error: " << e.what()
                  << " (residual " << e.residual() << ")\n";
        return 3;
    } catch (const NoSignChange& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const NonPhysicalInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}

} // namespace omsim::cli
