#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qnet/errors.hpp"
#include "qnet/experiment.hpp"

namespace qnet {

using nlohmann::json;

const char* to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::DegreeDist: return "degree-dist";
        case ExperimentKind::ThresholdScaling: return "threshold-scaling";
        case ExperimentKind::LogLogAsymptote: return "loglog-asymptote";
        case ExperimentKind::DynamicsSweep: return "dynamics-sweep";
        case ExperimentKind::MethodCompare: return "method-compare";
        case ExperimentKind::PhotonSweep: return "photon-sweep";
        case ExperimentKind::RadiusSweep: return "radius-sweep";
    }
    return "?";
}

namespace {

ExperimentKind kind_from_string(const std::string& s) {
    if (s == "degree-dist") return ExperimentKind::DegreeDist;
    if (s == "threshold-scaling") return ExperimentKind::ThresholdScaling;
    if (s == "loglog-asymptote") return ExperimentKind::LogLogAsymptote;
    if (s == "dynamics-sweep") return ExperimentKind::DynamicsSweep;
    if (s == "method-compare") return ExperimentKind::MethodCompare;
    if (s == "photon-sweep") return ExperimentKind::PhotonSweep;
    if (s == "radius-sweep") return ExperimentKind::RadiusSweep;
    throw config_error("unknown experiment kind '" + s + "'", "experiment");
}

void check_keys(const json& obj, const std::string& prefix, const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.contains(it.key()))
            throw config_error("unknown config key", prefix + it.key());
}

double get_number(const json& obj, const std::string& prefix, const std::string& key,
                  double fallback, bool required = false) {
    if (!obj.contains(key)) {
        if (required) throw config_error("missing required key", prefix + key);
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) throw config_error("expected a number", prefix + key);
    return v.get<double>();
}

long long get_integer(const json& obj, const std::string& prefix, const std::string& key,
                      long long fallback, bool required = false) {
    if (!obj.contains(key)) {
        if (required) throw config_error("missing required key", prefix + key);
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw config_error("expected an integer", prefix + key);
    return v.get<long long>();
}

std::string get_string(const json& obj, const std::string& prefix, const std::string& key,
                       const std::string& fallback, bool required = false) {
    if (!obj.contains(key)) {
        if (required) throw config_error("missing required key", prefix + key);
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_string()) throw config_error("expected a string", prefix + key);
    return v.get<std::string>();
}

template <typename T>
std::vector<T> get_array(const json& obj, const std::string& prefix, const std::string& key,
                         bool integers) {
    std::vector<T> out;
    if (!obj.contains(key)) return out;
    const json& v = obj.at(key);
    if (!v.is_array()) throw config_error("expected an array", prefix + key);
    for (const json& item : v) {
        if (integers ? !item.is_number_integer() : !item.is_number())
            throw config_error(integers ? "expected integer array entries"
                                        : "expected numeric array entries",
                               prefix + key);
        out.push_back(item.get<T>());
    }
    return out;
}

std::size_t line_of_offset(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

} // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw config_error("config parse error at line " +
                           std::to_string(line_of_offset(text, e.byte)) + ": " + e.what());
    }
    if (!root.is_object()) throw config_error("config root must be a JSON object");

    check_keys(root, "",
               {"experiment", "geo", "photonic", "epidemic", "n_values", "delta_ratios",
                "ensemble_size", "inner_samples", "master_seed", "output_dir", "n_runs", "t_max",
                "t_max_direct", "conv_tol", "np_values", "gamma_values", "r_max_values",
                "fit_points"});

    ExperimentConfig cfg;
    cfg.experiment = kind_from_string(get_string(root, "", "experiment", "", true));

    if (!root.contains("geo")) throw config_error("missing required key", "geo");
    const json& geo = root.at("geo");
    if (!geo.is_object()) throw config_error("expected an object", "geo");
    check_keys(geo, "geo.", {"r_max", "alpha_l", "beta_l", "n_nodes"});
    cfg.geo.r_max = get_number(geo, "geo.", "r_max", cfg.geo.r_max);
    cfg.geo.alpha_l = get_number(geo, "geo.", "alpha_l", cfg.geo.alpha_l);
    cfg.geo.beta_l = get_number(geo, "geo.", "beta_l", cfg.geo.beta_l);
    cfg.geo.n_nodes = static_cast<int>(get_integer(geo, "geo.", "n_nodes", cfg.geo.n_nodes));

    if (!root.contains("photonic")) throw config_error("missing required key", "photonic");
    const json& ph = root.at("photonic");
    if (!ph.is_object()) throw config_error("expected an object", "photonic");
    check_keys(ph, "photonic.", {"gamma", "n_photons"});
    cfg.photonic.gamma = get_number(ph, "photonic.", "gamma", cfg.photonic.gamma);
    cfg.photonic.n_photons = get_integer(ph, "photonic.", "n_photons", cfg.photonic.n_photons);

    if (root.contains("epidemic")) {
        const json& ep = root.at("epidemic");
        if (!ep.is_object()) throw config_error("expected an object", "epidemic");
        check_keys(ep, "epidemic.", {"beta", "delta", "initial_infection"});
        cfg.epidemic.beta = get_number(ep, "epidemic.", "beta", cfg.epidemic.beta);
        cfg.epidemic.delta = get_number(ep, "epidemic.", "delta", cfg.epidemic.delta);
        cfg.epidemic.initial_infection =
            get_number(ep, "epidemic.", "initial_infection", cfg.epidemic.initial_infection);
    }

    cfg.n_values = get_array<int>(root, "", "n_values", true);
    cfg.delta_ratios = get_array<double>(root, "", "delta_ratios", false);
    cfg.ensemble_size =
        static_cast<int>(get_integer(root, "", "ensemble_size", cfg.ensemble_size, true));
    cfg.inner_samples = static_cast<int>(get_integer(root, "", "inner_samples", cfg.inner_samples));
    long long seed = get_integer(root, "", "master_seed", 0, true);
    cfg.master_seed = static_cast<std::uint64_t>(seed);
    cfg.output_dir = get_string(root, "", "output_dir", cfg.output_dir, true);

    cfg.n_runs = static_cast<int>(get_integer(root, "", "n_runs", cfg.n_runs));
    cfg.t_max = static_cast<int>(get_integer(root, "", "t_max", cfg.t_max));
    cfg.t_max_direct = static_cast<int>(get_integer(root, "", "t_max_direct", cfg.t_max_direct));
    cfg.conv_tol = get_number(root, "", "conv_tol", cfg.conv_tol);
    cfg.np_values = get_array<long long>(root, "", "np_values", true);
    cfg.gamma_values = get_array<double>(root, "", "gamma_values", false);
    cfg.r_max_values = get_array<double>(root, "", "r_max_values", false);
    cfg.fit_points = static_cast<int>(get_integer(root, "", "fit_points", cfg.fit_points));

    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string ExperimentConfig::to_json_text() const {
    json root;
    root["experiment"] = to_string(experiment);
    root["geo"] = {{"r_max", geo.r_max},
                   {"alpha_l", geo.alpha_l},
                   {"beta_l", geo.beta_l},
                   {"n_nodes", geo.n_nodes}};
    root["photonic"] = {{"gamma", photonic.gamma}, {"n_photons", photonic.n_photons}};
    root["epidemic"] = {{"beta", epidemic.beta},
                        {"delta", epidemic.delta},
                        {"initial_infection", epidemic.initial_infection}};
    root["n_values"] = n_values;
    root["delta_ratios"] = delta_ratios;
    root["ensemble_size"] = ensemble_size;
    root["inner_samples"] = inner_samples;
    root["master_seed"] = master_seed;
    root["output_dir"] = output_dir;
    root["n_runs"] = n_runs;
    root["t_max"] = t_max;
    root["t_max_direct"] = t_max_direct;
    root["conv_tol"] = conv_tol;
    root["np_values"] = np_values;
    root["gamma_values"] = gamma_values;
    root["r_max_values"] = r_max_values;
    root["fit_points"] = fit_points;
    return root.dump(2) + "\n";
}

void ExperimentConfig::validate() const {
    try {
        geo.validate();
        photonic.validate();
        epidemic.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }
    if (ensemble_size < 1) throw config_error("must be >= 1", "ensemble_size");
    if (inner_samples < 1) throw config_error("must be >= 1", "inner_samples");
    if (n_runs < 1) throw config_error("must be >= 1", "n_runs");
    if (t_max < 1) throw config_error("must be >= 1", "t_max");
    if (t_max_direct < 1) throw config_error("must be >= 1", "t_max_direct");
    if (!(conv_tol > 0.0)) throw config_error("must be positive", "conv_tol");
    if (fit_points < 3) throw config_error("must be >= 3", "fit_points");
    if (output_dir.empty()) throw config_error("must be nonempty", "output_dir");

    for (int n : n_values)
        if (n < 1) throw config_error("entries must be >= 1", "n_values");
    for (double r : delta_ratios)
        if (!(r >= 0.0)) throw config_error("entries must be >= 0", "delta_ratios");
    for (long long np : np_values)
        if (np < 1) throw config_error("entries must be >= 1", "np_values");
    for (double g : gamma_values)
        if (!(g >= 0.0)) throw config_error("entries must be >= 0", "gamma_values");
    for (double r : r_max_values)
        if (!(r > 0.0)) throw config_error("entries must be positive", "r_max_values");

    const bool sweeps_n = experiment == ExperimentKind::DegreeDist ||
                          experiment == ExperimentKind::ThresholdScaling ||
                          experiment == ExperimentKind::LogLogAsymptote ||
                          experiment == ExperimentKind::MethodCompare ||
                          experiment == ExperimentKind::PhotonSweep;
    if (sweeps_n && n_values.empty())
        throw config_error("this experiment needs a nonempty sweep list", "n_values");
    if (experiment == ExperimentKind::DynamicsSweep && delta_ratios.empty())
        throw config_error("dynamics sweep needs a nonempty sweep list", "delta_ratios");
    if (experiment == ExperimentKind::RadiusSweep && r_max_values.empty())
        throw config_error("radius sweep needs a nonempty sweep list", "r_max_values");
}

} // namespace qnet
