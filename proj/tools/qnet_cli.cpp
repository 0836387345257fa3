#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qnet/degree.hpp"
#include "qnet/dynamics.hpp"
#include "qnet/errors.hpp"
#include "qnet/experiment.hpp"
#include "qnet/format.hpp"
#include "qnet/graph.hpp"
#include "qnet/graph_io.hpp"
#include "qnet/photonic.hpp"
#include "qnet/rng.hpp"
#include "qnet/spectral.hpp"
#include "qnet/version.hpp"

namespace {

// Exit code contract: 0 success, 1 I/O, 2 usage/config, 3 degenerate input,
// 4 capability exceeded.
enum ExitCode { kOk = 0, kIoError = 1, kUsage = 2, kDegenerate = 3, kCapability = 4 };

std::string resolve_output(const std::string& path) {
    const char* base = std::getenv("QNET_OUTPUT_DIR");
    if (base == nullptr || *base == '\0') return path;
    std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(base) / p).string();
}

struct GeneratorFlags {
    std::string model = "waxman";
    int n = 0;
    double p = 0.0;
    qnet::GeoParams geo;
    qnet::PhotonicParams photonic;
    std::uint64_t seed = 0;

    void add_to(CLI::App* cmd, bool require_model) {
        auto* model_opt = cmd->add_option("--model", model, "er | waxman | quantum-waxman")
                              ->check(CLI::IsMember({"er", "waxman", "quantum-waxman"}));
        if (require_model) model_opt->required();
        cmd->add_option("--n", n, "number of nodes");
        cmd->add_option("--p", p, "ER edge probability");
        cmd->add_option("--r-max", geo.r_max, "disk radius in km (waxman)");
        cmd->add_option("--alpha-l", geo.alpha_l, "link-length scale in km (waxman)");
        cmd->add_option("--beta-l", geo.beta_l, "edge probability scale (waxman)");
        cmd->add_option("--gamma", photonic.gamma, "fiber attenuation in dB/km");
        cmd->add_option("--n-photons", photonic.n_photons, "photons per attempt");
        cmd->add_option("--seed", seed, "RNG seed");
    }

    // Builds the requested graph; quantum-waxman returns the pAM weights.
    std::pair<qnet::WeightedAdjacency, std::vector<qnet::Point>> build() const {
        if (model == "er") {
            if (n < 1) throw std::invalid_argument("--n is required for --model er");
            qnet::SpatialGraph g = qnet::generate_er(n, p, seed);
            return {g.adjacency(), g.positions()};
        }
        qnet::GeoParams g = geo;
        if (n >= 1) g.n_nodes = n;
        qnet::SpatialGraph graph = qnet::generate_waxman(g, seed);
        if (model == "quantum-waxman")
            return {qnet::apply_quantum_weights(graph, photonic), graph.positions()};
        return {graph.adjacency(), graph.positions()};
    }
};

int cmd_generate(const GeneratorFlags& flags, const std::string& out) {
    auto [weights, positions] = flags.build();
    qnet::save_graph(weights, positions, resolve_output(out));
    qnet::DegreeStats stats = qnet::degree_stats(weights);
    std::cout << "nodes: " << weights.size() << "\n";
    std::cout << "edges: " << weights.edge_count() << "\n";
    std::cout << "mean_degree: " << qnet::format_double(stats.mean_degree) << "\n";
    std::cout << "file: " << resolve_output(out) << "\n";
    return kOk;
}

void print_threshold(const qnet::ThresholdEstimate& t) {
    std::cout << "tau_" << qnet::to_string(t.estimator) << ": "
              << qnet::format_double(t.value) << "\n";
}

int cmd_threshold(const GeneratorFlags& flags, const std::string& graph_path,
                  const std::string& estimator, bool ensemble, int method_id, int outer,
                  int inner, const std::string& csv) {
    if (ensemble) {
        qnet::GeoParams geo = flags.geo;
        if (flags.n >= 1) geo.n_nodes = flags.n;
        auto method = static_cast<qnet::SamplingMethod>(method_id);
        qnet::ThresholdEstimate est = qnet::ensemble_threshold(geo, flags.photonic, method,
                                                               outer, inner, flags.seed);
        std::cout << "estimator: " << qnet::to_string(est.estimator) << "\n";
        std::cout << "method: " << qnet::to_string(*est.method) << "\n";
        std::cout << "mean_tau: " << qnet::format_double(est.ensemble_mean) << "\n";
        std::cout << "std_tau: " << qnet::format_double(est.ensemble_std) << "\n";
        std::cout << "n_instances: " << est.n_instances << "\n";
        std::cout << "n_excluded: " << est.n_excluded << "\n";
        if (!csv.empty()) {
            std::ofstream out(resolve_output(csv), std::ios::binary);
            if (!out) throw qnet::io_error("cannot open '" + csv + "' for writing");
            out << "N,method,estimator,mean_tau,std_tau,n_instances,n_excluded\n";
            out << geo.n_nodes << ',' << qnet::to_string(*est.method) << ','
                << qnet::to_string(est.estimator) << ',' << qnet::format_double(est.ensemble_mean)
                << ',' << qnet::format_double(est.ensemble_std) << ',' << est.n_instances << ','
                << est.n_excluded << '\n';
            std::cout << "file: " << resolve_output(csv) << "\n";
        }
        return kOk;
    }

    qnet::WeightedAdjacency weights(0, qnet::WeightKind::BinaryClassical);
    if (!graph_path.empty()) {
        weights = qnet::load_graph(graph_path).weights;
    } else {
        weights = flags.build().first;
    }

    qnet::DegreeStats stats = qnet::degree_stats(weights);
    if (estimator == "kw" || estimator == "all") print_threshold(qnet::tau_kw(stats));
    if (estimator == "mfa" || estimator == "all") print_threshold(qnet::tau_mfa(stats));
    if (estimator == "am" || estimator == "all") print_threshold(qnet::tau_spectral(weights));
    return kOk;
}

int cmd_simulate(const std::string& graph_path, const std::string& method, double beta,
                 std::optional<double> delta, std::optional<double> delta_ratio, double p0,
                 int t_max, double conv_tol, int runs, std::uint64_t seed,
                 const std::string& out_path) {
    qnet::StoredGraph stored = qnet::load_graph(graph_path);
    const qnet::WeightedAdjacency& weights = stored.weights;

    qnet::EpidemicParams params;
    params.beta = beta;
    params.initial_infection = p0;
    if (delta_ratio) {
        qnet::SpectralResult sr = qnet::largest_eigenvalue(weights);
        if (!(sr.lambda1 > 0.0))
            throw qnet::degenerate_graph_error("delta-ratio needs a graph with lambda_1 > 0");
        params.delta = std::min(1.0, *delta_ratio * beta * sr.lambda1);
    } else {
        params.delta = delta.value_or(0.0);
    }

    qnet::InfectionTrajectory traj;
    if (method == "mnlds") {
        traj = qnet::run_mnlds(weights, params, t_max, conv_tol);
    } else if (method == "direct") {
        traj = qnet::run_direct_sim(weights, params, t_max, runs, seed);
    } else if (method == "kw") {
        qnet::DegreeStats stats = qnet::degree_stats(weights);
        if (!(stats.mean_degree > 0.0))
            throw qnet::degenerate_graph_error("KW simulation needs mean degree > 0");
        std::vector<double> grid(static_cast<std::size_t>(t_max) + 1);
        for (std::size_t t = 0; t < grid.size(); ++t) grid[t] = static_cast<double>(t);
        traj = qnet::kw_solution(params, stats.mean_degree, p0, grid);
    } else { // exact
        traj = qnet::exact_markov_expectation(weights, params,
                                              params.initial_probs(weights.size()), t_max);
    }

    if (!out_path.empty()) {
        std::string resolved = resolve_output(out_path);
        std::ofstream out(resolved, std::ios::binary);
        if (!out) throw qnet::io_error("cannot open '" + resolved + "' for writing");
        out << "t,eta_mean,eta_std,method\n";
        for (std::size_t t = 0; t < traj.eta.size(); ++t) {
            double sd = t < traj.eta_std.size() ? traj.eta_std[t] : 0.0;
            out << t << ',' << qnet::format_double(traj.eta[t]) << ','
                << qnet::format_double(sd) << ',' << method << '\n';
        }
        std::cout << "file: " << resolved << "\n";
    }

    std::cout << "eta0: " << qnet::format_double(traj.eta.front()) << "\n";
    std::cout << "eta_final: " << qnet::format_double(traj.eta_final) << "\n";
    std::cout << "steps: " << traj.steps << "\n";
    std::cout << "converged: " << (traj.converged ? "yes" : "no") << "\n";
    std::cout << "delta: " << qnet::format_double(params.delta) << "\n";
    return kOk;
}

int cmd_experiment(const std::string& config_path, int workers,
                   const std::string& output_override) {
    qnet::ExperimentConfig cfg = qnet::ExperimentConfig::from_json_file(config_path);
    if (!output_override.empty()) cfg.output_dir = output_override;
    cfg.output_dir = resolve_output(cfg.output_dir);
    qnet::ExperimentReport report = qnet::run_experiment(cfg, workers);
    std::cout << "experiment: " << qnet::to_string(report.kind) << "\n";
    std::cout << "wall_seconds: " << qnet::format_double(report.wall_seconds) << "\n";
    for (const auto& fit : report.fits) {
        std::cout << "fit model=" << fit.model << " estimator=" << fit.estimator
                  << " c=" << qnet::format_double(fit.fit.c)
                  << " c_err=" << qnet::format_double(fit.fit.c_err);
        if (fit.fit.slope) std::cout << " slope=" << qnet::format_double(*fit.fit.slope);
        std::cout << "\n";
    }
    for (const auto& file : report.output_files) std::cout << "wrote: " << file << "\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"epidemic spreading on classical and photonic quantum networks"};
    app.set_version_flag("--version", qnet::kVersion);
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "generate a graph file");
    GeneratorFlags gen_flags;
    gen_flags.add_to(generate, true);
    std::string gen_out;
    generate->add_option("--out", gen_out, "output graph file")->required();

    // threshold
    auto* threshold = app.add_subcommand("threshold", "compute epidemic thresholds");
    GeneratorFlags thr_flags;
    thr_flags.add_to(threshold, false);
    std::string thr_graph, thr_estimator = "all", thr_csv;
    bool thr_ensemble = false;
    int thr_method = 2, thr_outer = 1, thr_inner = 1;
    threshold->add_option("--graph", thr_graph, "graph file to analyze");
    threshold->add_option("--estimator", thr_estimator, "kw | mfa | am | all")
        ->check(CLI::IsMember({"kw", "mfa", "am", "all"}));
    threshold->add_flag("--ensemble", thr_ensemble, "quantum Waxman ensemble statistics");
    threshold->add_option("--method", thr_method, "disorder method 1 | 2 | 3")
        ->check(CLI::Range(1, 3));
    threshold->add_option("--outer", thr_outer, "outer instances");
    threshold->add_option("--inner", thr_inner, "inner link samples (method 3)");
    threshold->add_option("--csv", thr_csv, "write ensemble CSV here");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run infection dynamics");
    std::string sim_graph, sim_method, sim_out;
    double sim_beta = 0.05, sim_p0 = 0.5, sim_conv_tol = 1e-8;
    std::optional<double> sim_delta, sim_ratio;
    int sim_tmax = 10000, sim_runs = 20;
    std::uint64_t sim_seed = 0;
    simulate->add_option("--graph", sim_graph, "graph file")->required();
    simulate->add_option("--method", sim_method, "mnlds | direct | kw | exact")
        ->required()
        ->check(CLI::IsMember({"mnlds", "direct", "kw", "exact"}));
    simulate->add_option("--beta", sim_beta, "infection rate");
    auto* delta_opt = simulate->add_option("--delta", sim_delta, "curing rate");
    auto* ratio_opt =
        simulate->add_option("--delta-ratio", sim_ratio, "curing rate in units of delta_c");
    delta_opt->excludes(ratio_opt);
    ratio_opt->excludes(delta_opt);
    simulate->add_option("--p0", sim_p0, "initial infection probability");
    simulate->add_option("--t-max", sim_tmax, "step budget");
    simulate->add_option("--conv-tol", sim_conv_tol, "mNLDS convergence tolerance");
    simulate->add_option("--runs", sim_runs, "direct-simulation runs");
    simulate->add_option("--seed", sim_seed, "RNG seed");
    simulate->add_option("--out", sim_out, "trajectory CSV path");

    // experiment
    auto* experiment = app.add_subcommand("experiment", "run a configured pipeline");
    std::string exp_config, exp_output;
    int exp_workers = 1;
    experiment->add_option("config", exp_config, "experiment config (JSON)")->required();
    experiment->add_option("--workers", exp_workers, "worker pool size")->check(CLI::Range(1, 256));
    experiment->add_option("--output-dir", exp_output, "override config output_dir");

    // validate-config
    auto* validate = app.add_subcommand("validate-config", "check a config file");
    std::string val_config;
    validate->add_option("config", val_config, "experiment config (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e); // prints message; 0 for --help/--version
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (generate->parsed()) return cmd_generate(gen_flags, gen_out);
        if (threshold->parsed())
            return cmd_threshold(thr_flags, thr_graph, thr_estimator, thr_ensemble, thr_method,
                                 thr_outer, thr_inner, thr_csv);
        if (simulate->parsed())
            return cmd_simulate(sim_graph, sim_method, sim_beta, sim_delta, sim_ratio, sim_p0,
                                sim_tmax, sim_conv_tol, sim_runs, sim_seed, sim_out);
        if (experiment->parsed()) return cmd_experiment(exp_config, exp_workers, exp_output);
        if (validate->parsed()) {
            qnet::ExperimentConfig::from_json_file(val_config);
            std::cout << "config ok\n";
            return kOk;
        }
    } catch (const qnet::degenerate_graph_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDegenerate;
    } catch (const qnet::too_large_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCapability;
    } catch (const qnet::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const qnet::malformed_file_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const qnet::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const qnet::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    }
    return kUsage;
}
