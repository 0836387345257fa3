#include "qnet/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>

#include "qnet/degree.hpp"
#include "qnet/errors.hpp"
#include "qnet/format.hpp"
#include "qnet/graph_io.hpp"
#include "qnet/parallel.hpp"
#include "qnet/photonic.hpp"
#include "qnet/rng.hpp"
#include "qnet/version.hpp"

namespace qnet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<long long> default_np_values() {
    return {1, 3, 10, 32, 100, 316, 1000, 3162, 10000, 100000, 1000000};
}

std::vector<double> default_gamma_values() { return {0.1, 0.15, 0.2}; }

std::ofstream open_output(const std::string& dir, const std::string& name,
                          ExperimentReport& report) {
    std::filesystem::path path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open '" + path.string() + "' for writing");
    report.output_files.push_back(path.string());
    return out;
}

void ensure_output_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw io_error("cannot create output directory '" + dir + "': " + ec.message());
}

struct Aggregate {
    double mean = 0.0;
    double stddev = 0.0;
    int kept = 0;
    int excluded = 0;
};

// Mean and sample std over the non-NaN entries, NaNs counted as exclusions.
Aggregate aggregate(const std::vector<double>& values) {
    Aggregate a;
    double sum = 0.0;
    for (double v : values) {
        if (std::isnan(v)) {
            ++a.excluded;
        } else {
            sum += v;
            ++a.kept;
        }
    }
    if (a.kept == 0) return a;
    a.mean = sum / a.kept;
    double ss = 0.0;
    for (double v : values)
        if (!std::isnan(v)) ss += (v - a.mean) * (v - a.mean);
    a.stddev = a.kept > 1 ? std::sqrt(ss / (a.kept - 1)) : 0.0;
    return a;
}

double tau_or_nan(const WeightedAdjacency& m) { return ensemble_tau(m); }

// Everything the N-sweep experiments need from one Waxman instance: the
// classical estimators on the fiber topology, the quantum estimators on the
// probability adjacency (method 2) and on one sampled realization (method 3,
// used for quantum degree statistics).
struct SweepInstance {
    std::uint64_t seed = 0;
    double tau_kw_cl = kNaN, tau_mfa_cl = kNaN, tau_am_cl = kNaN;
    double tau_kw_q = kNaN, tau_mfa_q = kNaN, tau_pam_q = kNaN;
    double k_cl = 0.0, k_q = 0.0;
};

SweepInstance compute_sweep_instance(const GeoParams& geo, const PhotonicParams& ph,
                                     std::uint64_t seed) {
    SweepInstance out;
    out.seed = seed;

    SpatialGraph g = generate_waxman(geo, seed);
    DegreeStats stats_cl = degree_stats(g.adjacency());
    out.k_cl = stats_cl.mean_degree;
    if (stats_cl.mean_degree > 0.0) out.tau_kw_cl = 1.0 / stats_cl.mean_degree;
    if (stats_cl.second_moment > 0.0)
        out.tau_mfa_cl = stats_cl.mean_degree / stats_cl.second_moment;
    out.tau_am_cl = tau_or_nan(g.adjacency());

    WeightedAdjacency pam = apply_quantum_weights(g, ph);
    out.tau_pam_q = tau_or_nan(pam);

    WeightedAdjacency sampled = sample_link_realization(pam, derive_seed(seed, stream::links));
    DegreeStats stats_q = degree_stats(sampled);
    out.k_q = stats_q.mean_degree;
    if (stats_q.mean_degree > 0.0) out.tau_kw_q = 1.0 / stats_q.mean_degree;
    if (stats_q.second_moment > 0.0) out.tau_mfa_q = stats_q.mean_degree / stats_q.second_moment;
    return out;
}

const char* method_token(const std::optional<SamplingMethod>& m) {
    return m ? to_string(*m) : "-";
}

void write_threshold_csv(std::ofstream& out, const std::vector<ThresholdPoint>& points,
                         const std::string& model) {
    out << "N,method,estimator,mean_tau,std_tau,n_instances,n_excluded\n";
    for (const auto& p : points) {
        if (p.model != model) continue;
        out << p.n << ',' << method_token(p.method) << ',' << to_string(p.estimator) << ','
            << format_double(p.mean_tau) << ',' << format_double(p.std_tau) << ','
            << p.n_instances << ',' << p.n_excluded << '\n';
    }
}

void write_instances_csv(std::ofstream& out, const std::vector<InstanceRecord>& records) {
    out << "model,estimator,method,N,gamma,n_p,r_max,instance,seed,tau\n";
    for (const auto& r : records) {
        out << r.model << ',' << to_string(r.estimator) << ',' << method_token(r.method) << ','
            << r.n << ',' << format_double(r.gamma) << ',' << r.n_p << ','
            << format_double(r.r_max) << ',' << r.instance << ',' << r.seed << ','
            << format_double(r.tau) << '\n';
    }
}

void write_fits_csv(std::ofstream& out, const std::vector<FitRecord>& fits) {
    out << "model,estimator,fit_model,c,c_err,slope,slope_err\n";
    for (const auto& f : fits) {
        out << f.model << ',' << f.estimator << ','
            << (f.fit.model == FitModel::COverN ? "c-over-N" : "loglog-slope") << ','
            << format_double(f.fit.c) << ',' << format_double(f.fit.c_err) << ','
            << (f.fit.slope ? format_double(*f.fit.slope) : "-") << ','
            << (f.fit.slope_err ? format_double(*f.fit.slope_err) : "-") << '\n';
    }
}

void write_trajectory_csv(std::ofstream& out, const InfectionTrajectory& traj,
                          const std::string& method) {
    out << "t,eta_mean,eta_std,method\n";
    for (std::size_t t = 0; t < traj.eta.size(); ++t) {
        double sd = t < traj.eta_std.size() ? traj.eta_std[t] : 0.0;
        out << t << ',' << format_double(traj.eta[t]) << ',' << format_double(sd) << ',' << method
            << '\n';
    }
}

void write_report_txt(const ExperimentConfig& cfg, ExperimentReport& report) {
    std::ofstream out = open_output(cfg.output_dir, "report.txt", report);
    out << "qnet experiment report\n";
    out << "version: " << report.code_version << "\n";
    out << "experiment: " << to_string(report.kind) << "\n";
    out << "wall_seconds: " << format_double(report.wall_seconds) << "\n";
    if (report.delta_c > 0.0) out << "delta_c: " << format_double(report.delta_c) << "\n";

    if (!report.fits.empty()) {
        out << "\nfits:\n";
        for (const auto& f : report.fits) {
            out << "  model=" << f.model << " estimator=" << f.estimator
                << " c=" << format_double(f.fit.c) << " c_err=" << format_double(f.fit.c_err);
            if (f.fit.slope)
                out << " slope=" << format_double(*f.fit.slope)
                    << " slope_err=" << format_double(*f.fit.slope_err);
            out << "\n";
        }
    }

    if (!report.thresholds.empty()) {
        int excluded = 0, instances = 0;
        for (const auto& p : report.thresholds) {
            excluded += p.n_excluded;
            instances += p.n_instances;
        }
        out << "\npoints: " << report.thresholds.size() << " (instances kept " << instances
            << ", excluded " << excluded << ")\n";
    }

    if (!report.dynamics.empty()) {
        out << "\ndynamics:\n";
        for (const auto& d : report.dynamics)
            out << "  ratio=" << format_double(d.ratio) << " method=" << d.method
                << " eta0=" << format_double(d.eta0) << " eta_final=" << format_double(d.eta_final)
                << " converged=" << (d.converged ? "yes" : "no") << " steps=" << d.steps << "\n";
    }

    if (!report.notes.empty()) {
        out << "\nnotes:\n";
        for (const auto& n : report.notes) out << "  " << n << "\n";
    }

    out << "\noutputs:\n";
    for (const auto& f : report.output_files) out << "  " << f << "\n";

    out << "\nconfig:\n" << report.config_echo;
}

ExperimentReport make_report(const ExperimentConfig& cfg) {
    ExperimentReport report;
    report.kind = cfg.experiment;
    report.code_version = kVersion;
    report.config_echo = cfg.to_json_text();
    return report;
}

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void require_kind(const ExperimentConfig& cfg, ExperimentKind kind) {
    if (cfg.experiment != kind)
        throw config_error(std::string("config is for '") + to_string(cfg.experiment) +
                               "', expected '" + to_string(kind) + "'",
                           "experiment");
}

// Shared driver for threshold-scaling and loglog-asymptote: one Waxman
// ensemble per N with every estimator evaluated per instance.
std::vector<std::vector<SweepInstance>> run_n_sweep(const ExperimentConfig& cfg, int workers) {
    std::size_t n_points = cfg.n_values.size();
    std::size_t per_point = static_cast<std::size_t>(cfg.ensemble_size);
    std::vector<std::vector<SweepInstance>> results(n_points,
                                                    std::vector<SweepInstance>(per_point));
    parallel_for(n_points * per_point, workers, [&](std::size_t task) {
        std::size_t point = task / per_point;
        std::size_t inst = task % per_point;
        GeoParams geo = cfg.geo;
        geo.n_nodes = cfg.n_values[point];
        std::uint64_t seed = derive_seed(cfg.master_seed, stream::instance,
                                         static_cast<std::uint64_t>(geo.n_nodes), inst);
        results[point][inst] = compute_sweep_instance(geo, cfg.photonic, seed);
    });
    return results;
}

struct SeriesSpec {
    const char* model;
    Estimator estimator;
    std::optional<SamplingMethod> method;
    double SweepInstance::* value;
};

const SeriesSpec kSweepSeries[] = {
    {"classical", Estimator::KW, std::nullopt, &SweepInstance::tau_kw_cl},
    {"classical", Estimator::MFA, std::nullopt, &SweepInstance::tau_mfa_cl},
    {"classical", Estimator::AM, std::nullopt, &SweepInstance::tau_am_cl},
    {"quantum", Estimator::KW, SamplingMethod::FullySampled3, &SweepInstance::tau_kw_q},
    {"quantum", Estimator::MFA, SamplingMethod::FullySampled3, &SweepInstance::tau_mfa_q},
    {"quantum", Estimator::pAM, SamplingMethod::Quenched2, &SweepInstance::tau_pam_q},
};

} // namespace

ExperimentReport run_threshold_scaling(const ExperimentConfig& cfg, int workers) {
    require_kind(cfg, ExperimentKind::ThresholdScaling);
    cfg.validate();
    ensure_output_dir(cfg.output_dir);
    Stopwatch watch;
    ExperimentReport report = make_report(cfg);

    auto results = run_n_sweep(cfg, workers);

    for (std::size_t point = 0; point < cfg.n_values.size(); ++point) {
        int n = cfg.n_values[point];
        for (const auto& series : kSweepSeries) {
            std::vector<double> taus;
            double k_sum = 0.0;
            taus.reserve(results[point].size());
            for (const auto& inst : results[point]) {
                taus.push_back(inst.*(series.value));
                k_sum += std::string_view(series.model) == "classical" ? inst.k_cl : inst.k_q;
            }
            Aggregate agg = aggregate(taus);
            if (agg.kept == 0)
                throw degenerate_graph_error("every instance at N=" + std::to_string(n) +
                                             " was degenerate for estimator " +
                                             to_string(series.estimator));
            ThresholdPoint tp;
            tp.model = series.model;
            tp.estimator = series.estimator;
            tp.method = series.method;
            tp.n = n;
            tp.gamma = cfg.photonic.gamma;
            tp.n_p = cfg.photonic.n_photons;
            tp.r_max = cfg.geo.r_max;
            tp.mean_tau = agg.mean;
            tp.std_tau = agg.stddev;
            tp.n_instances = agg.kept;
            tp.n_excluded = agg.excluded;
            tp.mean_k = k_sum / static_cast<double>(results[point].size());
            report.thresholds.push_back(tp);

            for (std::size_t inst = 0; inst < results[point].size(); ++inst) {
                InstanceRecord rec;
                rec.model = series.model;
                rec.estimator = series.estimator;
                rec.method = series.method;
                rec.n = n;
                rec.gamma = cfg.photonic.gamma;
                rec.n_p = cfg.photonic.n_photons;
                rec.r_max = cfg.geo.r_max;
                rec.instance = static_cast<int>(inst);
                rec.seed = results[point][inst].seed;
                rec.tau = results[point][inst].*(series.value);
                report.instances.push_back(rec);
            }
        }
    }

    // c/N fit per estimator series
    if (cfg.n_values.size() >= 3) {
        for (const auto& series : kSweepSeries) {
            std::vector<ScalingPoint> pts;
            for (const auto& tp : report.thresholds)
                if (tp.model == series.model && tp.estimator == series.estimator)
                    pts.push_back({static_cast<double>(tp.n), tp.mean_tau,
                                   tp.n_instances > 1
                                       ? tp.std_tau / std::sqrt(static_cast<double>(tp.n_instances))
                                       : 0.0});
            report.fits.push_back({series.model, to_string(series.estimator), fit_scaling(pts)});
        }
    } else {
        report.notes.push_back("fewer than 3 N values: scaling fits skipped");
    }

    {
        auto out = open_output(cfg.output_dir, "thresholds_classical.csv", report);
        write_threshold_csv(out, report.thresholds, "classical");
    }
    {
        auto out = open_output(cfg.output_dir, "thresholds_quantum.csv", report);
        write_threshold_csv(out, report.thresholds, "quantum");
    }
    {
        auto out = open_output(cfg.output_dir, "instances.csv", report);
        write_instances_csv(out, report.instances);
    }
    {
        auto out = open_output(cfg.output_dir, "fits.csv", report);
        write_fits_csv(out, report.fits);
    }

    report.wall_seconds = watch.seconds();
    write_report_txt(cfg, report);
    return report;
}

ExperimentReport run_loglog_asymptote(const ExperimentConfig& cfg, int workers) {
    require_kind(cfg, ExperimentKind::LogLogAsymptote);
    cfg.validate();
    ensure_output_dir(cfg.output_dir);
    Stopwatch watch;
    ExperimentReport report = make_report(cfg);

    auto results = run_n_sweep(cfg, workers);

    // spectral estimator per model: AM on the fiber graph, pAM on the pAM
    for (std::size_t point = 0; point < cfg.n_values.size(); ++point) {
        int n = cfg.n_values[point];
        for (const char* model : {"classical", "quantum"}) {
            bool classical = std::string_view(model) == "classical";
            std::vector<double> taus;
            double k_sum = 0.0;
            for (const auto& inst : results[point]) {
                taus.push_back(classical ? inst.tau_am_cl : inst.tau_pam_q);
                k_sum += classical ? inst.k_cl : inst.k_q;
            }
            Aggregate agg = aggregate(taus);
            if (agg.kept == 0)
                throw degenerate_graph_error("every instance at N=" + std::to_string(n) +
                                             " was degenerate (" + model + ")");
            ThresholdPoint tp;
            tp.model = model;
            tp.estimator = classical ? Estimator::AM : Estimator::pAM;
            tp.method = classical ? std::nullopt : std::optional(SamplingMethod::Quenched2);
            tp.n = n;
            tp.gamma = cfg.photonic.gamma;
            tp.n_p = cfg.photonic.n_photons;
            tp.r_max = cfg.geo.r_max;
            tp.mean_tau = agg.mean;
            tp.std_tau = agg.stddev;
            tp.n_instances = agg.kept;
            tp.n_excluded = agg.excluded;
            tp.mean_k = k_sum / static_cast<double>(results[point].size());
            report.thresholds.push_back(tp);
        }
    }

    // slope fit over the largest fit_points N values per model
    for (const char* model : {"classical", "quantum"}) {
        std::vector<LogLogPoint> pts;
        for (const auto& tp : report.thresholds)
            if (tp.model == model) pts.push_back({tp.mean_k, tp.mean_tau});
        std::size_t use = std::min<std::size_t>(pts.size(), static_cast<std::size_t>(cfg.fit_points));
        if (use >= 3) {
            std::vector<LogLogPoint> tail(pts.end() - use, pts.end());
            ScalingFit fit = fit_loglog(tail);
            report.fits.push_back(
                {model, std::string_view(model) == "classical" ? "AM" : "pAM", fit});
            report.notes.push_back(std::string(model) + ": slope deviation from -1 = " +
                                   format_double(*fit.slope + 1.0));
        } else {
            report.notes.push_back(std::string(model) +
                                   ": fewer than 3 points in fit range, slope fit skipped");
        }
        for (const auto& tp : report.thresholds)
            if (tp.model == model)
                report.notes.push_back(std::string(model) + " N=" + std::to_string(tp.n) +
                                       ": tau*<k> - 1 = " +
                                       format_double(tp.mean_tau * tp.mean_k - 1.0));
    }

    {
        auto out = open_output(cfg.output_dir, "loglog_points.csv", report);
        out << "model,N,mean_k,mean_tau,log_k,log_tau,tau_times_k\n";
        for (const auto& tp : report.thresholds)
            out << tp.model << ',' << tp.n << ',' << format_double(tp.mean_k) << ','
                << format_double(tp.mean_tau) << ',' << format_double(std::log(tp.mean_k)) << ','
                << format_double(std::log(tp.mean_tau)) << ','
                << format_double(tp.mean_tau * tp.mean_k) << '\n';
    }
    {
        auto out = open_output(cfg.output_dir, "fits.csv", report);
        write_fits_csv(out, report.fits);
    }

    report.wall_seconds = watch.seconds();
    write_report_txt(cfg, report);
    return report;
}

ExperimentReport run_dynamics_sweep(const ExperimentConfig& cfg, int workers) {
    require_kind(cfg, ExperimentKind::DynamicsSweep);
    cfg.validate();
    ensure_output_dir(cfg.output_dir);
    Stopwatch watch;
    ExperimentReport report = make_report(cfg);

    // one fixed instance for the whole sweep, as in the figure protocol
    std::uint64_t graph_seed = derive_seed(cfg.master_seed, stream::instance, 0);
    SpatialGraph g = generate_waxman(cfg.geo, graph_seed);
    WeightedAdjacency pam = apply_quantum_weights(g, cfg.photonic);

    SpectralResult sr = largest_eigenvalue(pam);
    if (!(sr.lambda1 > 0.0))
        throw degenerate_graph_error("quantum instance has no usable links");
    double delta_c = cfg.epidemic.beta * sr.lambda1; // beta / tau_pAM
    report.delta_c = delta_c;
    report.notes.push_back("graph_seed=" + std::to_string(graph_seed) +
                           " lambda1=" + format_double(sr.lambda1) +
                           " delta_c=" + format_double(delta_c));

    struct RatioResult {
        InfectionTrajectory mnlds;
        InfectionTrajectory direct;
    };
    std::vector<RatioResult> results(cfg.delta_ratios.size());

    parallel_for(cfg.delta_ratios.size(), workers, [&](std::size_t idx) {
        EpidemicParams params = cfg.epidemic;
        params.delta = std::min(1.0, cfg.delta_ratios[idx] * delta_c);
        results[idx].mnlds = run_mnlds(pam, params, cfg.t_max, cfg.conv_tol);
        results[idx].direct =
            run_direct_sim(pam, params, cfg.t_max_direct, cfg.n_runs,
                           derive_seed(cfg.master_seed, stream::run, idx));
    });

    for (std::size_t idx = 0; idx < cfg.delta_ratios.size(); ++idx) {
        double ratio = cfg.delta_ratios[idx];
        double delta = std::min(1.0, ratio * delta_c);
        const auto& res = results[idx];

        for (const char* method : {"mnlds", "direct"}) {
            const InfectionTrajectory& traj =
                std::string_view(method) == "mnlds" ? res.mnlds : res.direct;
            auto out = open_output(cfg.output_dir,
                                   std::string("traj_") + method + "_delta" +
                                       format_double(ratio) + ".csv",
                                   report);
            write_trajectory_csv(out, traj, method);
            report.dynamics.push_back({ratio, delta, method, traj.eta.front(), traj.eta_final,
                                       traj.converged, traj.steps});
        }
    }

    {
        auto out = open_output(cfg.output_dir, "dynamics_summary.csv", report);
        out << "ratio,delta,method,eta0,eta_final,converged,steps\n";
        for (const auto& d : report.dynamics)
            out << format_double(d.ratio) << ',' << format_double(d.delta) << ',' << d.method
                << ',' << format_double(d.eta0) << ',' << format_double(d.eta_final) << ','
                << (d.converged ? 1 : 0) << ',' << d.steps << '\n';
    }

    report.wall_seconds = watch.seconds();
    write_report_txt(cfg, report);
    return report;
}

ExperimentReport run_method_compare(const ExperimentConfig& cfg, int workers) {
    require_kind(cfg, ExperimentKind::MethodCompare);
    cfg.validate();
    ensure_output_dir(cfg.output_dir);
    Stopwatch watch;
    ExperimentReport report = make_report(cfg);

    const SamplingMethod methods[] = {SamplingMethod::Annealed1, SamplingMethod::Quenched2,
                                      SamplingMethod::FullySampled3};
    std::vector<ThresholdEstimate> estimates(cfg.n_values.size() * 3);

    parallel_for(estimates.size(), workers, [&](std::size_t task) {
        std::size_t point = task / 3;
        SamplingMethod method = methods[task % 3];
        GeoParams geo = cfg.geo;
        geo.n_nodes = cfg.n_values[point];
        // same per-N seed for all three methods: method 2 reuses method 1's
        // positions, method 3 reuses method 2's topologies
        std::uint64_t seed = derive_seed(cfg.master_seed, stream::instance,
                                         static_cast<std::uint64_t>(geo.n_nodes));
        estimates[task] = ensemble_threshold(geo, cfg.photonic, method, cfg.ensemble_size,
                                             cfg.inner_samples, seed);
    });

    for (std::size_t point = 0; point < cfg.n_values.size(); ++point) {
        for (std::size_t m = 0; m < 3; ++m) {
            const ThresholdEstimate& est = estimates[point * 3 + m];
            ThresholdPoint tp;
            tp.model = "quantum";
            tp.estimator = est.estimator;
            tp.method = est.method;
            tp.n = cfg.n_values[point];
            tp.gamma = cfg.photonic.gamma;
            tp.n_p = cfg.photonic.n_photons;
            tp.r_max = cfg.geo.r_max;
            tp.mean_tau = est.ensemble_mean;
            tp.std_tau = est.ensemble_std;
            tp.n_instances = est.n_instances;
            tp.n_excluded = est.n_excluded;
            report.thresholds.push_back(tp);
        }
        const auto& m2 = estimates[point * 3 + 1];
        const auto& m3 = estimates[point * 3 + 2];
        double band = std::sqrt(m2.ensemble_std * m2.ensemble_std +
                                m3.ensemble_std * m3.ensemble_std);
        report.notes.push_back("N=" + std::to_string(cfg.n_values[point]) +
                               ": |mean2-mean3|=" +
                               format_double(std::abs(m2.ensemble_mean - m3.ensemble_mean)) +
                               " combined_std=" + format_double(band));
    }

    {
        auto out = open_output(cfg.output_dir, "method_compare.csv", report);
        write_threshold_csv(out, report.thresholds, "quantum");
    }

    report.wall_seconds = watch.seconds();
    write_report_txt(cfg, report);
    return report;
}

namespace {

// Shared by the photon and radius sweeps. Outer sweep entries are either N
// values (radius fixed) or radii (N fixed).
ExperimentReport run_np_sweep(const ExperimentConfig& cfg, int workers, bool sweep_radius) {
    cfg.validate();
    ensure_output_dir(cfg.output_dir);
    Stopwatch watch;
    ExperimentReport report = make_report(cfg);

    std::vector<long long> np_values = cfg.np_values.empty() ? default_np_values() : cfg.np_values;
    std::vector<double> gammas = cfg.gamma_values.empty() ? default_gamma_values()
                                                          : cfg.gamma_values;
    std::size_t outer_count = sweep_radius ? cfg.r_max_values.size() : cfg.n_values.size();
    std::size_t per_outer = static_cast<std::size_t>(cfg.ensemble_size);
    std::size_t combos = gammas.size() * np_values.size();

    // slab[outer][inst]: classical tau followed by one tau per (gamma, n_p)
    std::vector<std::vector<std::vector<double>>> slab(
        outer_count, std::vector<std::vector<double>>(per_outer));
    std::vector<std::vector<std::uint64_t>> seeds(outer_count,
                                                  std::vector<std::uint64_t>(per_outer));

    parallel_for(outer_count * per_outer, workers, [&](std::size_t task) {
        std::size_t outer = task / per_outer;
        std::size_t inst = task % per_outer;
        GeoParams geo = cfg.geo;
        if (sweep_radius)
            geo.r_max = cfg.r_max_values[outer];
        else
            geo.n_nodes = cfg.n_values[outer];

        std::uint64_t seed =
            derive_seed(cfg.master_seed, stream::instance, static_cast<std::uint64_t>(outer), inst);
        seeds[outer][inst] = seed;

        SpatialGraph g = generate_waxman(geo, seed);
        std::vector<double>& row = slab[outer][inst];
        row.assign(1 + combos, kNaN);
        row[0] = tau_or_nan(g.adjacency());
        std::size_t at = 1;
        for (double gamma : gammas)
            for (long long np : np_values) {
                PhotonicParams ph{gamma, np};
                row[at++] = tau_or_nan(apply_quantum_weights(g, ph));
            }
    });

    auto outer_n = [&](std::size_t outer) {
        return sweep_radius ? cfg.geo.n_nodes : cfg.n_values[outer];
    };
    auto outer_r = [&](std::size_t outer) {
        return sweep_radius ? cfg.r_max_values[outer] : cfg.geo.r_max;
    };

    for (std::size_t outer = 0; outer < outer_count; ++outer) {
        auto collect = [&](std::size_t slot) {
            std::vector<double> taus(per_outer);
            for (std::size_t inst = 0; inst < per_outer; ++inst)
                taus[inst] = slab[outer][inst][slot];
            return aggregate(taus);
        };

        Aggregate classical = collect(0);
        ThresholdPoint base;
        base.model = "classical";
        base.estimator = Estimator::AM;
        base.n = outer_n(outer);
        base.r_max = outer_r(outer);
        base.n_p = 0;
        base.gamma = 0.0;
        base.mean_tau = classical.mean;
        base.std_tau = classical.stddev;
        base.n_instances = classical.kept;
        base.n_excluded = classical.excluded;
        report.thresholds.push_back(base);

        std::size_t at = 1;
        for (double gamma : gammas)
            for (long long np : np_values) {
                Aggregate agg = collect(at++);
                ThresholdPoint tp;
                tp.model = "quantum";
                tp.estimator = Estimator::pAM;
                tp.method = SamplingMethod::Quenched2;
                tp.n = outer_n(outer);
                tp.r_max = outer_r(outer);
                tp.gamma = gamma;
                tp.n_p = np;
                tp.mean_tau = agg.mean;
                tp.std_tau = agg.stddev;
                tp.n_instances = agg.kept;
                tp.n_excluded = agg.excluded;
                report.thresholds.push_back(tp);
            }

        for (std::size_t inst = 0; inst < per_outer; ++inst) {
            InstanceRecord rec;
            rec.model = "classical";
            rec.estimator = Estimator::AM;
            rec.n = outer_n(outer);
            rec.r_max = outer_r(outer);
            rec.instance = static_cast<int>(inst);
            rec.seed = seeds[outer][inst];
            rec.tau = slab[outer][inst][0];
            report.instances.push_back(rec);
        }
    }

    const char* main_csv = sweep_radius ? "radius_sweep.csv" : "photon_sweep.csv";
    const char* baseline_csv =
        sweep_radius ? "radius_sweep_classical.csv" : "photon_sweep_classical.csv";
    {
        auto out = open_output(cfg.output_dir, main_csv, report);
        out << "N,r_max,gamma,n_p,mean_tau,std_tau,stderr_tau,n_instances,n_excluded\n";
        for (const auto& tp : report.thresholds) {
            if (tp.model != "quantum") continue;
            double se = tp.n_instances > 0
                            ? tp.std_tau / std::sqrt(static_cast<double>(tp.n_instances))
                            : 0.0;
            out << tp.n << ',' << format_double(tp.r_max) << ',' << format_double(tp.gamma) << ','
                << tp.n_p << ',' << format_double(tp.mean_tau) << ',' << format_double(tp.std_tau)
                << ',' << format_double(se) << ',' << tp.n_instances << ',' << tp.n_excluded
                << '\n';
        }
    }
    {
        auto out = open_output(cfg.output_dir, baseline_csv, report);
        out << "N,r_max,mean_tau,std_tau,stderr_tau,n_instances,n_excluded\n";
        for (const auto& tp : report.thresholds) {
            if (tp.model != "classical") continue;
            double se = tp.n_instances > 0
                            ? tp.std_tau / std::sqrt(static_cast<double>(tp.n_instances))
                            : 0.0;
            out << tp.n << ',' << format_double(tp.r_max) << ',' << format_double(tp.mean_tau)
                << ',' << format_double(tp.std_tau) << ',' << format_double(se) << ','
                << tp.n_instances << ',' << tp.n_excluded << '\n';
        }
    }
    {
        auto out = open_output(cfg.output_dir, "instances.csv", report);
        write_instances_csv(out, report.instances);
    }

    report.wall_seconds = watch.seconds();
    write_report_txt(cfg, report);
    return report;
}

} // namespace

ExperimentReport run_photon_sweep(const ExperimentConfig& cfg, int workers) {
    require_kind(cfg, ExperimentKind::PhotonSweep);
    return run_np_sweep(cfg, workers, false);
}

ExperimentReport run_radius_sweep(const ExperimentConfig& cfg, int workers) {
    require_kind(cfg, ExperimentKind::RadiusSweep);
    return run_np_sweep(cfg, workers, true);
}

ExperimentReport run_degree_dist(const ExperimentConfig& cfg, int workers) {
    require_kind(cfg, ExperimentKind::DegreeDist);
    cfg.validate();
    ensure_output_dir(cfg.output_dir);
    Stopwatch watch;
    ExperimentReport report = make_report(cfg);

    std::size_t per_point = static_cast<std::size_t>(cfg.ensemble_size);
    struct InstanceHist {
        std::map<int, std::size_t> classical;
        std::map<int, std::size_t> quantum;
    };
    std::vector<std::vector<InstanceHist>> hists(cfg.n_values.size(),
                                                 std::vector<InstanceHist>(per_point));

    parallel_for(cfg.n_values.size() * per_point, workers, [&](std::size_t task) {
        std::size_t point = task / per_point;
        std::size_t inst = task % per_point;
        GeoParams geo = cfg.geo;
        geo.n_nodes = cfg.n_values[point];
        std::uint64_t seed = derive_seed(cfg.master_seed, stream::instance,
                                         static_cast<std::uint64_t>(geo.n_nodes), inst);
        SpatialGraph g = generate_waxman(geo, seed);
        for (double k : node_degrees(g.adjacency()))
            ++hists[point][inst].classical[static_cast<int>(k)];
        // quantum degrees use fully sampled links (method 3)
        WeightedAdjacency pam = apply_quantum_weights(g, cfg.photonic);
        WeightedAdjacency sampled = sample_link_realization(pam, derive_seed(seed, stream::links));
        for (double k : node_degrees(sampled))
            ++hists[point][inst].quantum[static_cast<int>(k)];
    });

    for (std::size_t point = 0; point < cfg.n_values.size(); ++point) {
        for (const char* model : {"classical", "quantum"}) {
            std::map<int, std::size_t> pooled;
            std::size_t total = 0;
            for (const auto& inst : hists[point]) {
                const auto& h = std::string_view(model) == "classical" ? inst.classical
                                                                       : inst.quantum;
                for (const auto& [k, count] : h) {
                    pooled[k] += count;
                    total += count;
                }
            }
            for (const auto& [k, count] : pooled)
                report.degree_rows.push_back({model, cfg.n_values[point], k,
                                              static_cast<double>(count) /
                                                  static_cast<double>(total)});
        }
    }

    {
        auto out = open_output(cfg.output_dir, "degree_dist.csv", report);
        out << "model,N,k,p_k\n";
        for (const auto& row : report.degree_rows)
            out << row.model << ',' << row.n << ',' << row.k << ',' << format_double(row.p_k)
                << '\n';
    }

    report.wall_seconds = watch.seconds();
    write_report_txt(cfg, report);
    return report;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, int workers) {
    switch (cfg.experiment) {
        case ExperimentKind::DegreeDist: return run_degree_dist(cfg, workers);
        case ExperimentKind::ThresholdScaling: return run_threshold_scaling(cfg, workers);
        case ExperimentKind::LogLogAsymptote: return run_loglog_asymptote(cfg, workers);
        case ExperimentKind::DynamicsSweep: return run_dynamics_sweep(cfg, workers);
        case ExperimentKind::MethodCompare: return run_method_compare(cfg, workers);
        case ExperimentKind::PhotonSweep: return run_photon_sweep(cfg, workers);
        case ExperimentKind::RadiusSweep: return run_radius_sweep(cfg, workers);
    }
    throw config_error("unhandled experiment kind");
}

} // namespace qnet
