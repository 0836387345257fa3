#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qnet/dynamics.hpp"
#include "qnet/fit.hpp"
#include "qnet/graph.hpp"
#include "qnet/spectral.hpp"

namespace qnet {

enum class ExperimentKind {
    DegreeDist,       // degree distributions, classical vs quantum
    ThresholdScaling, // tau vs N with c/N fits
    LogLogAsymptote,  // log tau vs log <k>
    DynamicsSweep,    // mNLDS + direct simulation over delta/delta_c
    MethodCompare,    // disorder methods 1-3 side by side
    PhotonSweep,      // tau vs n_p per gamma, N sweep
    RadiusSweep,      // tau vs n_p per gamma, R_max sweep
};

const char* to_string(ExperimentKind kind);

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::ThresholdScaling;
    GeoParams geo;
    PhotonicParams photonic;
    EpidemicParams epidemic;
    std::vector<int> n_values;
    std::vector<double> delta_ratios;
    int ensemble_size = 1;
    int inner_samples = 1;
    std::uint64_t master_seed = 0;
    std::string output_dir = ".";

    // Optional knobs with figure-protocol defaults.
    int n_runs = 20;       // direct-simulation runs per delta ratio
    int t_max = 10000;     // mNLDS step budget
    int t_max_direct = 2000;
    double conv_tol = 1e-8;
    std::vector<long long> np_values;  // photon counts for the sweeps
    std::vector<double> gamma_values;  // attenuation values for the sweeps
    std::vector<double> r_max_values;  // radii for the radius sweep
    int fit_points = 3; // largest-N points used by the log-log fit

    // Parses the JSON config document. Unknown keys, missing required keys,
    // and type mismatches raise config_error naming the key.
    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_json_file(const std::string& path);
    std::string to_json_text() const;

    void validate() const; // throws config_error
};

// One aggregated ensemble point. Sweep coordinates that do not apply to an
// experiment keep their defaults.
struct ThresholdPoint {
    std::string model; // "classical" | "quantum"
    Estimator estimator = Estimator::AM;
    std::optional<SamplingMethod> method;
    int n = 0;
    double gamma = 0.0;
    long long n_p = 0;
    double r_max = 0.0;
    double mean_tau = 0.0;
    double std_tau = 0.0;
    int n_instances = 0;
    int n_excluded = 0;
    double mean_k = 0.0; // mean connectivity across instances
};

// One per-instance threshold value, traceable to its own seed.
struct InstanceRecord {
    std::string model;
    Estimator estimator = Estimator::AM;
    std::optional<SamplingMethod> method;
    int n = 0;
    double gamma = 0.0;
    long long n_p = 0;
    double r_max = 0.0;
    int instance = 0;
    std::uint64_t seed = 0;
    double tau = 0.0; // NaN when the instance was degenerate
};

struct DegreeRow {
    std::string model;
    int n = 0;
    int k = 0;
    double p_k = 0.0;
};

struct DynamicsSummary {
    double ratio = 0.0;
    double delta = 0.0;
    std::string method; // mnlds | direct
    double eta0 = 0.0;
    double eta_final = 0.0;
    bool converged = false;
    int steps = 0;
};

struct FitRecord {
    std::string model;     // "classical" | "quantum"
    std::string estimator; // KW / MFA / AM / pAM
    ScalingFit fit;
};

struct ExperimentReport {
    ExperimentKind kind = ExperimentKind::ThresholdScaling;
    std::vector<ThresholdPoint> thresholds;
    std::vector<InstanceRecord> instances;
    std::vector<DegreeRow> degree_rows;
    std::vector<DynamicsSummary> dynamics;
    std::vector<FitRecord> fits;
    std::vector<std::string> output_files;
    std::vector<std::string> notes;
    double wall_seconds = 0.0;
    std::string config_echo;
    std::string code_version;
    double delta_c = 0.0; // dynamics sweep only
};

// Runs the configured pipeline and writes its CSVs plus report.txt under
// cfg.output_dir. Identical config + master_seed give byte-identical CSVs
// for any worker count.
ExperimentReport run_experiment(const ExperimentConfig& cfg, int workers = 1);

ExperimentReport run_degree_dist(const ExperimentConfig& cfg, int workers = 1);
ExperimentReport run_threshold_scaling(const ExperimentConfig& cfg, int workers = 1);
ExperimentReport run_loglog_asymptote(const ExperimentConfig& cfg, int workers = 1);
ExperimentReport run_dynamics_sweep(const ExperimentConfig& cfg, int workers = 1);
ExperimentReport run_method_compare(const ExperimentConfig& cfg, int workers = 1);
ExperimentReport run_photon_sweep(const ExperimentConfig& cfg, int workers = 1);
ExperimentReport run_radius_sweep(const ExperimentConfig& cfg, int workers = 1);

} // namespace qnet
