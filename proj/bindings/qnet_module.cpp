#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qnet/degree.hpp"
#include "qnet/dynamics.hpp"
#include "qnet/errors.hpp"
#include "qnet/experiment.hpp"
#include "qnet/fit.hpp"
#include "qnet/graph.hpp"
#include "qnet/graph_io.hpp"
#include "qnet/photonic.hpp"
#include "qnet/spectral.hpp"
#include "qnet/version.hpp"

namespace py = pybind11;
using namespace qnet;

namespace {

py::array_t<double> matrix_to_numpy(const WeightedAdjacency& w) {
    std::size_t n = w.size();
    py::array_t<double> arr({n, n});
    std::copy(w.data().begin(), w.data().end(), arr.mutable_data());
    return arr;
}

WeightedAdjacency matrix_from_numpy(py::array_t<double, py::array::c_style> arr,
                                    WeightKind kind) {
    if (arr.ndim() != 2 || arr.shape(0) != arr.shape(1))
        throw std::invalid_argument("expected a square 2-D array");
    std::size_t n = static_cast<std::size_t>(arr.shape(0));
    WeightedAdjacency w(n, kind);
    auto view = arr.unchecked<2>();
    for (std::size_t i = 0; i < n; ++i) {
        if (view(i, i) != 0.0) throw std::invalid_argument("diagonal must be zero");
        for (std::size_t j = i + 1; j < n; ++j) {
            if (view(i, j) != view(j, i))
                throw std::invalid_argument("matrix must be symmetric");
            if (view(i, j) != 0.0) w.set(i, j, view(i, j));
        }
    }
    return w;
}

} // namespace

PYBIND11_MODULE(_qnet, m) {
    m.doc() = "epidemic spreading on classical and photonic quantum networks";
    m.attr("__version__") = kVersion;

    py::register_exception<degenerate_graph_error>(m, "DegenerateGraphError");
    py::register_exception<no_convergence_error>(m, "NoConvergenceError");
    py::register_exception<malformed_file_error>(m, "MalformedFileError");
    py::register_exception<io_error>(m, "IoError");
    py::register_exception<too_large_error>(m, "TooLargeError");
    py::register_exception<config_error>(m, "ConfigError");
    py::register_exception<insufficient_data_error>(m, "InsufficientDataError");

    py::enum_<WeightKind>(m, "WeightKind")
        .value("BINARY_CLASSICAL", WeightKind::BinaryClassical)
        .value("PROBABILITY_WEIGHTED", WeightKind::ProbabilityWeighted)
        .value("SAMPLED_REALIZATION", WeightKind::SampledRealization);

    py::enum_<Estimator>(m, "Estimator")
        .value("KW", Estimator::KW)
        .value("MFA", Estimator::MFA)
        .value("AM", Estimator::AM)
        .value("PAM", Estimator::pAM);

    py::enum_<SamplingMethod>(m, "SamplingMethod")
        .value("ANNEALED_1", SamplingMethod::Annealed1)
        .value("QUENCHED_2", SamplingMethod::Quenched2)
        .value("FULLY_SAMPLED_3", SamplingMethod::FullySampled3);

    py::class_<GeoParams>(m, "GeoParams")
        .def(py::init([](double r_max, double alpha_l, double beta_l, int n_nodes) {
                 GeoParams g{r_max, alpha_l, beta_l, n_nodes};
                 g.validate();
                 return g;
             }),
             py::arg("r_max") = 1600.0, py::arg("alpha_l") = 226.0, py::arg("beta_l") = 1.0,
             py::arg("n_nodes") = 1)
        .def_readwrite("r_max", &GeoParams::r_max)
        .def_readwrite("alpha_l", &GeoParams::alpha_l)
        .def_readwrite("beta_l", &GeoParams::beta_l)
        .def_readwrite("n_nodes", &GeoParams::n_nodes);

    py::class_<PhotonicParams>(m, "PhotonicParams")
        .def(py::init([](double gamma, long long n_photons) {
                 PhotonicParams p{gamma, n_photons};
                 p.validate();
                 return p;
             }),
             py::arg("gamma") = 0.2, py::arg("n_photons") = 1000)
        .def_readwrite("gamma", &PhotonicParams::gamma)
        .def_readwrite("n_photons", &PhotonicParams::n_photons);

    py::class_<WeightedAdjacency>(m, "WeightedAdjacency")
        .def(py::init<std::size_t, WeightKind>(), py::arg("n"), py::arg("kind"))
        .def_static("from_numpy", &matrix_from_numpy, py::arg("array"), py::arg("kind"))
        .def("__len__", &WeightedAdjacency::size)
        .def_property_readonly("kind", &WeightedAdjacency::kind)
        .def("at", &WeightedAdjacency::at, py::arg("i"), py::arg("j"))
        .def("set", &WeightedAdjacency::set, py::arg("i"), py::arg("j"), py::arg("w"))
        .def("edge_count", &WeightedAdjacency::edge_count)
        .def("to_numpy", &matrix_to_numpy);

    py::class_<SpatialGraph>(m, "SpatialGraph")
        .def("__len__", &SpatialGraph::size)
        .def_property_readonly("positions",
                               [](const SpatialGraph& g) {
                                   std::vector<std::pair<double, double>> out;
                                   out.reserve(g.size());
                                   for (const Point& p : g.positions())
                                       out.emplace_back(p.x, p.y);
                                   return out;
                               })
        .def_property_readonly("adjacency", &SpatialGraph::adjacency)
        .def_property_readonly("disk_radius", &SpatialGraph::disk_radius)
        .def("distance", &SpatialGraph::distance, py::arg("i"), py::arg("j"));

    py::class_<DegreeStats>(m, "DegreeStats")
        .def_readonly("histogram", &DegreeStats::histogram)
        .def_readonly("mean_degree", &DegreeStats::mean_degree)
        .def_readonly("second_moment", &DegreeStats::second_moment);

    py::class_<SpectralResult>(m, "SpectralResult")
        .def_readonly("lambda1", &SpectralResult::lambda1)
        .def_readonly("iterations", &SpectralResult::iterations)
        .def_readonly("residual", &SpectralResult::residual);

    py::class_<ThresholdEstimate>(m, "ThresholdEstimate")
        .def_readonly("value", &ThresholdEstimate::value)
        .def_readonly("estimator", &ThresholdEstimate::estimator)
        .def_readonly("method", &ThresholdEstimate::method)
        .def_readonly("ensemble_mean", &ThresholdEstimate::ensemble_mean)
        .def_readonly("ensemble_std", &ThresholdEstimate::ensemble_std)
        .def_readonly("n_instances", &ThresholdEstimate::n_instances)
        .def_readonly("n_excluded", &ThresholdEstimate::n_excluded);

    py::class_<ScalingFit>(m, "ScalingFit")
        .def_readonly("c", &ScalingFit::c)
        .def_readonly("c_err", &ScalingFit::c_err)
        .def_readonly("slope", &ScalingFit::slope)
        .def_readonly("slope_err", &ScalingFit::slope_err);

    py::class_<EpidemicParams>(m, "EpidemicParams")
        .def(py::init([](double beta, double delta, double initial_infection,
                         std::vector<double> initial_vector) {
                 EpidemicParams p;
                 p.beta = beta;
                 p.delta = delta;
                 p.initial_infection = initial_infection;
                 p.initial_vector = std::move(initial_vector);
                 p.validate();
                 return p;
             }),
             py::arg("beta") = 0.05, py::arg("delta") = 0.0,
             py::arg("initial_infection") = 0.5,
             py::arg("initial_vector") = std::vector<double>{})
        .def_readwrite("beta", &EpidemicParams::beta)
        .def_readwrite("delta", &EpidemicParams::delta)
        .def_readwrite("initial_infection", &EpidemicParams::initial_infection)
        .def_readwrite("initial_vector", &EpidemicParams::initial_vector);

    py::class_<InfectionTrajectory>(m, "InfectionTrajectory")
        .def_readonly("eta", &InfectionTrajectory::eta)
        .def_readonly("eta_std", &InfectionTrajectory::eta_std)
        .def_readonly("steps", &InfectionTrajectory::steps)
        .def_readonly("converged", &InfectionTrajectory::converged)
        .def_readonly("eta_final", &InfectionTrajectory::eta_final);

    // graph construction and photonics
    m.def("generate_er", &generate_er, py::arg("n"), py::arg("p"), py::arg("seed"));
    m.def("generate_waxman", &generate_waxman, py::arg("geo"), py::arg("seed"));
    m.def("photon_success_prob", &photon_success_prob, py::arg("d"), py::arg("photonic"));
    m.def("quantum_link_prob", &quantum_link_prob, py::arg("d"), py::arg("photonic"));
    m.def("apply_quantum_weights", &apply_quantum_weights, py::arg("graph"), py::arg("photonic"));
    m.def("expected_adjacency",
          [](const GeoParams& geo, const PhotonicParams& ph,
             const std::vector<std::pair<double, double>>& positions) {
              std::vector<Point> pts;
              pts.reserve(positions.size());
              for (auto& [x, y] : positions) pts.push_back({x, y});
              return expected_adjacency(geo, ph, pts);
          },
          py::arg("geo"), py::arg("photonic"), py::arg("positions"));
    m.def("sample_link_realization", &sample_link_realization, py::arg("weights"),
          py::arg("seed"));
    m.def("degree_stats", &degree_stats, py::arg("weights"));

    m.def("save_graph",
          [](const WeightedAdjacency& w, const std::vector<std::pair<double, double>>& positions,
             const std::string& path) {
              std::vector<Point> pts;
              pts.reserve(positions.size());
              for (auto& [x, y] : positions) pts.push_back({x, y});
              save_graph(w, pts, path);
          },
          py::arg("weights"), py::arg("positions"), py::arg("path"));
    m.def("load_graph",
          [](const std::string& path) {
              StoredGraph g = load_graph(path);
              std::vector<std::pair<double, double>> positions;
              positions.reserve(g.positions.size());
              for (const Point& p : g.positions) positions.emplace_back(p.x, p.y);
              return py::make_tuple(g.weights, positions);
          },
          py::arg("path"));

    // thresholds
    m.def("largest_eigenvalue",
          py::overload_cast<const WeightedAdjacency&, double, int>(&largest_eigenvalue),
          py::arg("weights"), py::arg("tol") = 1e-10, py::arg("max_iter") = 0);
    m.def("tau_kw", &tau_kw, py::arg("stats"));
    m.def("tau_mfa", &tau_mfa, py::arg("stats"));
    m.def("tau_spectral", &tau_spectral, py::arg("weights"));
    m.def("ensemble_threshold", &ensemble_threshold, py::arg("geo"), py::arg("photonic"),
          py::arg("method"), py::arg("n_outer"), py::arg("n_inner"), py::arg("master_seed"),
          py::arg("workers") = 1);
    m.def("fit_scaling",
          [](const std::vector<std::tuple<double, double, double>>& points) {
              std::vector<ScalingPoint> pts;
              pts.reserve(points.size());
              for (auto& [n, tau, sigma] : points) pts.push_back({n, tau, sigma});
              return fit_scaling(pts);
          },
          py::arg("points"), "points are (N, tau, sigma) tuples; sigma 0 means unweighted");
    m.def("fit_loglog",
          [](const std::vector<std::pair<double, double>>& points) {
              std::vector<LogLogPoint> pts;
              pts.reserve(points.size());
              for (auto& [k, tau] : points) pts.push_back({k, tau});
              return fit_loglog(pts);
          },
          py::arg("points"), "points are (mean_k, tau) pairs");

    // dynamics
    m.def("kw_solution", &kw_solution, py::arg("params"), py::arg("mean_degree"), py::arg("eta0"),
          py::arg("t_grid"));
    m.def("mnlds_step", &mnlds_step, py::arg("weights"), py::arg("p_prev"), py::arg("params"));
    m.def("run_mnlds", &run_mnlds, py::arg("weights"), py::arg("params"),
          py::arg("t_max") = 10000, py::arg("conv_tol") = 1e-8,
          py::arg("record_node_probs") = false);
    m.def("run_direct_sim", &run_direct_sim, py::arg("weights"), py::arg("params"),
          py::arg("t_max"), py::arg("n_runs"), py::arg("master_seed"));
    m.def("exact_markov_expectation", &exact_markov_expectation, py::arg("weights"),
          py::arg("params"), py::arg("p0"), py::arg("t_max"));

    // experiments
    m.def("run_experiment_file",
          [](const std::string& config_path, int workers) {
              ExperimentConfig cfg = ExperimentConfig::from_json_file(config_path);
              ExperimentReport report = run_experiment(cfg, workers);
              py::dict out;
              out["experiment"] = to_string(report.kind);
              out["wall_seconds"] = report.wall_seconds;
              out["output_files"] = report.output_files;
              py::list fits;
              for (const auto& f : report.fits) {
                  py::dict d;
                  d["model"] = f.model;
                  d["estimator"] = f.estimator;
                  d["c"] = f.fit.c;
                  d["c_err"] = f.fit.c_err;
                  if (f.fit.slope) d["slope"] = *f.fit.slope;
                  fits.append(d);
              }
              out["fits"] = fits;
              return out;
          },
          py::arg("config_path"), py::arg("workers") = 1);
    m.def("validate_config_file", [](const std::string& path) {
        ExperimentConfig::from_json_file(path);
        return true;
    });
}
