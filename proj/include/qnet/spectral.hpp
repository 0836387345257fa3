#pragma once

#include <cstdint>
#include <optional>

#include "qnet/degree.hpp"
#include "qnet/graph.hpp"
#include "qnet/matrix.hpp"

namespace qnet {

enum class Estimator { KW, MFA, AM, pAM };

// Disorder regimes for quantum threshold ensembles.
enum class SamplingMethod {
    Annealed1 = 1,     // expected adjacency Pi_ij * p_ij, no sampling
    Quenched2 = 2,     // sampled fiber topology, weights p_ij on its edges
    FullySampled3 = 3, // sampled topology and Bernoulli-sampled links
};

const char* to_string(Estimator e);
const char* to_string(SamplingMethod m);

struct ThresholdEstimate {
    double value = 0.0; // tau = beta/delta at criticality
    Estimator estimator = Estimator::KW;
    std::optional<SamplingMethod> method;
    double ensemble_mean = 0.0;
    double ensemble_std = 0.0;
    int n_instances = 1;
    int n_excluded = 0; // degenerate instances dropped from the average
};

struct SpectralResult {
    double lambda1 = 0.0;
    int iterations = 0;
    double residual = 0.0; // relative Rayleigh-quotient change at exit
};

// Dominant eigenvalue of a symmetric nonnegative matrix by power iteration.
// Starts from the all-ones vector; iterates the shifted matrix A + sigma*I
// (sigma = half the max row sum) so bipartite spectra with lambda_min =
// -lambda_1 still converge. Converged when the relative Rayleigh-quotient
// change drops below tol. One deterministic seeded-random restart before
// giving up. max_iter = 0 means 100 * n.
SpectralResult largest_eigenvalue(const WeightedAdjacency& w, double tol = 1e-10,
                                  int max_iter = 0);
SpectralResult largest_eigenvalue(const SparseLinks& links, double tol = 1e-10,
                                  int max_iter = 0);

// Ensemble helper: 1/lambda_1 evaluated at the default tolerance, with one
// relaxed-tolerance retry (1e-6, larger budget) for near-degenerate spectra
// where the strict Rayleigh-change stop is unattainable. Returns NaN for
// degenerate matrices and for instances that still refuse to converge;
// ensemble callers count NaN as an exclusion.
double ensemble_tau(const WeightedAdjacency& w);

// tau_KW = 1 / <k>. Throws degenerate_graph_error when <k> = 0.
ThresholdEstimate tau_kw(const DegreeStats& stats);

// tau_MFA = <k> / <k^2>. Throws degenerate_graph_error when <k^2> = 0.
ThresholdEstimate tau_mfa(const DegreeStats& stats);

// tau = 1 / lambda_1. Estimator is AM for binary kinds, pAM for
// probability-weighted matrices. Throws degenerate_graph_error when
// lambda_1 = 0.
ThresholdEstimate tau_spectral(const WeightedAdjacency& w);

// Ensemble spectral threshold for the quantum Waxman model under one of the
// three disorder regimes. Per-instance positions/topology/link draws all
// derive from master_seed, so results are identical for any worker count.
//   Method 1: n_outer position draws, expected adjacency each time.
//   Method 2: n_outer topology instances with weights p_ij.
//   Method 3: n_outer topologies x n_inner Bernoulli link realizations.
// Degenerate instances are excluded from the mean and counted; if every
// instance is degenerate the whole ensemble throws degenerate_graph_error.
ThresholdEstimate ensemble_threshold(const GeoParams& geo, const PhotonicParams& ph,
                                     SamplingMethod method, int n_outer, int n_inner,
                                     std::uint64_t master_seed, int workers = 1);

} // namespace qnet
