#include "qnet/spectral.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qnet/errors.hpp"
#include "qnet/parallel.hpp"
#include "qnet/photonic.hpp"
#include "qnet/rng.hpp"

namespace qnet {

const char* to_string(Estimator e) {
    switch (e) {
        case Estimator::KW: return "KW";
        case Estimator::MFA: return "MFA";
        case Estimator::AM: return "AM";
        case Estimator::pAM: return "pAM";
    }
    return "?";
}

const char* to_string(SamplingMethod m) {
    switch (m) {
        case SamplingMethod::Annealed1: return "1";
        case SamplingMethod::Quenched2: return "2";
        case SamplingMethod::FullySampled3: return "3";
    }
    return "?";
}

namespace {

void matvec(const SparseLinks& links, const std::vector<double>& x, std::vector<double>& y) {
    std::size_t n = links.size();
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::uint32_t e = links.offsets[i]; e < links.offsets[i + 1]; ++e)
            s += links.weight[e] * x[links.neighbor[e]];
        y[i] = s;
    }
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// One power-iteration pass on A + sigma*I from the given start vector.
// Returns true on convergence; lambda/iters/residual are always filled.
bool power_pass(const SparseLinks& links, double sigma, std::vector<double> v, double tol,
                int max_iter, double& lambda, int& iters, double& residual) {
    std::size_t n = links.size();
    std::vector<double> av(n, 0.0);

    double nv = norm2(v);
    for (double& x : v) x /= nv;

    double rayleigh_prev = std::numeric_limits<double>::quiet_NaN();
    for (int it = 1; it <= max_iter; ++it) {
        matvec(links, v, av);
        // Rayleigh quotient of the unshifted matrix; v is unit length
        double rayleigh = 0.0;
        for (std::size_t i = 0; i < n; ++i) rayleigh += v[i] * av[i];

        double change = std::isnan(rayleigh_prev)
                            ? std::numeric_limits<double>::infinity()
                            : std::abs(rayleigh - rayleigh_prev) /
                                  std::max(std::abs(rayleigh), std::numeric_limits<double>::min());
        lambda = rayleigh;
        iters = it;
        residual = change;
        if (change <= tol) return true;
        rayleigh_prev = rayleigh;

        double nu = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            av[i] += sigma * v[i];
            nu += av[i] * av[i];
        }
        nu = std::sqrt(nu);
        if (nu == 0.0) { // only reachable for the zero matrix with sigma = 0
            lambda = 0.0;
            residual = 0.0;
            return true;
        }
        for (std::size_t i = 0; i < n; ++i) v[i] = av[i] / nu;
    }
    return false;
}

} // namespace

SpectralResult largest_eigenvalue(const SparseLinks& links, double tol, int max_iter) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    std::size_t n = links.size();
    if (n == 0) return {0.0, 0, 0.0};
    if (max_iter <= 0) max_iter = 100 * static_cast<int>(n);

    double max_row_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::uint32_t e = links.offsets[i]; e < links.offsets[i + 1]; ++e)
            s += links.weight[e];
        max_row_sum = std::max(max_row_sum, s);
    }
    if (max_row_sum == 0.0) return {0.0, 0, 0.0};

    // Shift by half the row-sum bound: keeps the dominant eigenvalue of
    // A + sigma*I simple even when the spectrum is symmetric (bipartite
    // graphs have -lambda_1 as an eigenvalue and plain iteration stalls).
    double sigma = 0.5 * max_row_sum;

    SpectralResult result;
    std::vector<double> start(n, 1.0);
    if (power_pass(links, sigma, start, tol, max_iter, result.lambda1, result.iterations,
                   result.residual))
        return result;

    // Deterministic seeded restart before giving up.
    Rng rng(derive_seed(0x716e6574ULL, stream::restart));
    for (double& x : start) x = 0.5 + rng.uniform01();
    if (power_pass(links, sigma, start, tol, max_iter, result.lambda1, result.iterations,
                   result.residual))
        return result;

    throw no_convergence_error("power iteration did not converge after " +
                                   std::to_string(max_iter) + " iterations (residual " +
                                   std::to_string(result.residual) + ")",
                               result.residual);
}

SpectralResult largest_eigenvalue(const WeightedAdjacency& w, double tol, int max_iter) {
    return largest_eigenvalue(SparseLinks::from(w), tol, max_iter);
}

double ensemble_tau(const WeightedAdjacency& w) {
    SpectralResult sr;
    try {
        sr = largest_eigenvalue(w);
    } catch (const no_convergence_error&) {
        try {
            sr = largest_eigenvalue(w, 1e-6, 400 * static_cast<int>(w.size()));
        } catch (const no_convergence_error&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    }
    return sr.lambda1 > 0.0 ? 1.0 / sr.lambda1 : std::numeric_limits<double>::quiet_NaN();
}

ThresholdEstimate tau_kw(const DegreeStats& stats) {
    if (!(stats.mean_degree > 0.0))
        throw degenerate_graph_error("KW threshold undefined: mean degree is zero");
    ThresholdEstimate t;
    t.value = 1.0 / stats.mean_degree;
    t.estimator = Estimator::KW;
    t.ensemble_mean = t.value;
    return t;
}

ThresholdEstimate tau_mfa(const DegreeStats& stats) {
    if (!(stats.second_moment > 0.0))
        throw degenerate_graph_error("MFA threshold undefined: <k^2> is zero");
    ThresholdEstimate t;
    t.value = stats.mean_degree / stats.second_moment;
    t.estimator = Estimator::MFA;
    t.ensemble_mean = t.value;
    return t;
}

ThresholdEstimate tau_spectral(const WeightedAdjacency& w) {
    SpectralResult sr = largest_eigenvalue(w);
    if (!(sr.lambda1 > 0.0))
        throw degenerate_graph_error("spectral threshold undefined: lambda_1 is zero");
    ThresholdEstimate t;
    t.value = 1.0 / sr.lambda1;
    t.estimator = w.kind() == WeightKind::ProbabilityWeighted ? Estimator::pAM : Estimator::AM;
    t.ensemble_mean = t.value;
    return t;
}

ThresholdEstimate ensemble_threshold(const GeoParams& geo, const PhotonicParams& ph,
                                     SamplingMethod method, int n_outer, int n_inner,
                                     std::uint64_t master_seed, int workers) {
    geo.validate();
    ph.validate();
    if (n_outer < 1) throw std::invalid_argument("n_outer must be >= 1");
    if (method == SamplingMethod::FullySampled3 && n_inner < 1)
        throw std::invalid_argument("method 3 needs n_inner >= 1");
    if (method != SamplingMethod::FullySampled3) n_inner = 1;

    const std::size_t total = static_cast<std::size_t>(n_outer) * n_inner;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> taus(total, nan);

    // Outer instances share their seeds across methods: method 2 reuses
    // method 1's positions and method 3 reuses method 2's topologies, as in
    // the layered sampling picture. Only the inner link draw gets a method
    // salt of its own.
    parallel_for(static_cast<std::size_t>(n_outer), workers, [&](std::size_t outer) {
        std::uint64_t inst_seed = derive_seed(master_seed, stream::instance, outer);
        auto tau_of = [](const WeightedAdjacency& m) { return ensemble_tau(m); };

        switch (method) {
            case SamplingMethod::Annealed1: {
                auto positions =
                    sample_disk_positions(static_cast<std::size_t>(geo.n_nodes), geo.r_max,
                                          derive_seed(inst_seed, stream::positions));
                taus[outer] = tau_of(expected_adjacency(geo, ph, positions));
                break;
            }
            case SamplingMethod::Quenched2: {
                SpatialGraph g = generate_waxman(geo, inst_seed);
                taus[outer] = tau_of(apply_quantum_weights(g, ph));
                break;
            }
            case SamplingMethod::FullySampled3: {
                SpatialGraph g = generate_waxman(geo, inst_seed);
                WeightedAdjacency pam = apply_quantum_weights(g, ph);
                for (int inner = 0; inner < n_inner; ++inner) {
                    std::uint64_t link_seed =
                        derive_seed(inst_seed, stream::links, static_cast<std::uint64_t>(inner));
                    taus[outer * n_inner + inner] = tau_of(sample_link_realization(pam, link_seed));
                }
                break;
            }
        }
    });

    double sum = 0.0;
    int kept = 0;
    for (double t : taus)
        if (!std::isnan(t)) {
            sum += t;
            ++kept;
        }
    if (kept == 0)
        throw degenerate_graph_error("every ensemble instance was degenerate (no edges)");

    double mean = sum / kept;
    double ss = 0.0;
    for (double t : taus)
        if (!std::isnan(t)) ss += (t - mean) * (t - mean);
    double stddev = kept > 1 ? std::sqrt(ss / (kept - 1)) : 0.0;

    ThresholdEstimate out;
    out.value = mean;
    out.estimator =
        method == SamplingMethod::FullySampled3 ? Estimator::AM : Estimator::pAM;
    out.method = method;
    out.ensemble_mean = mean;
    out.ensemble_std = stddev;
    out.n_instances = kept;
    out.n_excluded = static_cast<int>(total) - kept;
    return out;
}

} // namespace qnet
