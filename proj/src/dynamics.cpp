#include "qnet/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "qnet/errors.hpp"

namespace qnet {

namespace {

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string(what) + " must lie in [0,1]");
}

void check_coupling(const WeightedAdjacency& w, double beta) {
    if (beta * w.max_entry() > 1.0)
        throw std::invalid_argument("beta * max(A_ij) exceeds 1; infection factors would "
                                    "leave [0,1]");
}

double clamp_unit(double p) {
    if (p < 0.0) {
        if (p < -1e-12) throw std::logic_error("probability left [0,1] beyond round-off");
        return 0.0;
    }
    if (p > 1.0) {
        if (p > 1.0 + 1e-12) throw std::logic_error("probability left [0,1] beyond round-off");
        return 1.0;
    }
    return p;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// Synchronous update through the compressed link view. p_next and xi are
// caller-provided scratch so the hot loop never allocates.
void mnlds_step_links(const SparseLinks& links, const std::vector<double>& p_prev,
                      double beta, double delta, std::vector<double>& p_next) {
    std::size_t n = links.size();
    for (std::size_t i = 0; i < n; ++i) {
        double xi = 1.0;
        for (std::uint32_t e = links.offsets[i]; e < links.offsets[i + 1]; ++e)
            xi *= 1.0 - beta * links.weight[e] * p_prev[links.neighbor[e]];
        double p = p_prev[i];
        p_next[i] = clamp_unit(1.0 - (1.0 - p) * xi - delta * p * xi);
    }
}

} // namespace

void EpidemicParams::validate() const {
    check_probability(beta, "beta");
    check_probability(delta, "delta");
    check_probability(initial_infection, "initial_infection");
    for (double p : initial_vector) check_probability(p, "initial_vector entry");
}

std::vector<double> EpidemicParams::initial_probs(std::size_t n) const {
    if (!initial_vector.empty()) {
        if (initial_vector.size() != n)
            throw std::invalid_argument("initial_vector length does not match node count");
        return initial_vector;
    }
    return std::vector<double>(n, initial_infection);
}

InfectionTrajectory kw_solution(const EpidemicParams& params, double mean_degree, double eta0,
                                const std::vector<double>& t_grid) {
    params.validate();
    if (!(mean_degree > 0.0)) throw std::invalid_argument("mean degree must be positive");
    check_probability(eta0, "eta0");

    const double b = params.beta * mean_degree; // logistic saturation rate
    const double r = b - params.delta;          // linear growth rate

    InfectionTrajectory traj;
    traj.eta.reserve(t_grid.size());
    for (double t : t_grid) {
        if (t < 0.0) throw std::invalid_argument("t_grid times must be >= 0");
        double eta;
        if (eta0 == 0.0) {
            eta = 0.0; // disease-free fixed point
        } else if (b == 0.0) {
            eta = eta0 * std::exp(-params.delta * t);
        } else if (r == 0.0) {
            // critical case: deta/dt = -b eta^2
            eta = eta0 / (1.0 + b * eta0 * t);
        } else {
            // eta0 etaI / (eta0 + (etaI - eta0) e^{-rt}) with etaI = r/b,
            // rearranged through expm1 so near-critical rates keep accuracy
            double eta_limit = r / b;
            double den = -eta0 * std::expm1(-r * t) + eta_limit * std::exp(-r * t);
            eta = eta0 * eta_limit / den;
        }
        traj.eta.push_back(clamp_unit(eta));
    }
    traj.steps = static_cast<int>(t_grid.size());
    traj.converged = true;
    traj.eta_final = traj.eta.empty() ? 0.0 : traj.eta.back();
    return traj;
}

std::vector<double> mnlds_step(const WeightedAdjacency& w, const std::vector<double>& p_prev,
                               const EpidemicParams& params) {
    params.validate();
    check_coupling(w, params.beta);
    if (p_prev.size() != w.size())
        throw std::invalid_argument("probability vector length does not match node count");
    for (double p : p_prev) check_probability(p, "p_prev entry");

    std::vector<double> p_next(p_prev.size(), 0.0);
    mnlds_step_links(SparseLinks::from(w), p_prev, params.beta, params.delta, p_next);
    return p_next;
}

InfectionTrajectory run_mnlds(const WeightedAdjacency& w, const EpidemicParams& params,
                              int t_max, double conv_tol, bool record_node_probs) {
    params.validate();
    check_coupling(w, params.beta);
    if (t_max < 1) throw std::invalid_argument("t_max must be >= 1");

    SparseLinks links = SparseLinks::from(w);
    std::vector<double> p = params.initial_probs(w.size());
    for (double q : p) check_probability(q, "initial probability");
    std::vector<double> p_next(p.size(), 0.0);

    InfectionTrajectory traj;
    traj.eta.push_back(mean_of(p));
    if (record_node_probs) traj.node_probs.push_back(p);

    for (int t = 1; t <= t_max; ++t) {
        mnlds_step_links(links, p, params.beta, params.delta, p_next);
        double max_change = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            max_change = std::max(max_change, std::abs(p_next[i] - p[i]));
        p.swap(p_next);
        traj.eta.push_back(mean_of(p));
        if (record_node_probs) traj.node_probs.push_back(p);
        traj.steps = t;
        if (max_change < conv_tol) {
            traj.converged = true;
            break;
        }
    }
    traj.eta_final = traj.eta.back();
    return traj;
}

BinaryState direct_sim_step(const WeightedAdjacency& w, const BinaryState& state,
                            const EpidemicParams& params, Rng& rng) {
    params.validate();
    check_coupling(w, params.beta);
    if (state.sigma.size() != w.size())
        throw std::invalid_argument("state length does not match node count");

    std::size_t n = w.size();
    const auto& data = w.data();

    // xi_i = prod over infected neighbors j of (1 - beta A_ij)
    std::vector<double> xi(n, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
        if (!state.sigma[j]) continue;
        for (std::size_t i = 0; i < n; ++i) {
            double v = data[j * n + i];
            if (v != 0.0) xi[i] *= 1.0 - params.beta * v;
        }
    }

    BinaryState next;
    next.sigma.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool infected_by_neighbors = rng.uniform01() < 1.0 - xi[i];
        bool cured = rng.uniform01() < params.delta;
        if (state.sigma[i])
            next.sigma[i] = (cured && !infected_by_neighbors) ? 0 : 1;
        else
            next.sigma[i] = infected_by_neighbors ? 1 : 0;
    }
    return next;
}

InfectionTrajectory run_direct_sim(const WeightedAdjacency& w, const EpidemicParams& params,
                                   int t_max, int n_runs, std::uint64_t master_seed) {
    params.validate();
    check_coupling(w, params.beta);
    if (t_max < 1) throw std::invalid_argument("t_max must be >= 1");
    if (n_runs < 1) throw std::invalid_argument("n_runs must be >= 1");

    std::size_t n = w.size();
    SparseLinks links = SparseLinks::from(w);
    std::vector<double> p0 = params.initial_probs(n);
    for (double q : p0) check_probability(q, "initial probability");

    std::vector<double> sum(static_cast<std::size_t>(t_max) + 1, 0.0);
    std::vector<double> sum_sq(static_cast<std::size_t>(t_max) + 1, 0.0);
    int absorbed_runs = 0;

    std::vector<std::uint8_t> sigma(n), sigma_next(n);
    std::vector<double> xi(n);

    for (int run = 0; run < n_runs; ++run) {
        std::uint64_t run_seed = derive_seed(master_seed, stream::run, static_cast<std::uint64_t>(run));
        Rng init_rng(derive_seed(run_seed, stream::initial_state));
        Rng dyn_rng(derive_seed(run_seed, stream::dynamics));

        std::size_t infected = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sigma[i] = init_rng.bernoulli(p0[i]) ? 1 : 0;
            infected += sigma[i];
        }

        auto record = [&](int t, double eta) {
            sum[t] += eta;
            sum_sq[t] += eta * eta;
        };
        record(0, static_cast<double>(infected) / static_cast<double>(n));

        for (int t = 1; t <= t_max; ++t) {
            if (infected == 0) { // absorbing disease-free state
                record(t, 0.0);
                continue;
            }
            std::fill(xi.begin(), xi.end(), 1.0);
            for (std::size_t j = 0; j < n; ++j) {
                if (!sigma[j]) continue;
                for (std::uint32_t e = links.offsets[j]; e < links.offsets[j + 1]; ++e)
                    xi[links.neighbor[e]] *= 1.0 - params.beta * links.weight[e];
            }
            std::size_t infected_next = 0;
            for (std::size_t i = 0; i < n; ++i) {
                bool hit = dyn_rng.uniform01() < 1.0 - xi[i];
                bool cured = dyn_rng.uniform01() < params.delta;
                std::uint8_t s = sigma[i] ? ((cured && !hit) ? 0 : 1) : (hit ? 1 : 0);
                sigma_next[i] = s;
                infected_next += s;
            }
            sigma.swap(sigma_next);
            infected = infected_next;
            record(t, static_cast<double>(infected) / static_cast<double>(n));
        }
        if (infected == 0) ++absorbed_runs;
    }

    InfectionTrajectory traj;
    traj.eta.resize(sum.size());
    traj.eta_std.resize(sum.size());
    for (std::size_t t = 0; t < sum.size(); ++t) {
        double mean = sum[t] / n_runs;
        traj.eta[t] = mean;
        double var = n_runs > 1 ? std::max(0.0, (sum_sq[t] - n_runs * mean * mean) / (n_runs - 1))
                                : 0.0;
        traj.eta_std[t] = std::sqrt(var);
    }
    traj.steps = t_max;
    traj.converged = absorbed_runs == n_runs;
    traj.eta_final = traj.eta.back();
    return traj;
}

} // namespace qnet
