#include "qnet/fit.hpp"

#include <cmath>
#include <set>

#include "qnet/errors.hpp"

namespace qnet {

ScalingFit fit_scaling(const std::vector<ScalingPoint>& points) {
    if (points.size() < 3)
        throw insufficient_data_error("scaling fit needs at least 3 points");
    std::set<double> distinct;
    for (const auto& p : points) distinct.insert(p.n);
    if (distinct.size() != points.size())
        throw insufficient_data_error("scaling fit needs distinct N values");

    bool weighted = true;
    for (const auto& p : points)
        if (!(p.sigma > 0.0)) weighted = false;

    // regression of tau on x = 1/N through the origin
    double sxx = 0.0, sxy = 0.0;
    for (const auto& p : points) {
        double w = weighted ? 1.0 / (p.sigma * p.sigma) : 1.0;
        double x = 1.0 / p.n;
        sxx += w * x * x;
        sxy += w * x * p.tau;
    }
    double c = sxy / sxx;

    double rss = 0.0;
    for (const auto& p : points) {
        double w = weighted ? 1.0 / (p.sigma * p.sigma) : 1.0;
        double r = p.tau - c / p.n;
        rss += w * r * r;
    }
    double dof = static_cast<double>(points.size()) - 1.0;
    double s2 = rss / dof;

    ScalingFit fit;
    fit.model = FitModel::COverN;
    fit.c = c;
    fit.c_err = std::sqrt(s2 / sxx);
    return fit;
}

ScalingFit fit_loglog(const std::vector<LogLogPoint>& points) {
    if (points.size() < 3)
        throw insufficient_data_error("log-log fit needs at least 3 points");
    std::set<double> distinct;
    for (const auto& p : points) distinct.insert(p.k);
    if (distinct.size() != points.size())
        throw insufficient_data_error("log-log fit needs distinct <k> values");
    for (const auto& p : points)
        if (!(p.k > 0.0 && p.tau > 0.0))
            throw insufficient_data_error("log-log fit needs positive <k> and tau");

    double n = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& p : points) {
        double x = std::log(p.k);
        double y = std::log(p.tau);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    double slope = (n * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / n;

    double rss = 0.0;
    for (const auto& p : points) {
        double r = std::log(p.tau) - (intercept + slope * std::log(p.k));
        rss += r * r;
    }
    double s2 = rss / (n - 2.0);
    double slope_err = std::sqrt(s2 * n / denom);
    double intercept_err = std::sqrt(s2 * sxx / denom);

    ScalingFit fit;
    fit.model = FitModel::LogLogSlope;
    fit.slope = slope;
    fit.slope_err = slope_err;
    fit.c = std::exp(intercept);
    fit.c_err = fit.c * intercept_err;
    return fit;
}

} // namespace qnet
