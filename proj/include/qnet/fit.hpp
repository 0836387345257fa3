#pragma once

#include <optional>
#include <vector>

namespace qnet {

enum class FitModel { COverN, LogLogSlope };

struct ScalingFit {
    double c = 0.0;     // fitted constant (prefactor)
    double c_err = 0.0; // standard error of c
    FitModel model = FitModel::COverN;
    std::optional<double> slope;     // log-log slope, when fitted
    std::optional<double> slope_err; // its standard error
};

struct ScalingPoint {
    double n = 0.0;   // network size N
    double tau = 0.0; // ensemble mean threshold
    double sigma = 0.0; // std error of the mean; 0 = unknown
};

// Least-squares fit of tau = c / N (regression of tau on 1/N through the
// origin). Weighted by 1/sigma^2 when every point carries a positive sigma,
// ordinary least squares otherwise. The standard error is scaled by the
// residual variance, so exact synthetic data reports c_err ~ 0.
// Needs >= 3 points with distinct N.
ScalingFit fit_scaling(const std::vector<ScalingPoint>& points);

struct LogLogPoint {
    double k = 0.0;   // mean connectivity <k>
    double tau = 0.0; // threshold
};

// Two-parameter fit of log tau = log c + slope * log <k>. Reports the
// prefactor c = exp(intercept) and the fitted slope with standard errors.
// Needs >= 3 points with distinct k.
ScalingFit fit_loglog(const std::vector<LogLogPoint>& points);

} // namespace qnet
