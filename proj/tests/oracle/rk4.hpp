#pragma once

// Fixed-step RK4 integration of the mean-degree SIS rate equation
//   deta/dt = b * eta * (1 - eta) - delta * eta,   b = beta * <k>.
// Test oracle for the closed-form solution.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

inline std::vector<double> rk4_kw(double b, double delta, double eta0,
                                  const std::vector<double>& t_grid, double h_max = 0.002) {
    auto f = [&](double eta) { return b * eta * (1.0 - eta) - delta * eta; };

    std::vector<double> out;
    out.reserve(t_grid.size());
    double t = 0.0;
    double eta = eta0;
    for (double target : t_grid) {
        double span = target - t;
        if (span > 0.0) {
            auto steps = static_cast<std::size_t>(std::ceil(span / h_max));
            double h = span / static_cast<double>(steps);
            for (std::size_t s = 0; s < steps; ++s) {
                double k1 = f(eta);
                double k2 = f(eta + 0.5 * h * k1);
                double k3 = f(eta + 0.5 * h * k2);
                double k4 = f(eta + h * k3);
                eta += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
            t = target;
        }
        out.push_back(eta);
    }
    return out;
}

} // namespace oracle
