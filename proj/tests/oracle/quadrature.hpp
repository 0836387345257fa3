#pragma once

// Quadrature prediction of the large-N scaling constant c = lim N tau_KW.
// <k>/N converges to the mean edge probability over the disk line-picking
// distribution, so c = 1 / E[Pi(d)] classically and 1 / E[Pi(d) p(d)] for
// the quantum model. Independent of the graph-sampling code paths.

#include <cmath>
#include <numbers>

#include "qnet/graph.hpp"
#include "qnet/photonic.hpp"

namespace oracle {

// density of the distance between two uniform points in a disk of radius R
inline double disk_pair_density(double d, double r) {
    double u = d / (2.0 * r);
    if (u >= 1.0) return 0.0;
    return (2.0 * d / (r * r)) * (2.0 / std::numbers::pi) *
           (std::acos(u) - u * std::sqrt(1.0 - u * u));
}

template <typename F>
double disk_pair_mean(double r, F&& f, int panels = 400000) {
    double h = 2.0 * r / panels;
    double acc = 0.0;
    for (int i = 0; i <= panels; ++i) {
        double d = i * h;
        double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * disk_pair_density(d, r) * f(d);
    }
    return acc * h / 3.0;
}

inline double scaling_c_classical(const qnet::GeoParams& geo) {
    double mean = disk_pair_mean(geo.r_max, [&](double d) {
        return geo.beta_l * std::exp(-d / geo.alpha_l);
    });
    return 1.0 / mean;
}

inline double scaling_c_quantum(const qnet::GeoParams& geo, const qnet::PhotonicParams& ph) {
    double mean = disk_pair_mean(geo.r_max, [&](double d) {
        return geo.beta_l * std::exp(-d / geo.alpha_l) * qnet::quantum_link_prob(d, ph);
    });
    return 1.0 / mean;
}

} // namespace oracle
