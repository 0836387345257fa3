#include <doctest.h>

#include <cmath>

#include "qnet/errors.hpp"
#include "qnet/fit.hpp"

using namespace qnet;

TEST_CASE("exact c/N data recovers c with ~zero error") {
    std::vector<ScalingPoint> pts;
    for (double n : {100.0, 200.0, 400.0, 800.0}) pts.push_back({n, 5.0 / n, 0.0});
    ScalingFit fit = fit_scaling(pts);
    CHECK(fit.c == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(fit.c_err < 1e-10);
}

TEST_CASE("weighted fit honors per-point variances") {
    // one outlier with a huge sigma should barely move the fit
    std::vector<ScalingPoint> pts{{100.0, 0.05, 1e-4},
                                  {200.0, 0.025, 1e-4},
                                  {400.0, 0.0125, 1e-4},
                                  {800.0, 0.1, 10.0}};
    ScalingFit fit = fit_scaling(pts);
    CHECK(fit.c == doctest::Approx(5.0).epsilon(1e-3));
}

TEST_CASE("noisy data reports a sane standard error") {
    std::vector<ScalingPoint> pts{{100.0, 0.051, 0.0},
                                  {200.0, 0.0248, 0.0},
                                  {400.0, 0.0126, 0.0},
                                  {800.0, 0.00627, 0.0}};
    ScalingFit fit = fit_scaling(pts);
    CHECK(fit.c == doctest::Approx(5.0).epsilon(0.05));
    CHECK(fit.c_err > 0.0);
    CHECK(fit.c_err < 0.5);
}

TEST_CASE("fit preconditions") {
    CHECK_THROWS_AS(fit_scaling({{100.0, 0.05, 0.0}, {200.0, 0.025, 0.0}}),
                    insufficient_data_error);
    CHECK_THROWS_AS(
        fit_scaling({{100.0, 0.05, 0.0}, {100.0, 0.06, 0.0}, {200.0, 0.025, 0.0}}),
        insufficient_data_error);
}

TEST_CASE("log-log fit recovers slope and prefactor of an exact power law") {
    std::vector<LogLogPoint> pts;
    for (double k : {4.0, 8.0, 16.0, 32.0}) pts.push_back({k, 2.0 / k});
    ScalingFit fit = fit_loglog(pts);
    REQUIRE(fit.slope.has_value());
    CHECK(*fit.slope == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(fit.c == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(*fit.slope_err < 1e-10);

    // k-regular identity tau * k = 1 corresponds to slope -1, c = 1
    std::vector<LogLogPoint> regular;
    for (double k : {3.0, 5.0, 9.0}) regular.push_back({k, 1.0 / k});
    ScalingFit unit = fit_loglog(regular);
    CHECK(*unit.slope == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(unit.c == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("log-log fit rejects bad inputs") {
    CHECK_THROWS_AS(fit_loglog({{4.0, 0.5}, {8.0, 0.25}}), insufficient_data_error);
    CHECK_THROWS_AS(fit_loglog({{4.0, 0.5}, {4.0, 0.4}, {8.0, 0.25}}), insufficient_data_error);
    CHECK_THROWS_AS(fit_loglog({{4.0, 0.5}, {0.0, 0.4}, {8.0, 0.25}}), insufficient_data_error);
}
