#include <doctest.h>

#include <string>

#include "qnet/errors.hpp"
#include "qnet/experiment.hpp"

using namespace qnet;

namespace {

const char* kMinimal = R"({
  "experiment": "threshold-scaling",
  "geo": {"r_max": 1600, "alpha_l": 226, "beta_l": 1.0, "n_nodes": 100},
  "photonic": {"gamma": 0.2, "n_photons": 1000},
  "n_values": [100, 200, 300],
  "ensemble_size": 5,
  "master_seed": 42,
  "output_dir": "out"
})";

} // namespace

TEST_CASE("minimal config parses with defaults applied") {
    ExperimentConfig cfg = ExperimentConfig::from_json_text(kMinimal);
    CHECK(cfg.experiment == ExperimentKind::ThresholdScaling);
    CHECK(cfg.geo.alpha_l == 226.0);
    CHECK(cfg.photonic.n_photons == 1000);
    CHECK(cfg.n_values == std::vector<int>{100, 200, 300});
    CHECK(cfg.ensemble_size == 5);
    CHECK(cfg.master_seed == 42);
    CHECK(cfg.inner_samples == 1);
    CHECK(cfg.n_runs == 20);
    CHECK(cfg.t_max == 10000);
}

TEST_CASE("config echo round-trips") {
    ExperimentConfig cfg = ExperimentConfig::from_json_text(kMinimal);
    ExperimentConfig again = ExperimentConfig::from_json_text(cfg.to_json_text());
    CHECK(again.experiment == cfg.experiment);
    CHECK(again.master_seed == cfg.master_seed);
    CHECK(again.n_values == cfg.n_values);
    CHECK(again.geo.r_max == cfg.geo.r_max);
}

TEST_CASE("unknown keys are named in the error") {
    std::string bad = std::string(kMinimal);
    bad.insert(bad.rfind('}'), R"(, "mystery_knob": 3)");
    try {
        ExperimentConfig::from_json_text(bad);
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(e.key == "mystery_knob");
    }

    std::string bad_nested = R"({
      "experiment": "threshold-scaling",
      "geo": {"r_max": 1600, "radius": 3},
      "photonic": {},
      "n_values": [100, 200, 300],
      "ensemble_size": 5,
      "master_seed": 1,
      "output_dir": "out"
    })";
    try {
        ExperimentConfig::from_json_text(bad_nested);
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(e.key == "geo.radius");
    }
}

TEST_CASE("missing required keys are named") {
    try {
        ExperimentConfig::from_json_text(R"({"experiment": "threshold-scaling"})");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(e.key == "geo");
    }
}

TEST_CASE("parse errors carry a line number") {
    try {
        ExperimentConfig::from_json_text("{\n  \"experiment\": \"threshold-scaling\",\n  oops\n}");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("type mismatches are rejected") {
    std::string bad = R"({
      "experiment": "threshold-scaling",
      "geo": {"r_max": "wide"},
      "photonic": {},
      "n_values": [100, 200, 300],
      "ensemble_size": 5,
      "master_seed": 1,
      "output_dir": "out"
    })";
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(bad), config_error);
}

TEST_CASE("per-experiment sweep requirements") {
    // dynamics sweep without delta_ratios
    std::string dyn = R"({
      "experiment": "dynamics-sweep",
      "geo": {"n_nodes": 100},
      "photonic": {},
      "ensemble_size": 1,
      "master_seed": 1,
      "output_dir": "out"
    })";
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(dyn), config_error);

    // threshold scaling without n_values
    std::string scaling = R"({
      "experiment": "threshold-scaling",
      "geo": {},
      "photonic": {},
      "ensemble_size": 1,
      "master_seed": 1,
      "output_dir": "out"
    })";
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(scaling), config_error);

    // radius sweep without r_max_values
    std::string radius = R"({
      "experiment": "radius-sweep",
      "geo": {"n_nodes": 50},
      "photonic": {},
      "ensemble_size": 1,
      "master_seed": 1,
      "output_dir": "out"
    })";
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(radius), config_error);
}

TEST_CASE("value range validation names the key") {
    std::string bad = std::string(kMinimal);
    bad.replace(bad.find("\"ensemble_size\": 5"), 18, "\"ensemble_size\": 0");
    try {
        ExperimentConfig::from_json_text(bad);
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(e.key == "ensemble_size");
    }
}
