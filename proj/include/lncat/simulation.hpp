#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lncat/cat.hpp"
#include "lncat/lrt.hpp"

namespace lncat {

/// One simulation configuration: true parameters, sample sizes, level,
/// experiment count, CAT replicate count, master seed and the methods to run.
struct Scenario {
    std::string id = "scenario";
    int k = 0;
    std::vector<int> ns;
    std::vector<double> mus;
    std::vector<double> sigma2s;
    double alpha = 0.05;
    int reps = 2000;
    int m = 1000;
    std::uint64_t seed = 0;
    std::vector<Method> methods;
};

/// True when all eta_i = mu_i + sigma2_i / 2 coincide within 1e-12.
[[nodiscard]] bool scenario_is_null(const Scenario& scenario);

/// @throws InvalidInput / AlphaOutOfRange / MTooSmall on a bad configuration
void validate_scenario(const Scenario& scenario);

/// Per-method aggregate over the study's experiments. The per-experiment
/// p-values and statistics are retained (ordered by experiment index) so
/// calibration diagnostics can run on the raw values.
struct MethodStudy {
    Method method = Method::cat;
    double rejection_rate = 0.0;
    double mc_std_error = 0.0;  ///< sqrt(p (1 - p) / reps)
    double mean_p_value = 0.0;
    int failures = 0;
    double wall_time_s = 0.0;
    std::vector<double> p_values;    ///< successes only, experiment order
    std::vector<double> statistics;  ///< successes only, experiment order
};

struct StudyResult {
    Scenario scenario;
    bool is_null = false;
    std::vector<MethodStudy> methods;
};

/// Draw one experiment's data: group i holds n_i values exp(z),
/// z ~ Normal(mu_i, sigma2_i). Deterministic per stream.
[[nodiscard]] std::vector<GroupSample> draw_experiment(const Scenario& scenario, RngStream stream);

/// Run scenario.reps independent experiments, applying every requested method
/// to the same data, and aggregate rejection rates at scenario.alpha.
/// Experiments may run concurrently; substreams are pre-assigned from the
/// study seed, so the statistical outputs are identical for any thread count.
///
/// A failing experiment (e.g. NoConvergence) is excluded and counted; if more
/// than 1% of experiments fail for some method the study itself fails.
///
/// @throws TooManyFailures and everything validate_scenario throws
[[nodiscard]] StudyResult run_study(const Scenario& scenario, int threads = 1);

}  // namespace lncat
