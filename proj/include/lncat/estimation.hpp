#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "lncat/errors.hpp"

namespace lncat {

/// One population's raw positive observations together with their logs.
struct GroupSample {
    std::vector<double> observations;  ///< original-scale values, all > 0
    std::vector<double> log_values;    ///< elementwise log of observations
    int n = 0;                         ///< group size, >= 2
};

/// Sufficient statistics of a group on the log scale.
///
/// s2 is the maximum likelihood variance (divisor n, not n-1); the whole
/// test pipeline is defined through MLEs and never uses the unbiased form.
struct LogSummary {
    int n = 0;
    double ybar = 0.0;
    double s2 = 0.0;
};

/// Unrestricted per-group MLEs and the plug-in variance of eta_hat.
struct GroupEstimate {
    double mu_hat = 0.0;
    double sigma2_hat = 0.0;
    double eta_hat = 0.0;  ///< mu_hat + sigma2_hat / 2, the log of the group mean
    double v_hat = 0.0;    ///< sigma2_hat/n + (n-1) sigma2_hat^2 / (2 n^2)

    /// Estimated population mean on the original scale.
    [[nodiscard]] double phi_hat() const { return std::exp(eta_hat); }
};

/// Inputs of the scalar heterogeneity statistic: k etas with their variances.
struct ThetaInput {
    std::vector<double> etas;
    std::vector<double> vs;  ///< strictly positive, same length as etas
};

/// Validate raw observations and attach their logs.
///
/// @throws NonPositiveObservation if any value is <= 0
/// @throws TooFewObservations if fewer than 2 values are given
[[nodiscard]] GroupSample make_group_sample(std::span<const double> raw);

/// Log-scale mean and MLE variance (two-pass, divisor n).
[[nodiscard]] LogSummary summarize(const GroupSample& sample);

/// Same computation on a bare vector of log-scale values; the replicate loop
/// uses this so simulated and observed statistics share one formula path.
[[nodiscard]] LogSummary summarize_logs(std::span<const double> log_values);

/// Per-group MLEs of (mu, sigma2, eta) and the plug-in variance v_hat.
///
/// @throws DegenerateSample if the summary has zero variance
[[nodiscard]] GroupEstimate estimate_group(const LogSummary& summary);

/// Weighted mean of the etas with weights 1/v_i.
[[nodiscard]] double weighted_eta_mean(const ThetaInput& input);

/// theta = sum_i (eta_i - eta_bar)^2 / v_i, the statistic whose null value
/// is 0 exactly when all etas coincide.
///
/// @throws InvalidInput on mismatched lengths, k < 2, or non-positive v
[[nodiscard]] double theta_statistic(const ThetaInput& input);

/// Summaries for a whole dataset, in group order.
[[nodiscard]] std::vector<LogSummary> summarize_all(std::span<const GroupSample> samples);

}  // namespace lncat
