#include "lncat/estimation.hpp"

#include <cmath>
#include <string>

namespace lncat {

GroupSample make_group_sample(std::span<const double> raw) {
    if (raw.size() < 2) {
        throw TooFewObservations("group needs at least 2 observations, got " +
                                 std::to_string(raw.size()));
    }
    GroupSample sample;
    sample.n = static_cast<int>(raw.size());
    sample.observations.assign(raw.begin(), raw.end());
    sample.log_values.reserve(raw.size());
    for (std::size_t j = 0; j < raw.size(); ++j) {
        if (!(raw[j] > 0.0) || !std::isfinite(raw[j])) {
            throw NonPositiveObservation("observation " + std::to_string(j + 1) +
                                         " is not a finite positive number: " +
                                         std::to_string(raw[j]));
        }
        sample.log_values.push_back(std::log(raw[j]));
    }
    return sample;
}

LogSummary summarize_logs(std::span<const double> log_values) {
    const int n = static_cast<int>(log_values.size());
    // A constant group has s2 exactly 0; computing it would leave rounding
    // noise of order eps^2 that defeats the degenerate-sample guard.
    bool constant = true;
    for (double y : log_values) {
        if (y != log_values.front()) {
            constant = false;
            break;
        }
    }
    if (constant) return LogSummary{n, log_values.front(), 0.0};

    double sum = 0.0;
    for (double y : log_values) sum += y;
    const double ybar = sum / n;
    double ss = 0.0;
    for (double y : log_values) {
        const double d = y - ybar;
        ss += d * d;
    }
    return LogSummary{n, ybar, ss / n};
}

LogSummary summarize(const GroupSample& sample) {
    return summarize_logs(sample.log_values);
}

GroupEstimate estimate_group(const LogSummary& summary) {
    if (summary.s2 <= 0.0) {
        throw DegenerateSample("zero log-scale variance: all observations in a group are equal");
    }
    const double n = summary.n;
    GroupEstimate est;
    est.mu_hat = summary.ybar;
    est.sigma2_hat = summary.s2;
    est.eta_hat = summary.ybar + summary.s2 / 2.0;
    est.v_hat = summary.s2 / n + (n - 1.0) * summary.s2 * summary.s2 / (2.0 * n * n);
    return est;
}

namespace {

void check_theta_input(const ThetaInput& input) {
    if (input.etas.size() != input.vs.size()) {
        throw InvalidInput("etas and vs must have the same length");
    }
    if (input.etas.size() < 2) {
        throw TooFewGroups("theta statistic needs at least 2 groups");
    }
    for (double v : input.vs) {
        if (!(v > 0.0)) throw InvalidInput("all variances must be strictly positive");
    }
}

}  // namespace

double weighted_eta_mean(const ThetaInput& input) {
    check_theta_input(input);
    double wsum = 0.0;
    double wmean = 0.0;
    for (std::size_t i = 0; i < input.etas.size(); ++i) {
        const double w = 1.0 / input.vs[i];
        wsum += w;
        wmean += w * input.etas[i];
    }
    return wmean / wsum;
}

double theta_statistic(const ThetaInput& input) {
    check_theta_input(input);
    // Work relative to the first eta: theta is location invariant, and the
    // shift makes equal inputs give exactly zero.
    const double origin = input.etas.front();
    double wsum = 0.0;
    double wmean = 0.0;
    for (std::size_t i = 0; i < input.etas.size(); ++i) {
        const double w = 1.0 / input.vs[i];
        wsum += w;
        wmean += w * (input.etas[i] - origin);
    }
    wmean /= wsum;
    double theta = 0.0;
    for (std::size_t i = 0; i < input.etas.size(); ++i) {
        const double d = (input.etas[i] - origin) - wmean;
        theta += d * d / input.vs[i];
    }
    return theta;
}

std::vector<LogSummary> summarize_all(std::span<const GroupSample> samples) {
    std::vector<LogSummary> out;
    out.reserve(samples.size());
    for (const GroupSample& s : samples) out.push_back(summarize(s));
    return out;
}

}  // namespace lncat
