#include "lncat/cat.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lncat/parallel.hpp"

namespace lncat {

std::string method_name(Method method) {
    return method == Method::cat ? "cat" : "lrt";
}

Method method_from_name(const std::string& name) {
    if (name == "cat") return Method::cat;
    if (name == "lrt") return Method::lrt;
    throw InvalidInput("unknown method '" + name + "' (expected cat or lrt)");
}

double pvalue_right(const ReplicateSet& replicates, double observed) {
    std::int64_t count = 0;
    for (double v : replicates.values) {
        if (v > observed) ++count;
    }
    return static_cast<double>(count) / replicates.m;
}

double pvalue_left(const ReplicateSet& replicates, double observed) {
    std::int64_t count = 0;
    for (double v : replicates.values) {
        if (v < observed) ++count;
    }
    return static_cast<double>(count) / replicates.m;
}

double pvalue_two_sided(const ReplicateSet& replicates, double observed) {
    const double p1 = pvalue_left(replicates, observed);
    const double p = 2.0 * std::min(p1, 1.0 - p1);
    return std::clamp(p, 0.0, 1.0);
}

double critical_value_upper(const ReplicateSet& replicates, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw AlphaOutOfRange("alpha must be in (0, 1), got " + std::to_string(alpha));
    }
    const double target = (1.0 - alpha) * replicates.m;
    if (target < 1.0) {
        throw AlphaOutOfRange("(1 - alpha) * m must be at least 1");
    }
    const auto rank = static_cast<std::int64_t>(std::ceil(target));
    return replicates.values[static_cast<std::size_t>(rank) - 1];
}

double simulate_replicate(const RestrictedFit& fit, std::span<const int> ns, RngStream stream) {
    const std::size_t k = fit.sigma2_rml.size();
    if (ns.size() != k) throw InvalidInput("group-size list does not match the fit");

    ThetaInput input;
    input.etas.resize(k);
    input.vs.resize(k);
    std::vector<double> draws;

    constexpr int kMaxAttempts = 100;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        RngStream rng = stream.child(static_cast<std::uint64_t>(attempt));
        bool degenerate = false;
        for (std::size_t i = 0; i < k && !degenerate; ++i) {
            const int n = ns[i];
            const double sd = std::sqrt(fit.sigma2_rml[i]);
            draws.resize(static_cast<std::size_t>(n));
            for (double& y : draws) y = rng.next_normal(fit.mu_rml[i], sd);
            const LogSummary summary = summarize_logs(draws);
            if (summary.s2 <= 0.0) {
                degenerate = true;
                break;
            }
            const GroupEstimate est = estimate_group(summary);
            input.etas[i] = est.eta_hat;
            input.vs[i] = est.v_hat;
        }
        if (!degenerate) return theta_statistic(input);
    }
    throw InternalConsistencyError(
        "replicate redraw cap hit: simulated groups keep collapsing to zero variance");
}

ReplicateSet generate_replicates(const RestrictedFit& fit, std::span<const int> ns, int m,
                                 std::uint64_t seed, int threads) {
    if (!fit.converged) throw InvalidInput("replicates require a converged restricted fit");
    for (int n : ns) {
        if (n < 2) throw InvalidInput("every simulated group needs n >= 2");
    }
    ReplicateSet replicates;
    replicates.m = m;
    replicates.seed = seed;
    replicates.values.resize(static_cast<std::size_t>(m));

    const RngStream root(seed);
    parallel_for(m, threads, [&](int l) {
        replicates.values[static_cast<std::size_t>(l)] =
            simulate_replicate(fit, ns, root.child(static_cast<std::uint64_t>(l)));
    });
    std::sort(replicates.values.begin(), replicates.values.end());
    return replicates;
}

TestResult run_cat(std::span<const GroupSample> samples, int m, std::uint64_t seed, double alpha,
                   int threads) {
    if (samples.size() < 2) {
        throw TooFewGroups("the test needs at least 2 groups, got " +
                           std::to_string(samples.size()));
    }
    if (m < 100) {
        throw MTooSmall("replicate count must be at least 100, got " + std::to_string(m));
    }
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw AlphaOutOfRange("alpha must be in (0, 1), got " + std::to_string(alpha));
    }

    const std::vector<LogSummary> summaries = summarize_all(samples);
    ThetaInput input;
    std::vector<int> ns;
    for (const LogSummary& g : summaries) {
        const GroupEstimate est = estimate_group(g);
        input.etas.push_back(est.eta_hat);
        input.vs.push_back(est.v_hat);
        ns.push_back(g.n);
    }
    const double theta_obs = theta_statistic(input);

    const RestrictedFit fit = fit_restricted(summaries);
    const ReplicateSet replicates = generate_replicates(fit, ns, m, seed, threads);

    TestResult result;
    result.method = Method::cat;
    result.statistic = theta_obs;
    result.p_value = pvalue_right(replicates, theta_obs);
    result.critical_value = critical_value_upper(replicates, alpha);
    result.alpha = alpha;
    result.m = m;
    result.seed = seed;
    result.reject = result.p_value < alpha;
    return result;
}

}  // namespace lncat
