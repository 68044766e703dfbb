#include "lncat/lrt.hpp"

#include <string>
#include <vector>

#include "lncat/chi_square.hpp"

namespace lncat {

TestResult run_lrt(std::span<const GroupSample> samples, double alpha) {
    if (samples.size() < 2) {
        throw TooFewGroups("the test needs at least 2 groups, got " +
                           std::to_string(samples.size()));
    }
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw AlphaOutOfRange("alpha must be in (0, 1), got " + std::to_string(alpha));
    }

    const std::vector<LogSummary> summaries = summarize_all(samples);
    std::vector<double> ybars;
    std::vector<double> s2s;
    for (const LogSummary& g : summaries) {
        if (!(g.s2 > 0.0)) {
            throw DegenerateSample("zero log-scale variance: likelihood ratio undefined");
        }
        ybars.push_back(g.ybar);
        s2s.push_back(g.s2);
    }

    const double ell_full = full_loglik(summaries, ybars, s2s);
    const RestrictedFit fit = fit_restricted(summaries);

    double lambda = 2.0 * (ell_full - fit.loglik);
    if (lambda < 0.0) {
        if (lambda < -1e-8) {
            throw InternalConsistencyError(
                "restricted log-likelihood exceeds the unrestricted maximum by more than slack");
        }
        lambda = 0.0;
    }

    TestResult result;
    result.method = Method::lrt;
    result.statistic = lambda;
    result.p_value = chi2_upper_tail(lambda, static_cast<int>(samples.size()) - 1);
    result.alpha = alpha;
    result.reject = result.p_value < alpha;
    return result;
}

}  // namespace lncat
