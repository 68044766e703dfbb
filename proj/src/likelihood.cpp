#include "lncat/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lncat/minimize.hpp"

namespace lncat {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double group_loglik(const LogSummary& g, double mu, double sigma2) {
    const double n = g.n;
    const double d = g.ybar - mu;
    return -0.5 * n * std::log(kTwoPi * sigma2) - (n * g.s2 + n * d * d) / (2.0 * sigma2);
}

}  // namespace

double full_loglik(std::span<const LogSummary> summaries, std::span<const double> mus,
                   std::span<const double> sigma2s) {
    if (summaries.size() != mus.size() || summaries.size() != sigma2s.size()) {
        throw InvalidInput("summaries, mus and sigma2s must have the same length");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < summaries.size(); ++i) {
        if (!(sigma2s[i] > 0.0)) {
            throw NonPositiveVariance("sigma2 for group " + std::to_string(i + 1) +
                                      " must be strictly positive");
        }
        acc += group_loglik(summaries[i], mus[i], sigma2s[i]);
    }
    return acc;
}

double profile_sigma2(double eta, const LogSummary& summary) {
    const double d = summary.ybar - eta;
    const double c = summary.s2 + d * d;
    if (!(c > 0.0)) {
        throw DegenerateProfile("profiled variance root is zero: S^2 + (ybar - eta)^2 = 0");
    }
    return 2.0 * (std::sqrt(1.0 + c) - 1.0);
}

double profile_negloglik(double eta, std::span<const LogSummary> summaries) {
    double acc = 0.0;
    for (const LogSummary& g : summaries) {
        const double s = profile_sigma2(eta, g);
        acc += group_loglik(g, eta - s / 2.0, s);
    }
    return -acc;
}

RestrictedFit fit_restricted(std::span<const LogSummary> summaries, const FitOptions& options) {
    if (summaries.empty()) throw InvalidInput("fit_restricted needs at least one group");
    for (const LogSummary& g : summaries) {
        if (!(g.s2 > 0.0)) {
            throw DegenerateSample("zero log-scale variance: restricted fit undefined");
        }
    }

    double lo = summaries[0].ybar;
    double hi = summaries[0].ybar + summaries[0].s2 / 2.0;
    for (const LogSummary& g : summaries) {
        lo = std::min(lo, g.ybar);
        hi = std::max(hi, g.ybar + g.s2 / 2.0);
    }
    lo -= 1.0;
    hi += 1.0;

    const auto objective = [&summaries](double eta) { return profile_negloglik(eta, summaries); };

    const Bracket bracket = bracket_minimum(objective, lo, hi);
    if (bracket.bimodal) {
        throw NoConvergence("profile objective shows two descent directions; refusing to pick one");
    }
    if (!bracket.ok) {
        throw NoConvergence("could not bracket the restricted-likelihood optimum");
    }

    MinimizeOptions mopt;
    mopt.tol = options.tol;
    mopt.max_iterations = options.max_iterations;
    const MinimizeResult min = minimize_bracketed(objective, bracket, mopt);
    if (!min.converged) {
        throw NoConvergence("eta search did not reach tolerance " + std::to_string(options.tol) +
                            " within " + std::to_string(options.max_iterations) + " iterations");
    }

    RestrictedFit fit;
    fit.eta_rml = min.x;
    fit.iterations = min.iterations;
    fit.converged = true;
    fit.sigma2_rml.reserve(summaries.size());
    fit.mu_rml.reserve(summaries.size());
    for (const LogSummary& g : summaries) {
        const double s = profile_sigma2(fit.eta_rml, g);
        fit.sigma2_rml.push_back(s);
        fit.mu_rml.push_back(fit.eta_rml - s / 2.0);
    }
    fit.loglik = full_loglik(summaries, fit.mu_rml, fit.sigma2_rml);
    return fit;
}

}  // namespace lncat
