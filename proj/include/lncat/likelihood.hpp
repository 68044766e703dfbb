#pragma once

#include <span>
#include <vector>

#include "lncat/estimation.hpp"

namespace lncat {

/// Constrained MLEs under H0: eta_1 = ... = eta_k.
struct RestrictedFit {
    double eta_rml = 0.0;             ///< common log-mean at the optimum
    std::vector<double> sigma2_rml;   ///< per-group variances, all > 0
    std::vector<double> mu_rml;       ///< eta_rml - sigma2_rml[i] / 2, exactly
    double loglik = 0.0;              ///< maximized restricted log-likelihood
    int iterations = 0;
    bool converged = false;
};

struct FitOptions {
    double tol = 1e-10;       ///< bracket width at which the eta search stops
    int max_iterations = 200;
};

/// Normal log-likelihood on the log scale through sufficient statistics,
/// summed over groups and including the additive -(n/2) log(2 pi) constant
/// so full and restricted values are directly comparable.
///
/// @throws NonPositiveVariance, InvalidInput
[[nodiscard]] double full_loglik(std::span<const LogSummary> summaries,
                                 std::span<const double> mus,
                                 std::span<const double> sigma2s);

/// The variance that maximizes one group's log-likelihood for a fixed common
/// eta, i.e. the unique positive root s of  s^2/4 + s - (S^2 + (ybar-eta)^2) = 0:
///
///   s = 2 (sqrt(1 + S^2 + (ybar - eta)^2) - 1)
///
/// @throws DegenerateProfile when S^2 + (ybar-eta)^2 = 0 (root on the boundary)
[[nodiscard]] double profile_sigma2(double eta, const LogSummary& summary);

/// Negative restricted log-likelihood with every sigma2_i replaced by its
/// conditional maximizer; a smooth one-dimensional function of eta.
[[nodiscard]] double profile_negloglik(double eta, std::span<const LogSummary> summaries);

/// Restricted MLE by bracketed minimization of the profile objective over eta.
/// The initial bracket [min ybar_i - 1, max eta_hat_i + 1] is widened
/// geometrically if needed; the objective diverges at +-infinity, so the
/// optimum is interior.
///
/// @throws DegenerateSample if any group has zero variance
/// @throws NoConvergence if bracketing or minimization exhausts its caps,
///         or if the bracketing probes see two descent directions
[[nodiscard]] RestrictedFit fit_restricted(std::span<const LogSummary> summaries,
                                           const FitOptions& options = {});

}  // namespace lncat
