#pragma once

namespace lncat {

/// log Gamma(x) for x > 0 (Lanczos approximation).
[[nodiscard]] double gammln(double x);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a),
/// a > 0, x >= 0. Series for x < a + 1, continued fraction otherwise.
[[nodiscard]] double gamma_q(double a, double x);

/// Upper-tail probability of a chi-square with df degrees of freedom,
/// P(X > x) = Q(df/2, x/2). Absolute error below 1e-10 over the usual range.
///
/// @throws InvalidInput if x < 0 or df < 1
[[nodiscard]] double chi2_upper_tail(double x, int df);

}  // namespace lncat
