#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lncat/estimation.hpp"
#include "lncat/likelihood.hpp"
#include "lncat/rng.hpp"

namespace lncat {

enum class Method { cat, lrt };

[[nodiscard]] std::string method_name(Method method);
[[nodiscard]] Method method_from_name(const std::string& name);

/// The M null-replicate statistics of one test run, sorted ascending.
/// Regenerating with the same seed, m and fit yields an identical list.
struct ReplicateSet {
    std::vector<double> values;
    int m = 0;
    std::uint64_t seed = 0;
};

/// Outcome of a single hypothesis test.
///
/// The p-value rule is authoritative for `reject`; the critical value is
/// reported for reference and agrees except on exact ties between the
/// observed statistic and a replicate value.
struct TestResult {
    Method method = Method::cat;
    double statistic = 0.0;
    double p_value = 1.0;
    std::optional<double> critical_value;  ///< CAT only
    double alpha = 0.05;
    std::optional<int> m;                  ///< CAT only
    std::optional<std::uint64_t> seed;     ///< CAT only
    bool reject = false;
};

/// Fraction of replicates strictly greater than the observed value.
[[nodiscard]] double pvalue_right(const ReplicateSet& replicates, double observed);

/// Fraction of replicates strictly less than the observed value.
[[nodiscard]] double pvalue_left(const ReplicateSet& replicates, double observed);

/// 2 min(p1, 1 - p1) with p1 = pvalue_left, clamped to [0, 1].
[[nodiscard]] double pvalue_two_sided(const ReplicateSet& replicates, double observed);

/// Order statistic at rank ceil((1 - alpha) m), 1-indexed. The ceiling makes
/// the non-integer case conservative (larger critical value).
///
/// @throws AlphaOutOfRange if alpha is outside (0, 1) or (1 - alpha) m < 1
[[nodiscard]] double critical_value_upper(const ReplicateSet& replicates, double alpha);

/// One parametric null replicate: draw n_i values from
/// Normal(mu_rml[i], sigma2_rml[i]) per group on the log scale, recompute the
/// per-group MLEs, and return their theta. A replicate in which some group
/// has zero sample variance is redrawn from the next substream of `stream`.
[[nodiscard]] double simulate_replicate(const RestrictedFit& fit, std::span<const int> ns,
                                        RngStream stream);

/// All M replicates for a fit, sorted. Replicate l always draws from
/// substream l of the master seed, so the result is identical for any
/// thread count.
[[nodiscard]] ReplicateSet generate_replicates(const RestrictedFit& fit, std::span<const int> ns,
                                               int m, std::uint64_t seed, int threads = 1);

/// The computational approach test for equality of the k log-normal means:
/// observed theta from the unrestricted MLEs, restricted refit under H0,
/// M parametric replicates from the restricted fit, and the upper-tail
/// p-value of the observed statistic within the replicate distribution.
///
/// Deterministic for fixed (samples, m, seed) at any thread count.
///
/// @throws TooFewGroups, MTooSmall, AlphaOutOfRange, DegenerateSample, NoConvergence
[[nodiscard]] TestResult run_cat(std::span<const GroupSample> samples, int m, std::uint64_t seed,
                                 double alpha, int threads = 1);

}  // namespace lncat
