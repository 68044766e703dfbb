#pragma once

#include <span>

#include "lncat/cat.hpp"

namespace lncat {

/// Likelihood ratio test for equality of the k log-normal means.
///
/// Lambda = 2 (l_full - l_restricted) is referred to a chi-square with k - 1
/// degrees of freedom (the H0 constraint removes k - 1 free parameters).
/// Negative Lambda within 1e-8 is numerical slack and clamped to zero;
/// anything more negative signals an optimizer fault and is raised.
///
/// @throws TooFewGroups, AlphaOutOfRange, DegenerateSample, NoConvergence,
///         InternalConsistencyError
[[nodiscard]] TestResult run_lrt(std::span<const GroupSample> samples, double alpha);

}  // namespace lncat
