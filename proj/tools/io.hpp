#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lncat/cat.hpp"
#include "lncat/estimation.hpp"
#include "lncat/simulation.hpp"

namespace lncat::cli {

/// Long-format input: one (label, values) entry per group, in first-appearance
/// order. Built from CSV with a required `group,value` header.
struct InputTable {
    std::vector<std::pair<std::string, std::vector<double>>> groups;
};

/// Parse and validate a long-format CSV. Errors mention the offending line.
///
/// @throws InvalidInput on malformed rows, non-positive values, fewer than
///         2 distinct labels, or a label with fewer than 2 rows
[[nodiscard]] InputTable read_input_csv(const std::string& path);

[[nodiscard]] std::vector<GroupSample> to_samples(const InputTable& table);

/// Parse a scenario JSON document. `seed` may be omitted; `*seed_generated`
/// reports whether one had to be generated.
[[nodiscard]] Scenario read_scenario_json(const std::string& path, bool* seed_generated);

/// One double, 17 significant digits (round-trip exact).
[[nodiscard]] std::string format_double(double x);

/// Test report as a stable JSON document: fixed key order, 17-digit numbers.
[[nodiscard]] std::string test_report_json(const InputTable& table,
                                           const std::vector<GroupEstimate>& estimates,
                                           const TestResult& result);

/// Test report as a human-readable text block.
[[nodiscard]] std::string test_report_text(const InputTable& table,
                                           const std::vector<GroupEstimate>& estimates,
                                           const TestResult& result);

/// Study result as stable JSON (without the raw per-experiment vectors).
[[nodiscard]] std::string study_report_json(const StudyResult& study);

/// Study result as a summary table.
[[nodiscard]] std::string study_report_text(const StudyResult& study);

/// Study result as CSV rows (header + one row per method).
[[nodiscard]] std::string study_csv(const StudyResult& study);

/// Write content to path via a temporary file and atomic rename.
/// The parent directory must exist.
///
/// @throws InvalidInput naming the path when the directory is missing or the
///         write fails
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace lncat::cli
