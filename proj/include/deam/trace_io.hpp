#pragma once

#include <filesystem>
#include <string>

#include "deam/harness.hpp"

namespace deam {

// Shortest decimal string that round-trips the exact double value.
std::string format_double(double x);

// One self-describing JSON object per record. Baseline traces omit the
// theta/beta1/d fields; w appears only when snapshots were recorded.
void write_trace_jsonl(const Trace& trace, const std::filesystem::path& path);

// Final loss, step counts, and min/max diagnostic ranges as a JSON document.
void write_summary_json(const Trace& trace, const std::filesystem::path& path);

// Header + one row per optimizer. The steps_to_threshold column appears only
// for the StepsToThreshold metric.
void write_comparison_csv(const ComparisonTable& table, const std::filesystem::path& path);

// Backtrack-variant ablation table: one row per variant with final loss and
// the observed diagnostic ranges.
void write_ablation_csv(const CompareResult& result, const std::filesystem::path& path);

} // namespace deam
