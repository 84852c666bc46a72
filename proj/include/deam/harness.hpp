#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deam/experiment.hpp"

namespace deam {

struct StepRecord {
    std::int64_t t = 0;
    double loss = 0.0;      // batch loss at w_t, evaluated before the step
    double grad_norm = 0.0;
    std::optional<double> theta;
    std::optional<double> beta1;
    std::optional<double> d;
    std::optional<ParamVector> w; // w_t (pre-step) when snapshots are on
};

struct Trace {
    ExperimentConfig config;
    std::vector<StepRecord> records;
    double final_loss = 0.0;      // loss of the last executed step
    std::int64_t steps_run = 0;
};

// Runs max_steps optimizer steps, recording every eval_every-th step plus the
// final one. Loss is evaluated on the step's own mini-batch before updating.
// Aborts with DivergenceError if the loss exceeds 1e12 or goes non-finite.
Trace run(const ExperimentConfig& config);

inline constexpr double kDivergenceCap = 1e12;

struct RegretReport {
    std::int64_t T = 0;
    double total = 0.0;                                    // R(T)
    std::vector<std::pair<std::int64_t, double>> average;  // (t, R(t)/t)
};

// Cumulative excess loss sum_t [f_t(w_t) - f_t(w*)] against the objective's
// known optimum, replaying the run's batch sequence for the f_t(w*) terms.
// Requires snapshots and a contiguous trace (eval_every = 1).
RegretReport compute_regret(const Trace& trace);

enum class Metric { FinalLoss, StepsToThreshold };

struct MetricSpec {
    Metric kind = Metric::FinalLoss;
    double threshold = 0.0; // StepsToThreshold only
    bool operator==(const MetricSpec&) const = default;
};

struct ComparisonRow {
    std::size_t index = 0;
    std::string label;
    std::string optimizer;
    double final_loss = 0.0;
    std::int64_t steps_to_threshold = -1; // -1: not measured / never reached
    std::string trace_file;
};

struct ComparisonTable {
    MetricSpec metric;
    std::vector<ComparisonRow> rows;
};

struct CompareResult {
    ComparisonTable table;
    std::vector<Trace> traces;
};

// Runs every config (in parallel unless disabled) and tabulates one row per
// optimizer, merged by config index. All configs must share the objective,
// seed, and step budget.
CompareResult compare(const std::vector<ExperimentConfig>& configs, const MetricSpec& metric,
                      bool parallel = true);

// First recorded step with loss below the threshold; -1 if never.
std::int64_t first_hit_step(const Trace& trace, double threshold);

} // namespace deam
