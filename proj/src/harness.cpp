#include "deam/harness.hpp"

#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>

#include "deam/errors.hpp"

namespace deam {

namespace {

// Shared by run() and compute_regret() so both see the same batch sequence.
class BatchFeed {
public:
    BatchFeed(const ExperimentConfig& cfg, std::size_t dataset_n) {
        if (dataset_n == 0) return; // data-free objective: empty batches
        if (cfg.batch_size == 0) {
            full_.resize(dataset_n);
            std::iota(full_.begin(), full_.end(), std::size_t{0});
        } else {
            sampler_.emplace(dataset_n, cfg.batch_size, cfg.sampling,
                             Rng::derive(cfg.seed, 1));
        }
    }

    std::vector<std::size_t> next() {
        if (sampler_) return sampler_->next();
        return full_;
    }

private:
    std::optional<BatchSampler> sampler_;
    std::vector<std::size_t> full_;
};

std::string sanitize_label(const std::string& label) {
    std::string out = label;
    for (char& c : out) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
        if (!ok) c = '_';
    }
    return out;
}

ParamVector initial_point(const ExperimentConfig& cfg, const Objective& obj) {
    if (const auto* point = std::get_if<PointInit>(&cfg.init)) {
        if (point->values.size() != obj.dim()) {
            throw ConfigError("init point has length " + std::to_string(point->values.size()) +
                              " but the objective has dimension " + std::to_string(obj.dim()));
        }
        return point->values;
    }
    return obj.initial_point(Rng::derive(cfg.seed, 2));
}

} // namespace

Trace run(const ExperimentConfig& config) {
    config.validate();
    auto dataset = build_dataset(config.objective);
    auto objective = build_objective(config.objective, dataset);
    auto optimizer = make_optimizer(config.optimizer, objective->dim());
    BatchFeed feed(config, dataset ? dataset->n : 0);

    ParamVector w = initial_point(config, *objective);

    Trace trace;
    trace.config = config;
    for (std::int64_t t = 1; t <= config.max_steps; ++t) {
        const std::vector<std::size_t> batch = feed.next();
        const EvalResult at_w = objective->eval(w, batch);
        if (!std::isfinite(at_w.loss) || at_w.loss > kDivergenceCap) {
            throw DivergenceError("run diverged at step " + std::to_string(t) + " (loss " +
                                      std::to_string(at_w.loss) + ")",
                                  t);
        }

        const bool record = ((t - 1) % config.eval_every == 0) || t == config.max_steps;
        ParamVector w_before;
        if (record && config.snapshot_w) w_before = w;

        optimizer->step(w, at_w.grad, eta_at(config.eta, config.schedule, t));

        if (record) {
            StepRecord rec;
            rec.t = t;
            rec.loss = at_w.loss;
            rec.grad_norm = l2_norm(at_w.grad);
            if (const StepDiagnostics* diag = optimizer->last_diagnostics()) {
                rec.theta = diag->theta;
                rec.beta1 = diag->beta1;
                rec.d = diag->d;
            }
            if (config.snapshot_w) rec.w = std::move(w_before);
            trace.records.push_back(std::move(rec));
        }
        trace.final_loss = at_w.loss;
        trace.steps_run = t;
    }
    return trace;
}

RegretReport compute_regret(const Trace& trace) {
    const auto dataset = build_dataset(trace.config.objective);
    const auto objective = build_objective(trace.config.objective, dataset);
    const auto optimum = objective->known_optimum();
    if (!optimum) {
        throw std::invalid_argument("compute_regret: objective has no known optimum");
    }
    if (trace.records.empty()) {
        throw std::invalid_argument("compute_regret: empty trace");
    }
    for (std::size_t k = 0; k < trace.records.size(); ++k) {
        const StepRecord& rec = trace.records[k];
        if (!rec.w) {
            throw std::invalid_argument("compute_regret: trace has no parameter snapshots");
        }
        if (rec.t != static_cast<std::int64_t>(k) + 1) {
            throw std::invalid_argument(
                "compute_regret: trace must record every step (eval_every = 1)");
        }
    }

    BatchFeed feed(trace.config, dataset ? dataset->n : 0);
    RegretReport report;
    report.T = trace.records.back().t;
    report.average.reserve(trace.records.size());
    double partial = 0.0;
    for (const StepRecord& rec : trace.records) {
        const std::vector<std::size_t> batch = feed.next();
        const double at_optimum = objective->eval(optimum->w, batch).loss;
        partial += rec.loss - at_optimum;
        report.average.emplace_back(rec.t, partial / static_cast<double>(rec.t));
    }
    report.total = partial;
    return report;
}

std::int64_t first_hit_step(const Trace& trace, double threshold) {
    for (const StepRecord& rec : trace.records) {
        if (rec.loss < threshold) return rec.t;
    }
    return -1;
}

CompareResult compare(const std::vector<ExperimentConfig>& configs, const MetricSpec& metric,
                      bool parallel) {
    if (configs.empty()) throw ConfigError("compare: no configs given");
    for (const ExperimentConfig& cfg : configs) {
        cfg.validate();
        if (!(cfg.objective == configs.front().objective)) {
            throw ConfigError("compare: config '" + cfg.effective_label() +
                              "' does not share the common objective");
        }
        if (cfg.seed != configs.front().seed || cfg.max_steps != configs.front().max_steps) {
            throw ConfigError("compare: config '" + cfg.effective_label() +
                              "' does not share the common seed and step budget");
        }
    }

    const std::size_t n = configs.size();
    std::vector<Trace> traces(n);
    std::vector<std::exception_ptr> errors(n);

    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < n; ++i) {
            try {
                traces[i] = run(configs[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                traces[i] = run(configs[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    }
    for (const std::exception_ptr& err : errors) {
        if (err) std::rethrow_exception(err);
    }

    CompareResult result;
    result.table.metric = metric;
    result.table.rows.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        ComparisonRow& row = result.table.rows[i];
        row.index = i;
        row.label = configs[i].effective_label();
        row.optimizer = optimizer_name(configs[i].optimizer);
        row.final_loss = traces[i].final_loss;
        if (metric.kind == Metric::StepsToThreshold) {
            row.steps_to_threshold = first_hit_step(traces[i], metric.threshold);
        }
        row.trace_file = "trace_" + sanitize_label(row.label) + ".jsonl";
    }
    result.traces = std::move(traces);
    return result;
}

} // namespace deam
