#include "deam/experiment.hpp"

#include <stdexcept>

#include "deam/errors.hpp"
#include "deam/objectives.hpp"

namespace deam {

std::string optimizer_name(const OptimizerSpec& spec) {
    if (std::holds_alternative<DeamHyperparams>(spec)) return "deam";
    return to_string(std::get<BaselineConfig>(spec).kind);
}

std::unique_ptr<Optimizer> make_optimizer(const OptimizerSpec& spec, std::size_t dim) {
    if (const auto* hp = std::get_if<DeamHyperparams>(&spec)) {
        return std::make_unique<DeamOptimizer>(dim, *hp);
    }
    return make_baseline(std::get<BaselineConfig>(spec), dim);
}

void ExperimentConfig::validate() const {
    if (!(eta > 0.0)) {
        throw ConfigError("experiment: eta must be > 0, got " + std::to_string(eta));
    }
    if (max_steps < 1) {
        throw ConfigError("experiment: max_steps must be >= 1, got " +
                          std::to_string(max_steps));
    }
    if (eval_every < 1) {
        throw ConfigError("experiment: eval_every must be >= 1, got " +
                          std::to_string(eval_every));
    }
    try {
        if (const auto* hp = std::get_if<DeamHyperparams>(&optimizer)) {
            hp->validate();
        } else {
            std::get<BaselineConfig>(optimizer).validate();
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

std::string ExperimentConfig::effective_label() const {
    return label.empty() ? optimizer_name(optimizer) : label;
}

std::shared_ptr<const Dataset> build_dataset(const ObjectiveSpec& spec) {
    const DatasetSpec* ds = nullptr;
    if (const auto* lr = std::get_if<LogRegSpec>(&spec)) ds = &lr->dataset;
    if (const auto* mlp = std::get_if<MlpSpec>(&spec)) ds = &mlp->dataset;
    if (!ds) return nullptr;

    if (const auto* blobs = std::get_if<BlobsSpec>(ds)) {
        return std::make_shared<Dataset>(gen_blobs(blobs->n, blobs->d, blobs->num_classes,
                                                   blobs->separation, blobs->seed));
    }
    if (const auto* idx = std::get_if<IdxSpec>(ds)) {
        return std::make_shared<Dataset>(load_idx(idx->images, idx->labels, idx->limit));
    }
    const auto& csv = std::get<CsvSpec>(*ds);
    return std::make_shared<Dataset>(load_csv(csv.path, csv.label_column));
}

std::unique_ptr<Objective> build_objective(const ObjectiveSpec& spec,
                                           std::shared_ptr<const Dataset> dataset) {
    if (const auto* q = std::get_if<QuadraticSpec>(&spec)) {
        return std::make_unique<QuadraticObjective>(q->coefficients);
    }
    if (std::holds_alternative<RosenbrockSpec>(spec)) {
        return std::make_unique<RosenbrockObjective>();
    }
    if (!dataset) {
        throw std::invalid_argument("build_objective: data-backed objective needs a dataset");
    }
    if (std::holds_alternative<LogRegSpec>(spec)) {
        return std::make_unique<LogisticRegressionObjective>(std::move(dataset));
    }
    const auto& mlp = std::get<MlpSpec>(spec);
    return std::make_unique<MlpObjective>(std::move(dataset), mlp.hidden);
}

} // namespace deam
