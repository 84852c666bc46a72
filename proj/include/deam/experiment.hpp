#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

#include "deam/baselines.hpp"
#include "deam/batch_sampler.hpp"
#include "deam/dataset.hpp"
#include "deam/deam_optimizer.hpp"
#include "deam/objective.hpp"

namespace deam {

// --- dataset specs ---------------------------------------------------------

struct BlobsSpec {
    std::size_t n = 200;
    std::size_t d = 2;
    std::size_t num_classes = 2;
    double separation = 6.0;
    std::uint64_t seed = 0;
    bool operator==(const BlobsSpec&) const = default;
};

struct IdxSpec {
    std::string images;
    std::string labels;
    std::optional<std::size_t> limit;
    bool operator==(const IdxSpec&) const = default;
};

struct CsvSpec {
    std::string path;
    std::string label_column;
    bool operator==(const CsvSpec&) const = default;
};

using DatasetSpec = std::variant<BlobsSpec, IdxSpec, CsvSpec>;

// --- objective specs -------------------------------------------------------

struct QuadraticSpec {
    ParamVector coefficients{1.0, 4.0};
    bool operator==(const QuadraticSpec&) const = default;
};

struct RosenbrockSpec {
    bool operator==(const RosenbrockSpec&) const = default;
};

struct LogRegSpec {
    DatasetSpec dataset;
    bool operator==(const LogRegSpec&) const = default;
};

struct MlpSpec {
    DatasetSpec dataset;
    std::size_t hidden = 32;
    bool operator==(const MlpSpec&) const = default;
};

using ObjectiveSpec = std::variant<QuadraticSpec, RosenbrockSpec, LogRegSpec, MlpSpec>;

// --- optimizer spec --------------------------------------------------------

using OptimizerSpec = std::variant<DeamHyperparams, BaselineConfig>;

std::string optimizer_name(const OptimizerSpec& spec);

std::unique_ptr<Optimizer> make_optimizer(const OptimizerSpec& spec, std::size_t dim);

// --- initial point ---------------------------------------------------------

struct DefaultInit { // objective's own scheme (zeros, or seeded for the MLP)
    bool operator==(const DefaultInit&) const = default;
};
struct PointInit {
    ParamVector values;
    bool operator==(const PointInit&) const = default;
};
using InitSpec = std::variant<DefaultInit, PointInit>;

// --- whole experiment ------------------------------------------------------

struct ExperimentConfig {
    std::string label;            // row label in tables; optimizer name if empty
    ObjectiveSpec objective = QuadraticSpec{};
    OptimizerSpec optimizer = DeamHyperparams{};
    InitSpec init = DefaultInit{};
    double eta = 0.01;
    Schedule schedule = Schedule::Constant;
    std::size_t batch_size = 0;   // 0 = full batch
    SamplingStrategy sampling = SamplingStrategy::ShuffleEachEpoch;
    std::int64_t max_steps = 1000;
    std::int64_t eval_every = 1;
    std::uint64_t seed = 0;
    bool snapshot_w = false;

    bool operator==(const ExperimentConfig&) const = default;

    // eta > 0, max_steps >= 1, eval_every >= 1, optimizer params in range.
    void validate() const;

    std::string effective_label() const;
};

// Materializes the dataset named by an objective spec; nullptr for data-free
// objectives. Paths must already be resolved (see config_file).
std::shared_ptr<const Dataset> build_dataset(const ObjectiveSpec& spec);

std::unique_ptr<Objective> build_objective(const ObjectiveSpec& spec,
                                           std::shared_ptr<const Dataset> dataset);

} // namespace deam
