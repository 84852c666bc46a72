#pragma once

#include <memory>

#include "deam/dataset.hpp"
#include "deam/objective.hpp"

namespace deam {

// f(w) = sum_i a_i * w_i^2 with all a_i > 0; convex, optimum at the origin.
class QuadraticObjective final : public Objective {
public:
    explicit QuadraticObjective(ParamVector coefficients);

    std::size_t dim() const override { return a_.size(); }
    EvalResult eval(const ParamVector& w, std::span<const std::size_t> batch) const override;
    std::optional<Optimum> known_optimum() const override;
    ParamVector sample_test_point(Rng& rng) const override;

    const ParamVector& coefficients() const { return a_; }

private:
    ParamVector a_;
};

// f(x, y) = (1 - x)^2 + 100 (y - x^2)^2; global minimum 0 at (1, 1).
class RosenbrockObjective final : public Objective {
public:
    std::size_t dim() const override { return 2; }
    EvalResult eval(const ParamVector& w, std::span<const std::size_t> batch) const override;
    std::optional<Optimum> known_optimum() const override;
    ParamVector sample_test_point(Rng& rng) const override;
};

// Multi-class logistic regression with softmax cross-entropy, mean reduction
// over the batch. Parameters are a C x (d+1) weight-plus-bias block,
// flattened row-major with the bias as the last column of each row.
class LogisticRegressionObjective final : public Objective {
public:
    explicit LogisticRegressionObjective(std::shared_ptr<const Dataset> data);

    std::size_t dim() const override;
    EvalResult eval(const ParamVector& w, std::span<const std::size_t> batch) const override;
    EvalResult eval_serial(const ParamVector& w,
                           std::span<const std::size_t> batch) const override;
    ParamVector sample_test_point(Rng& rng) const override;

    // Softmax class probabilities for one sample; sums to 1.
    ParamVector class_probabilities(const ParamVector& w, std::size_t sample) const;

    const Dataset& dataset() const { return *data_; }

private:
    void accumulate_sample(const ParamVector& w, std::size_t sample, double& loss,
                           ParamVector& grad) const;

    std::shared_ptr<const Dataset> data_;
};

// One-hidden-layer ReLU network with softmax cross-entropy, mean reduction.
// Parameter layout: [W1 (h x d), b1 (h), W2 (C x h), b2 (C)], row-major.
class MlpObjective final : public Objective {
public:
    MlpObjective(std::shared_ptr<const Dataset> data, std::size_t hidden);

    std::size_t dim() const override;
    EvalResult eval(const ParamVector& w, std::span<const std::size_t> batch) const override;
    EvalResult eval_serial(const ParamVector& w,
                           std::span<const std::size_t> batch) const override;

    // Seeded uniform init on +/- sqrt(6 / (fan_in + fan_out)) per layer.
    ParamVector initial_point(std::uint64_t seed) const override;

    // Resamples until every hidden pre-activation on the probe batch is well
    // away from the ReLU kink, so central differences stay one-sided.
    ParamVector sample_test_point(Rng& rng) const override;

    // Smallest |pre-activation| of the hidden layer over the given batch.
    double min_hidden_preactivation(const ParamVector& w,
                                    std::span<const std::size_t> batch) const;

    std::size_t hidden() const { return hidden_; }
    const Dataset& dataset() const { return *data_; }

private:
    void accumulate_sample(const ParamVector& w, std::size_t sample, double& loss,
                           ParamVector& grad) const;

    std::shared_ptr<const Dataset> data_;
    std::size_t hidden_;
};

} // namespace deam
