#include "deam/objectives.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace deam {

namespace {

void check_dim(const ParamVector& w, std::size_t expected, const char* where) {
    if (w.size() != expected) {
        throw std::invalid_argument(std::string(where) + ": parameter length mismatch (" +
                                    std::to_string(w.size()) + " vs expected " +
                                    std::to_string(expected) + ")");
    }
}

void check_batch(std::span<const std::size_t> batch, std::size_t n, const char* where) {
    if (batch.empty()) {
        throw std::invalid_argument(std::string(where) + ": empty batch");
    }
    for (std::size_t idx : batch) {
        if (idx >= n) {
            throw std::out_of_range(std::string(where) + ": batch index " + std::to_string(idx) +
                                    " out of range (n = " + std::to_string(n) + ")");
        }
    }
}

// Mean over the batch via fixed 64-sample blocks: per-block partial sums are
// computed independently (in parallel) and reduced in block order, so the
// result is identical for any thread count.
template <typename AccumulateSample>
EvalResult blocked_mean_eval(std::size_t param_dim, std::span<const std::size_t> batch,
                             AccumulateSample&& accumulate) {
    const std::size_t nb = (batch.size() + kEvalBlockSize - 1) / kEvalBlockSize;
    std::vector<double> block_loss(nb, 0.0);
    std::vector<ParamVector> block_grad(nb, ParamVector(param_dim, 0.0));

#pragma omp parallel for schedule(static)
    for (std::size_t b = 0; b < nb; ++b) {
        const std::size_t lo = b * kEvalBlockSize;
        const std::size_t hi = std::min(lo + kEvalBlockSize, batch.size());
        for (std::size_t k = lo; k < hi; ++k) {
            accumulate(batch[k], block_loss[b], block_grad[b]);
        }
    }

    EvalResult out;
    out.grad.assign(param_dim, 0.0);
    for (std::size_t b = 0; b < nb; ++b) {
        out.loss += block_loss[b];
        for (std::size_t i = 0; i < param_dim; ++i) out.grad[i] += block_grad[b][i];
    }
    const double inv = 1.0 / static_cast<double>(batch.size());
    out.loss *= inv;
    for (double& gi : out.grad) gi *= inv;
    return out;
}

template <typename AccumulateSample>
EvalResult serial_mean_eval(std::size_t param_dim, std::span<const std::size_t> batch,
                            AccumulateSample&& accumulate) {
    EvalResult out;
    out.grad.assign(param_dim, 0.0);
    for (std::size_t idx : batch) accumulate(idx, out.loss, out.grad);
    const double inv = 1.0 / static_cast<double>(batch.size());
    out.loss *= inv;
    for (double& gi : out.grad) gi *= inv;
    return out;
}

// Numerically stable softmax in place; returns log-sum-exp of the logits.
// The cross-entropy contribution of a sample is lse - logit[label].
double softmax_inplace(std::vector<double>& logits) {
    double mx = logits[0];
    for (double z : logits) mx = std::max(mx, z);
    double sum = 0.0;
    for (double& z : logits) {
        z = std::exp(z - mx);
        sum += z;
    }
    for (double& z : logits) z /= sum;
    return mx + std::log(sum);
}

} // namespace

// ---------------------------------------------------------------------------
// QuadraticObjective

QuadraticObjective::QuadraticObjective(ParamVector coefficients) : a_(std::move(coefficients)) {
    if (a_.empty()) throw std::invalid_argument("QuadraticObjective: empty coefficient vector");
    for (double c : a_) {
        if (!(c > 0.0) || !std::isfinite(c)) {
            throw std::invalid_argument("QuadraticObjective: coefficients must be finite and > 0");
        }
    }
}

EvalResult QuadraticObjective::eval(const ParamVector& w,
                                    std::span<const std::size_t> /*batch*/) const {
    check_dim(w, a_.size(), "QuadraticObjective::eval");
    EvalResult out;
    out.grad.resize(a_.size());
    for (std::size_t i = 0; i < a_.size(); ++i) {
        out.loss += a_[i] * w[i] * w[i];
        out.grad[i] = 2.0 * a_[i] * w[i];
    }
    return out;
}

std::optional<Objective::Optimum> QuadraticObjective::known_optimum() const {
    return Optimum{ParamVector(a_.size(), 0.0), 0.0};
}

ParamVector QuadraticObjective::sample_test_point(Rng& rng) const {
    ParamVector w(a_.size());
    for (double& x : w) x = rng.uniform(-2.0, 2.0);
    return w;
}

// ---------------------------------------------------------------------------
// RosenbrockObjective

EvalResult RosenbrockObjective::eval(const ParamVector& w,
                                     std::span<const std::size_t> /*batch*/) const {
    check_dim(w, 2, "RosenbrockObjective::eval");
    const double x = w[0];
    const double y = w[1];
    const double r = y - x * x;
    EvalResult out;
    out.loss = (1.0 - x) * (1.0 - x) + 100.0 * r * r;
    out.grad = {-2.0 * (1.0 - x) - 400.0 * x * r, 200.0 * r};
    return out;
}

std::optional<Objective::Optimum> RosenbrockObjective::known_optimum() const {
    return Optimum{{1.0, 1.0}, 0.0};
}

ParamVector RosenbrockObjective::sample_test_point(Rng& rng) const {
    return {rng.uniform(-2.0, 2.0), rng.uniform(-1.0, 3.0)};
}

// ---------------------------------------------------------------------------
// LogisticRegressionObjective

LogisticRegressionObjective::LogisticRegressionObjective(std::shared_ptr<const Dataset> data)
    : data_(std::move(data)) {
    if (!data_) throw std::invalid_argument("LogisticRegressionObjective: null dataset");
    data_->validate();
    if (data_->num_classes < 2) {
        throw std::invalid_argument("LogisticRegressionObjective: need >= 2 classes");
    }
}

std::size_t LogisticRegressionObjective::dim() const {
    return data_->num_classes * (data_->d + 1);
}

void LogisticRegressionObjective::accumulate_sample(const ParamVector& w, std::size_t sample,
                                                    double& loss, ParamVector& grad) const {
    const std::size_t d = data_->d;
    const std::size_t C = data_->num_classes;
    const double* x = data_->row(sample);
    const int label = data_->labels[sample];

    std::vector<double> probs(C);
    for (std::size_t c = 0; c < C; ++c) {
        const double* row = w.data() + c * (d + 1);
        double z = row[d]; // bias
        for (std::size_t j = 0; j < d; ++j) z += row[j] * x[j];
        probs[c] = z;
    }
    const double label_logit = probs[static_cast<std::size_t>(label)];
    const double lse = softmax_inplace(probs);
    loss += lse - label_logit;

    for (std::size_t c = 0; c < C; ++c) {
        const double delta = probs[c] - (static_cast<int>(c) == label ? 1.0 : 0.0);
        double* grow = grad.data() + c * (d + 1);
        for (std::size_t j = 0; j < d; ++j) grow[j] += delta * x[j];
        grow[d] += delta;
    }
}

EvalResult LogisticRegressionObjective::eval(const ParamVector& w,
                                             std::span<const std::size_t> batch) const {
    check_dim(w, dim(), "LogisticRegressionObjective::eval");
    check_batch(batch, data_->n, "LogisticRegressionObjective::eval");
    return blocked_mean_eval(dim(), batch, [&](std::size_t s, double& l, ParamVector& g) {
        accumulate_sample(w, s, l, g);
    });
}

EvalResult LogisticRegressionObjective::eval_serial(const ParamVector& w,
                                                    std::span<const std::size_t> batch) const {
    check_dim(w, dim(), "LogisticRegressionObjective::eval_serial");
    check_batch(batch, data_->n, "LogisticRegressionObjective::eval_serial");
    return serial_mean_eval(dim(), batch, [&](std::size_t s, double& l, ParamVector& g) {
        accumulate_sample(w, s, l, g);
    });
}

ParamVector LogisticRegressionObjective::class_probabilities(const ParamVector& w,
                                                             std::size_t sample) const {
    check_dim(w, dim(), "LogisticRegressionObjective::class_probabilities");
    if (sample >= data_->n) {
        throw std::out_of_range("class_probabilities: sample index out of range");
    }
    const std::size_t d = data_->d;
    const double* x = data_->row(sample);
    std::vector<double> probs(data_->num_classes);
    for (std::size_t c = 0; c < data_->num_classes; ++c) {
        const double* row = w.data() + c * (d + 1);
        double z = row[d];
        for (std::size_t j = 0; j < d; ++j) z += row[j] * x[j];
        probs[c] = z;
    }
    softmax_inplace(probs);
    return probs;
}

ParamVector LogisticRegressionObjective::sample_test_point(Rng& rng) const {
    ParamVector w(dim());
    for (double& x : w) x = rng.uniform(-0.5, 0.5);
    return w;
}

// ---------------------------------------------------------------------------
// MlpObjective

MlpObjective::MlpObjective(std::shared_ptr<const Dataset> data, std::size_t hidden)
    : data_(std::move(data)), hidden_(hidden) {
    if (!data_) throw std::invalid_argument("MlpObjective: null dataset");
    data_->validate();
    if (hidden_ == 0) throw std::invalid_argument("MlpObjective: hidden width must be >= 1");
    if (data_->num_classes < 2) throw std::invalid_argument("MlpObjective: need >= 2 classes");
}

std::size_t MlpObjective::dim() const {
    const std::size_t d = data_->d;
    const std::size_t C = data_->num_classes;
    return hidden_ * d + hidden_ + C * hidden_ + C;
}

void MlpObjective::accumulate_sample(const ParamVector& w, std::size_t sample, double& loss,
                                     ParamVector& grad) const {
    const std::size_t d = data_->d;
    const std::size_t h = hidden_;
    const std::size_t C = data_->num_classes;
    const double* x = data_->row(sample);
    const int label = data_->labels[sample];

    const double* w1 = w.data();              // h x d
    const double* b1 = w1 + h * d;            // h
    const double* w2 = b1 + h;                // C x h
    const double* b2 = w2 + C * h;            // C
    double* gw1 = grad.data();
    double* gb1 = gw1 + h * d;
    double* gw2 = gb1 + h;
    double* gb2 = gw2 + C * h;

    std::vector<double> act(h);
    for (std::size_t u = 0; u < h; ++u) {
        double z = b1[u];
        const double* row = w1 + u * d;
        for (std::size_t j = 0; j < d; ++j) z += row[j] * x[j];
        act[u] = z > 0.0 ? z : 0.0; // ReLU; subgradient at 0 taken as 0
    }

    std::vector<double> probs(C);
    for (std::size_t c = 0; c < C; ++c) {
        double z = b2[c];
        const double* row = w2 + c * h;
        for (std::size_t u = 0; u < h; ++u) z += row[u] * act[u];
        probs[c] = z;
    }
    const double label_logit = probs[static_cast<std::size_t>(label)];
    const double lse = softmax_inplace(probs);
    loss += lse - label_logit;

    std::vector<double> dact(h, 0.0);
    for (std::size_t c = 0; c < C; ++c) {
        const double delta = probs[c] - (static_cast<int>(c) == label ? 1.0 : 0.0);
        const double* row = w2 + c * h;
        double* grow = gw2 + c * h;
        for (std::size_t u = 0; u < h; ++u) {
            grow[u] += delta * act[u];
            dact[u] += delta * row[u];
        }
        gb2[c] += delta;
    }
    for (std::size_t u = 0; u < h; ++u) {
        if (act[u] <= 0.0) continue; // dead unit: no gradient through ReLU
        double* grow = gw1 + u * d;
        for (std::size_t j = 0; j < d; ++j) grow[j] += dact[u] * x[j];
        gb1[u] += dact[u];
    }
}

EvalResult MlpObjective::eval(const ParamVector& w, std::span<const std::size_t> batch) const {
    check_dim(w, dim(), "MlpObjective::eval");
    check_batch(batch, data_->n, "MlpObjective::eval");
    return blocked_mean_eval(dim(), batch, [&](std::size_t s, double& l, ParamVector& g) {
        accumulate_sample(w, s, l, g);
    });
}

EvalResult MlpObjective::eval_serial(const ParamVector& w,
                                     std::span<const std::size_t> batch) const {
    check_dim(w, dim(), "MlpObjective::eval_serial");
    check_batch(batch, data_->n, "MlpObjective::eval_serial");
    return serial_mean_eval(dim(), batch, [&](std::size_t s, double& l, ParamVector& g) {
        accumulate_sample(w, s, l, g);
    });
}

ParamVector MlpObjective::initial_point(std::uint64_t seed) const {
    const std::size_t d = data_->d;
    const std::size_t h = hidden_;
    const std::size_t C = data_->num_classes;
    Rng rng(seed);
    ParamVector w(dim(), 0.0);
    const double lim1 = std::sqrt(6.0 / static_cast<double>(d + h));
    const double lim2 = std::sqrt(6.0 / static_cast<double>(h + C));
    for (std::size_t i = 0; i < h * d; ++i) w[i] = rng.uniform(-lim1, lim1);
    for (std::size_t i = 0; i < C * h; ++i) w[h * d + h + i] = rng.uniform(-lim2, lim2);
    return w;
}

double MlpObjective::min_hidden_preactivation(const ParamVector& w,
                                              std::span<const std::size_t> batch) const {
    check_dim(w, dim(), "MlpObjective::min_hidden_preactivation");
    check_batch(batch, data_->n, "MlpObjective::min_hidden_preactivation");
    const std::size_t d = data_->d;
    const double* w1 = w.data();
    const double* b1 = w1 + hidden_ * d;
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t idx : batch) {
        const double* x = data_->row(idx);
        for (std::size_t u = 0; u < hidden_; ++u) {
            double z = b1[u];
            const double* row = w1 + u * d;
            for (std::size_t j = 0; j < d; ++j) z += row[j] * x[j];
            lo = std::min(lo, std::abs(z));
        }
    }
    return lo;
}

ParamVector MlpObjective::sample_test_point(Rng& rng) const {
    const std::size_t probe = std::min<std::size_t>(data_->n, 32);
    std::vector<std::size_t> batch(probe);
    for (std::size_t i = 0; i < probe; ++i) batch[i] = i;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        ParamVector w = initial_point(rng.next_u64());
        if (min_hidden_preactivation(w, batch) > 1e-3) return w;
    }
    throw std::runtime_error("MlpObjective::sample_test_point: no kink-free point found");
}

} // namespace deam
