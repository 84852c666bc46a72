#pragma once

#include <memory>

#include "deam/optimizer.hpp"

namespace deam {

enum class BaselineKind { Sgd, SgdMomentum, AdaGrad, RmsProp, Adam, AmsGrad };

const char* to_string(BaselineKind k);

struct BaselineConfig {
    BaselineKind kind = BaselineKind::Sgd;
    double momentum = 0.9;   // SgdMomentum
    double beta1 = 0.9;      // Adam / AmsGrad
    double beta2 = 0.999;    // Adam / AmsGrad
    double rho = 0.9;        // RmsProp
    double div_guard = 1e-8; // all adaptive kinds

    bool operator==(const BaselineConfig&) const = default;

    // All rates in [0, 1); div_guard >= 0.
    void validate() const;
};

class SgdOptimizer final : public Optimizer {
public:
    explicit SgdOptimizer(std::size_t dim);
    void step(ParamVector& w, const ParamVector& g, double eta_t) override;
    std::string_view name() const override { return "sgd"; }
    std::int64_t step_count() const override { return t_; }

private:
    std::size_t dim_;
    std::int64_t t_ = 0;
};

// Classical heavy ball: u <- mu * u - eta * g; w <- w + u.
class SgdMomentumOptimizer final : public Optimizer {
public:
    SgdMomentumOptimizer(std::size_t dim, double momentum);
    void step(ParamVector& w, const ParamVector& g, double eta_t) override;
    std::string_view name() const override { return "sgd_momentum"; }
    std::int64_t step_count() const override { return t_; }
    const ParamVector& velocity() const { return u_; }

private:
    double mu_;
    ParamVector u_;
    std::int64_t t_ = 0;
};

class AdaGradOptimizer final : public Optimizer {
public:
    AdaGradOptimizer(std::size_t dim, double div_guard);
    void step(ParamVector& w, const ParamVector& g, double eta_t) override;
    std::string_view name() const override { return "adagrad"; }
    std::int64_t step_count() const override { return t_; }
    const ParamVector& accum() const { return accum_; }

private:
    double guard_;
    ParamVector accum_;
    std::int64_t t_ = 0;
};

class RmsPropOptimizer final : public Optimizer {
public:
    RmsPropOptimizer(std::size_t dim, double rho, double div_guard);
    void step(ParamVector& w, const ParamVector& g, double eta_t) override;
    std::string_view name() const override { return "rmsprop"; }
    std::int64_t step_count() const override { return t_; }

private:
    double rho_, guard_;
    ParamVector avg_sq_;
    std::int64_t t_ = 0;
};

// Bias-corrected Adam; with max_second_moment it becomes AMSGrad (the running
// max is taken over the uncorrected v, then bias-corrected for the step).
class AdamOptimizer final : public Optimizer {
public:
    AdamOptimizer(std::size_t dim, double beta1, double beta2, double div_guard,
                  bool max_second_moment = false);
    void step(ParamVector& w, const ParamVector& g, double eta_t) override;
    std::string_view name() const override { return amsgrad_ ? "amsgrad" : "adam"; }
    std::int64_t step_count() const override { return t_; }
    const ParamVector& m() const { return m_; }
    const ParamVector& v() const { return v_; }

private:
    double beta1_, beta2_, guard_;
    bool amsgrad_;
    ParamVector m_, v_, v_max_;
    std::int64_t t_ = 0;
};

std::unique_ptr<Optimizer> make_baseline(const BaselineConfig& config, std::size_t dim);

} // namespace deam
