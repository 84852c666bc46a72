#include "deam/baselines.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "deam/errors.hpp"

namespace deam {

namespace {

void check_rate(double x, const char* name) {
    if (!(x >= 0.0 && x < 1.0)) {
        throw std::invalid_argument("BaselineConfig: " + std::string(name) +
                                    " must be in [0,1), got " + std::to_string(x));
    }
}

void check_step_args(const ParamVector& w, const ParamVector& g, std::size_t dim,
                     double eta_t, const char* where) {
    if (w.size() != dim || g.size() != dim) {
        throw std::invalid_argument(std::string(where) + ": length mismatch (w " +
                                    std::to_string(w.size()) + ", g " + std::to_string(g.size()) +
                                    ", optimizer dim " + std::to_string(dim) + ")");
    }
    if (!(eta_t > 0.0)) {
        throw std::invalid_argument(std::string(where) + ": eta_t must be > 0, got " +
                                    std::to_string(eta_t));
    }
}

} // namespace

const char* to_string(BaselineKind k) {
    switch (k) {
    case BaselineKind::Sgd:         return "sgd";
    case BaselineKind::SgdMomentum: return "sgd_momentum";
    case BaselineKind::AdaGrad:     return "adagrad";
    case BaselineKind::RmsProp:     return "rmsprop";
    case BaselineKind::Adam:        return "adam";
    case BaselineKind::AmsGrad:     return "amsgrad";
    }
    return "?";
}

void BaselineConfig::validate() const {
    check_rate(momentum, "momentum");
    check_rate(beta1, "beta1");
    check_rate(beta2, "beta2");
    check_rate(rho, "rho");
    if (!(div_guard >= 0.0)) {
        throw std::invalid_argument("BaselineConfig: div_guard must be >= 0, got " +
                                    std::to_string(div_guard));
    }
}

SgdOptimizer::SgdOptimizer(std::size_t dim) : dim_(dim) {}

void SgdOptimizer::step(ParamVector& w, const ParamVector& g, double eta_t) {
    check_step_args(w, g, dim_, eta_t, "SgdOptimizer::step");
    ++t_;
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= eta_t * g[i];
    ensure_finite(w, "w", t_);
}

SgdMomentumOptimizer::SgdMomentumOptimizer(std::size_t dim, double momentum)
    : mu_(momentum), u_(dim, 0.0) {}

void SgdMomentumOptimizer::step(ParamVector& w, const ParamVector& g, double eta_t) {
    check_step_args(w, g, u_.size(), eta_t, "SgdMomentumOptimizer::step");
    ++t_;
    for (std::size_t i = 0; i < w.size(); ++i) {
        u_[i] = mu_ * u_[i] - eta_t * g[i];
        w[i] += u_[i];
    }
    ensure_finite(u_, "velocity", t_);
    ensure_finite(w, "w", t_);
}

AdaGradOptimizer::AdaGradOptimizer(std::size_t dim, double div_guard)
    : guard_(div_guard), accum_(dim, 0.0) {}

void AdaGradOptimizer::step(ParamVector& w, const ParamVector& g, double eta_t) {
    check_step_args(w, g, accum_.size(), eta_t, "AdaGradOptimizer::step");
    ++t_;
    for (std::size_t i = 0; i < w.size(); ++i) {
        accum_[i] += g[i] * g[i];
        w[i] -= eta_t * g[i] / (std::sqrt(accum_[i]) + guard_);
    }
    ensure_finite(accum_, "accum", t_);
    ensure_finite(w, "w", t_);
}

RmsPropOptimizer::RmsPropOptimizer(std::size_t dim, double rho, double div_guard)
    : rho_(rho), guard_(div_guard), avg_sq_(dim, 0.0) {}

void RmsPropOptimizer::step(ParamVector& w, const ParamVector& g, double eta_t) {
    check_step_args(w, g, avg_sq_.size(), eta_t, "RmsPropOptimizer::step");
    ++t_;
    for (std::size_t i = 0; i < w.size(); ++i) {
        avg_sq_[i] = rho_ * avg_sq_[i] + (1.0 - rho_) * g[i] * g[i];
        w[i] -= eta_t * g[i] / (std::sqrt(avg_sq_[i]) + guard_);
    }
    ensure_finite(avg_sq_, "avg_sq", t_);
    ensure_finite(w, "w", t_);
}

AdamOptimizer::AdamOptimizer(std::size_t dim, double beta1, double beta2, double div_guard,
                             bool max_second_moment)
    : beta1_(beta1), beta2_(beta2), guard_(div_guard), amsgrad_(max_second_moment),
      m_(dim, 0.0), v_(dim, 0.0), v_max_(max_second_moment ? dim : 0, 0.0) {}

void AdamOptimizer::step(ParamVector& w, const ParamVector& g, double eta_t) {
    check_step_args(w, g, m_.size(), eta_t, "AdamOptimizer::step");
    ++t_;
    const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    for (std::size_t i = 0; i < w.size(); ++i) {
        m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * g[i];
        v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * g[i] * g[i];
        const double m_hat = m_[i] / bc1;
        double second = v_[i];
        if (amsgrad_) {
            v_max_[i] = std::max(v_max_[i], v_[i]);
            second = v_max_[i];
        }
        const double v_hat = second / bc2;
        w[i] -= eta_t * m_hat / (std::sqrt(v_hat) + guard_);
    }
    ensure_finite(m_, "m", t_);
    ensure_finite(v_, "v", t_);
    if (amsgrad_) ensure_finite(v_max_, "v_max", t_);
    ensure_finite(w, "w", t_);
}

std::unique_ptr<Optimizer> make_baseline(const BaselineConfig& config, std::size_t dim) {
    config.validate();
    switch (config.kind) {
    case BaselineKind::Sgd:
        return std::make_unique<SgdOptimizer>(dim);
    case BaselineKind::SgdMomentum:
        return std::make_unique<SgdMomentumOptimizer>(dim, config.momentum);
    case BaselineKind::AdaGrad:
        return std::make_unique<AdaGradOptimizer>(dim, config.div_guard);
    case BaselineKind::RmsProp:
        return std::make_unique<RmsPropOptimizer>(dim, config.rho, config.div_guard);
    case BaselineKind::Adam:
        return std::make_unique<AdamOptimizer>(dim, config.beta1, config.beta2, config.div_guard);
    case BaselineKind::AmsGrad:
        return std::make_unique<AdamOptimizer>(dim, config.beta1, config.beta2, config.div_guard,
                                               /*max_second_moment=*/true);
    }
    throw std::invalid_argument("make_baseline: unknown kind");
}

} // namespace deam
