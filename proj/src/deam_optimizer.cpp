#include "deam/deam_optimizer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "deam/errors.hpp"

namespace deam {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

void check_theta(double theta, const char* where) {
    if (!(theta >= 0.0 && theta <= kPi)) {
        throw std::invalid_argument(std::string(where) + ": theta must lie in [0, pi], got " +
                                    std::to_string(theta));
    }
}

} // namespace

const char* to_string(BacktrackVariant v) {
    switch (v) {
    case BacktrackVariant::ClampedCos:   return "clamped_cos";
    case BacktrackVariant::UnclampedCos: return "unclamped_cos";
    case BacktrackVariant::SigmoidBased: return "sigmoid_based";
    case BacktrackVariant::TanhBased:    return "tanh_based";
    case BacktrackVariant::None:         return "none";
    }
    return "?";
}

void DeamHyperparams::validate() const {
    if (!(beta2 > 0.0 && beta2 < 1.0)) {
        throw std::invalid_argument("DeamHyperparams: beta2 must be in (0,1), got " +
                                    std::to_string(beta2));
    }
    if (!(epsilon > 0.0 && epsilon < 1.0 / kDeamK)) {
        throw std::invalid_argument("DeamHyperparams: epsilon must be in (0, 1/K), got " +
                                    std::to_string(epsilon));
    }
    if (!(div_guard >= 0.0)) {
        throw std::invalid_argument("DeamHyperparams: div_guard must be >= 0, got " +
                                    std::to_string(div_guard));
    }
    if (beta1_override && !(*beta1_override > 0.0 && *beta1_override < 1.0)) {
        throw std::invalid_argument("DeamHyperparams: beta1_override must be in (0,1), got " +
                                    std::to_string(*beta1_override));
    }
}

double deam_beta1(double theta, const DeamHyperparams& hp) {
    check_theta(theta, "deam_beta1");
    if (theta < kHalfPi) return std::sin(theta) / kDeamK + hp.epsilon;
    return 1.0 / kDeamK;
}

double deam_backtrack(double theta, BacktrackVariant variant) {
    check_theta(theta, "deam_backtrack");
    switch (variant) {
    case BacktrackVariant::ClampedCos:
        return std::min(0.5 * std::cos(theta), 0.0);
    case BacktrackVariant::UnclampedCos:
        return 0.5 * std::cos(theta);
    case BacktrackVariant::SigmoidBased:
        return -1.0 / (1.0 + std::exp(-(theta - kHalfPi))) + 0.5;
    case BacktrackVariant::TanhBased:
        return -2.0 / (1.0 + std::exp(-2.0 * (theta - kHalfPi))) + 1.0;
    case BacktrackVariant::None:
        return 0.0;
    }
    return 0.0;
}

DeamOptimizer::DeamOptimizer(std::size_t dim, DeamHyperparams hp) : hp_(hp) {
    hp_.validate();
    state_.m.assign(dim, 0.0);
    state_.v.assign(dim, 0.0);
    state_.v_hat.assign(dim, 0.0);
    state_.delta_prev.assign(dim, 0.0);
}

void DeamOptimizer::step(ParamVector& w, const ParamVector& g, double eta_t) {
    const std::size_t n = state_.m.size();
    check_same_length(w, state_.m, "DeamOptimizer::step");
    check_same_length(g, state_.m, "DeamOptimizer::step");
    if (!(eta_t > 0.0)) {
        throw std::invalid_argument("DeamOptimizer::step: eta_t must be > 0, got " +
                                    std::to_string(eta_t));
    }
    const std::int64_t t = state_.t + 1;

    // Previous update volume m / sqrt(v_hat); a coordinate whose gradient has
    // been zero at every step contributes 0.
    ParamVector update_volume(n);
    for (std::size_t i = 0; i < n; ++i) {
        update_volume[i] = (state_.v_hat[i] == 0.0 && state_.m[i] == 0.0)
                               ? 0.0
                               : state_.m[i] / (std::sqrt(state_.v_hat[i]) + hp_.div_guard);
    }
    const double theta = angle_between(update_volume, g);
    const double beta1 = hp_.beta1_override ? *hp_.beta1_override : deam_beta1(theta, hp_);

    for (std::size_t i = 0; i < n; ++i) {
        state_.m[i] = (1.0 - beta1) * state_.m[i] + beta1 * g[i];
        state_.v[i] = hp_.beta2 * state_.v[i] + (1.0 - hp_.beta2) * g[i] * g[i];
        state_.v_hat[i] = std::max(state_.v_hat[i], state_.v[i]);
    }

    const double d = deam_backtrack(theta, hp_.backtrack);
    for (std::size_t i = 0; i < n; ++i) {
        const double volume = (state_.v_hat[i] == 0.0 && state_.m[i] == 0.0)
                                  ? 0.0
                                  : state_.m[i] / (std::sqrt(state_.v_hat[i]) + hp_.div_guard);
        const double delta = d * state_.delta_prev[i] - eta_t * volume;
        state_.delta_prev[i] = delta;
        w[i] += delta;
    }

    ensure_finite(state_.m, "m", t);
    ensure_finite(state_.v, "v", t);
    ensure_finite(state_.v_hat, "v_hat", t);
    ensure_finite(state_.delta_prev, "delta", t);
    ensure_finite(w, "w", t);

    state_.t = t;
    diag_ = {theta, beta1, d, l2_norm(g)};
}

} // namespace deam
