#pragma once

#include <numbers>
#include <optional>

#include "deam/optimizer.hpp"

namespace deam {

// Normalization constant of the adaptive momentum weight, chosen so that the
// weight averages 0.1 over angles uniform on [0, pi]:
//   K = 10 * (integral of sin over [0, pi/2] + integral of 1 over [pi/2, pi])
inline constexpr double kDeamK =
    10.0 * (2.0 + std::numbers::pi) / (2.0 * std::numbers::pi);

enum class BacktrackVariant { ClampedCos, UnclampedCos, SigmoidBased, TanhBased, None };

const char* to_string(BacktrackVariant v);

struct DeamHyperparams {
    double beta2 = 0.999;
    double epsilon = 0.001;
    double div_guard = 1e-8;
    BacktrackVariant backtrack = BacktrackVariant::ClampedCos;

    // Pins beta1_t to a fixed value instead of the angle rule. Diagnostic
    // hook; with backtrack None this reduces the update to plain AMSGrad
    // without bias correction.
    std::optional<double> beta1_override;

    bool operator==(const DeamHyperparams&) const = default;

    // beta2 in (0,1); 0 < epsilon < 1/K; div_guard >= 0; override in (0,1).
    void validate() const;
};

// Adaptive momentum weight:
//   sin(theta)/K + epsilon   for theta in [0, pi/2)
//   1/K                      for theta in [pi/2, pi]
// theta outside [0, pi] is a hard error. Ignores any beta1_override.
double deam_beta1(double theta, const DeamHyperparams& hp);

// Backtrack coefficient for the given variant; see BacktrackVariant.
// ClampedCos is min{0.5 cos(theta), 0}; theta outside [0, pi] is a hard error.
double deam_backtrack(double theta, BacktrackVariant variant);

struct DeamState {
    ParamVector m;          // first-order momentum
    ParamVector v;          // second-order momentum (EMA of squared gradients)
    ParamVector v_hat;      // running elementwise max of v
    ParamVector delta_prev; // previous update
    std::int64_t t = 0;
};

// Angle-adaptive momentum optimizer with backtrack term. Per step:
//   theta  = angle(m / sqrt(v_hat), g)            (0 if either side is zero)
//   beta1  = deam_beta1(theta)
//   m'     = (1 - beta1) m + beta1 g
//   v'     = beta2 v + (1 - beta2) g * g;  v_hat' = max(v_hat, v')
//   delta  = deam_backtrack(theta) * delta_prev - eta_t * m' / (sqrt(v_hat') + guard)
//   w     += delta
// No bias correction is applied anywhere.
class DeamOptimizer final : public Optimizer {
public:
    explicit DeamOptimizer(std::size_t dim, DeamHyperparams hp = {});

    void step(ParamVector& w, const ParamVector& g, double eta_t) override;

    std::string_view name() const override { return "deam"; }
    std::int64_t step_count() const override { return state_.t; }
    const StepDiagnostics* last_diagnostics() const override { return &diag_; }

    const DeamState& state() const { return state_; }
    const DeamHyperparams& hyperparams() const { return hp_; }

private:
    DeamHyperparams hp_;
    DeamState state_;
    StepDiagnostics diag_;
};

} // namespace deam
