#pragma once

#include <cstdint>
#include <string_view>

#include "deam/param_vector.hpp"

namespace deam {

enum class Schedule { Constant, InverseSqrt };

// eta_t for step t (1-based). InverseSqrt is eta / sqrt(t).
double eta_at(double eta, Schedule schedule, std::int64_t t);

// Per-step quantities of the angle-adaptive update; baselines leave this null.
struct StepDiagnostics {
    double theta = 0.0;     // discriminative angle, radians in [0, pi]
    double beta1 = 0.0;     // momentum weight applied to the current gradient
    double d = 0.0;         // backtrack coefficient on the previous update
    double grad_norm = 0.0;
};

class Optimizer {
public:
    virtual ~Optimizer() = default;

    // One update of w in place from gradient g at learning rate eta_t.
    // Throws DivergenceError if any state field goes non-finite.
    virtual void step(ParamVector& w, const ParamVector& g, double eta_t) = 0;

    virtual std::string_view name() const = 0;
    virtual std::int64_t step_count() const = 0;
    virtual const StepDiagnostics* last_diagnostics() const { return nullptr; }
};

// Shared post-step guard: throws DivergenceError naming the field and step.
void ensure_finite(const ParamVector& v, const char* field, std::int64_t step);

} // namespace deam
