#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "deam/param_vector.hpp"
#include "deam/rng.hpp"

namespace deam {

struct EvalResult {
    double loss = 0.0;
    ParamVector grad;
};

// Samples are accumulated into fixed 64-sample blocks whose partial sums are
// reduced in block order, so results do not depend on the OpenMP thread count.
inline constexpr std::size_t kEvalBlockSize = 64;

// A differentiable loss with analytic gradient over a mini-batch (the f_t
// sequence). Data-free objectives ignore the batch argument.
class Objective {
public:
    virtual ~Objective() = default;

    virtual std::size_t dim() const = 0;

    // Mean per-sample loss and its gradient. Data-backed objectives run the
    // blocked OpenMP path; invalid batch indices are a hard error.
    virtual EvalResult eval(const ParamVector& w, std::span<const std::size_t> batch) const = 0;

    // Single-threaded sample-order reference of eval, kept for testing and
    // benchmarking. Defaults to eval for objectives with no inner loop.
    virtual EvalResult eval_serial(const ParamVector& w,
                                   std::span<const std::size_t> batch) const {
        return eval(w, batch);
    }

    struct Optimum {
        ParamVector w;
        double loss = 0.0;
    };
    virtual std::optional<Optimum> known_optimum() const { return std::nullopt; }

    // Starting point for a run; zeros unless the objective defines its own
    // seeded initialization scheme.
    virtual ParamVector initial_point(std::uint64_t /*seed*/) const {
        return ParamVector(dim(), 0.0);
    }

    // Random evaluation point for gradient checking; objectives with
    // non-smooth regions override this to resample away from them.
    virtual ParamVector sample_test_point(Rng& rng) const;
};

// Max over coordinates of the relative error between the analytic gradient
// and a central finite difference with step h:
//   |fd - an| / max(1e-12, |fd| + |an|)
double gradcheck(const Objective& obj, const ParamVector& w,
                 std::span<const std::size_t> batch, double h);

} // namespace deam
