#include "deam/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace deam {

ParamVector Objective::sample_test_point(Rng& rng) const {
    ParamVector w(dim());
    for (double& x : w) x = rng.uniform(-1.0, 1.0);
    return w;
}

double gradcheck(const Objective& obj, const ParamVector& w,
                 std::span<const std::size_t> batch, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("gradcheck: h must be > 0");
    if (w.empty()) throw std::invalid_argument("gradcheck: empty parameter vector");
    const EvalResult analytic = obj.eval(w, batch);
    const std::size_t n = w.size();
    std::vector<double> err(n, 0.0);

#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < n; ++i) {
        ParamVector wp = w;
        ParamVector wm = w;
        wp[i] += h;
        wm[i] -= h;
        const double fd = (obj.eval(wp, batch).loss - obj.eval(wm, batch).loss) / (2.0 * h);
        const double an = analytic.grad[i];
        err[i] = std::abs(fd - an) / std::max(1e-12, std::abs(fd) + std::abs(an));
    }
    return *std::max_element(err.begin(), err.end());
}

} // namespace deam
