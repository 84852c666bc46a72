#include "deam/optimizer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "deam/errors.hpp"

namespace deam {

double eta_at(double eta, Schedule schedule, std::int64_t t) {
    if (t < 1) throw std::invalid_argument("eta_at: step index must be >= 1");
    switch (schedule) {
    case Schedule::Constant:    return eta;
    case Schedule::InverseSqrt: return eta / std::sqrt(static_cast<double>(t));
    }
    return eta;
}

void ensure_finite(const ParamVector& v, const char* field, std::int64_t step) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) {
            throw DivergenceError("non-finite value in field '" + std::string(field) +
                                      "' at component " + std::to_string(i) + ", step " +
                                      std::to_string(step),
                                  step);
        }
    }
}

} // namespace deam
