#include "deam/param_vector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace deam {

void check_same_length(const ParamVector& a, const ParamVector& b, const char* where) {
    if (a.size() != b.size()) {
        throw std::invalid_argument(std::string(where) + ": length mismatch (" +
                                    std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
    }
}

ParamVector elementwise(const ParamVector& a, const ParamVector& b, ElementwiseOp op) {
    check_same_length(a, b, "elementwise");
    ParamVector out(a.size());
    switch (op) {
    case ElementwiseOp::Add:
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
        break;
    case ElementwiseOp::Sub:
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
        break;
    case ElementwiseOp::Mul:
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
        break;
    case ElementwiseOp::Max:
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
        break;
    }
    return out;
}

ParamVector scale_sqrt_div(const ParamVector& num, const ParamVector& den, double delta) {
    check_same_length(num, den, "scale_sqrt_div");
    if (delta < 0.0) {
        throw std::invalid_argument("scale_sqrt_div: delta must be >= 0, got " +
                                    std::to_string(delta));
    }
    ParamVector out(num.size());
    for (std::size_t i = 0; i < num.size(); ++i) {
        if (den[i] < 0.0) {
            throw std::invalid_argument("scale_sqrt_div: negative denominator entry " +
                                        std::to_string(den[i]) + " at index " +
                                        std::to_string(i));
        }
        out[i] = num[i] / (std::sqrt(den[i]) + delta);
    }
    return out;
}

double dot(const ParamVector& a, const ParamVector& b) {
    check_same_length(a, b, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double l2_norm(const ParamVector& a) {
    double s = 0.0;
    for (double x : a) s += x * x;
    return std::sqrt(s);
}

double angle_between(const ParamVector& a, const ParamVector& b) {
    check_same_length(a, b, "angle_between");
    const double na = l2_norm(a);
    const double nb = l2_norm(b);
    if (na == 0.0 || nb == 0.0) return 0.0;
    const double c = std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
    return std::acos(c);
}

} // namespace deam
