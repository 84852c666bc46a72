#pragma once

#include <cstddef>
#include <vector>

namespace deam {

// Flat 64-bit parameter vector. Holds model weights and all per-parameter
// optimizer state; every binary operation below requires equal lengths.
using ParamVector = std::vector<double>;

enum class ElementwiseOp { Add, Sub, Mul, Max };

// result[i] = op(a[i], b[i]); throws std::invalid_argument on length mismatch.
ParamVector elementwise(const ParamVector& a, const ParamVector& b, ElementwiseOp op);

// result[i] = num[i] / (sqrt(den[i]) + delta). Requires den[i] >= 0 and
// delta >= 0; a negative denominator entry is a hard error.
ParamVector scale_sqrt_div(const ParamVector& num, const ParamVector& den, double delta);

double dot(const ParamVector& a, const ParamVector& b);

// Euclidean norm; 0 for the empty or zero vector.
double l2_norm(const ParamVector& a);

// Angle in [0, pi] between a and b. The cosine is clamped to [-1, 1] before
// acos so rounding can never produce NaN. Returns 0 if either norm is 0.
double angle_between(const ParamVector& a, const ParamVector& b);

void check_same_length(const ParamVector& a, const ParamVector& b, const char* where);

} // namespace deam
