#include <cmath>
#include <numbers>

#include <doctest.h>

#include "deam/param_vector.hpp"
#include "deam/rng.hpp"

using namespace deam;

TEST_CASE("elementwise basics") {
    CHECK(elementwise({1, 5}, {3, 2}, ElementwiseOp::Max) == ParamVector{3, 5});
    CHECK(elementwise({-8, -8}, {-8, -8}, ElementwiseOp::Mul) == ParamVector{64, 64});
    CHECK(elementwise({1.5, -2.0}, {0, 0}, ElementwiseOp::Add) == ParamVector{1.5, -2.0});
    CHECK(elementwise({3, 1}, {1, 4}, ElementwiseOp::Sub) == ParamVector{2, -3});
}

TEST_CASE("elementwise rejects length mismatch naming both lengths") {
    CHECK_THROWS_WITH_AS(elementwise({1, 2}, {1, 2, 3}, ElementwiseOp::Add),
                         doctest::Contains("2 vs 3"), std::invalid_argument);
}

TEST_CASE("scale_sqrt_div") {
    CHECK(scale_sqrt_div({2}, {4}, 0.0) == ParamVector{1});
    CHECK(scale_sqrt_div({0}, {0}, 1e-8) == ParamVector{0});
    // -0.008 / sqrt(0.064) = -1/sqrt(1000)
    CHECK(scale_sqrt_div({-0.008}, {0.064}, 0.0)[0] ==
          doctest::Approx(-0.0316227766016838).epsilon(1e-12));
    CHECK_THROWS_WITH_AS(scale_sqrt_div({1}, {-0.5}, 0.0),
                         doctest::Contains("negative denominator"), std::invalid_argument);
}

TEST_CASE("l2_norm") {
    CHECK(l2_norm({3, 4}) == doctest::Approx(5.0));
    CHECK(l2_norm({0, 0, 0}) == 0.0);
    CHECK(l2_norm({-8, -8}) == doctest::Approx(11.313708498984761).epsilon(1e-14)); // 8*sqrt(2)
}

TEST_CASE("angle_between reference values") {
    constexpr double pi = std::numbers::pi;
    CHECK(angle_between({1, 0}, {0, 1}) == doctest::Approx(pi / 2));
    CHECK(angle_between({1, 1}, {-1, -1}) == doctest::Approx(pi));
    CHECK(angle_between({0, 0}, {3, 4}) == 0.0); // zero-vector convention
    CHECK(angle_between({3, 4}, {0, 0}) == 0.0);
}

TEST_CASE("angle_between is symmetric and scale-aware") {
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t dim = 1 + rng.below(6);
        ParamVector a(dim), b(dim);
        for (double& x : a) x = rng.uniform(-5, 5);
        for (double& x : b) x = rng.uniform(-5, 5);
        CHECK(angle_between(a, b) == angle_between(b, a));

        if (l2_norm(a) == 0.0) continue;
        const double c = rng.uniform(0.1, 9.0);
        ParamVector pos(dim), neg(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            pos[i] = c * a[i];
            neg[i] = -c * a[i];
        }
        CHECK(angle_between(a, pos) == doctest::Approx(0.0).epsilon(1e-7));
        CHECK(angle_between(a, neg) == doctest::Approx(std::numbers::pi).epsilon(1e-7));
    }
}

TEST_CASE("clamping keeps the angle NaN-free when cosine overshoots 1") {
    // With b == a the raw cosine dot(a,a)/(|a|*|a|) drifts off 1 by ulps in
    // either direction; the clamp must absorb the overshoot.
    Rng rng(7);
    bool saw_overshoot = false;
    for (int trial = 0; trial < 20000; ++trial) {
        const std::size_t dim = 2 + rng.below(8);
        ParamVector a(dim);
        for (double& x : a) x = rng.uniform(-3, 3);
        const double norm = l2_norm(a);
        if (norm == 0.0) continue;
        if (dot(a, a) / (norm * norm) > 1.0) saw_overshoot = true;
        const double theta = angle_between(a, a);
        CHECK(!std::isnan(theta));
        CHECK(theta == doctest::Approx(0.0).epsilon(1e-7));
    }
    CHECK(saw_overshoot);
}
