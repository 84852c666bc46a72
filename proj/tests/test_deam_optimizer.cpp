#include <cmath>
#include <numbers>

#include <doctest.h>

#include "deam/deam_optimizer.hpp"
#include "deam/errors.hpp"
#include "deam/rng.hpp"

using namespace deam;

namespace {
constexpr double kPi = std::numbers::pi;

DeamHyperparams with_eps(double eps) {
    DeamHyperparams hp;
    hp.epsilon = eps;
    return hp;
}
} // namespace

TEST_CASE("deam_beta1 reference values") {
    CHECK(deam_beta1(0.0, with_eps(0.001)) == doctest::Approx(0.001).epsilon(1e-15));
    // 1/K = 2*pi / (10*(2+pi))
    CHECK(deam_beta1(kPi, with_eps(0.001)) ==
          doctest::Approx(0.12220309407033145).epsilon(1e-14));
    CHECK(deam_beta1(kPi / 4, with_eps(0.0)) ==
          doctest::Approx(0.08641063649910893).epsilon(1e-14));
    CHECK_THROWS_AS(deam_beta1(-0.1, with_eps(0.001)), std::invalid_argument);
    CHECK_THROWS_AS(deam_beta1(kPi + 0.1, with_eps(0.001)), std::invalid_argument);
}

TEST_CASE("deam_beta1 range and the jump at pi/2") {
    const DeamHyperparams hp = with_eps(0.001);
    const double cap = 1.0 / kDeamK + hp.epsilon;
    for (int i = 0; i <= 10000; ++i) {
        const double theta = kPi * i / 10000.0;
        const double b = deam_beta1(theta, hp);
        CHECK(b >= hp.epsilon);
        CHECK(b <= cap);
        if (theta >= kPi / 2) CHECK(b == 1.0 / kDeamK);
    }
    const double left = deam_beta1(std::nextafter(kPi / 2, 0.0), hp);
    const double right = deam_beta1(kPi / 2, hp);
    CHECK(std::abs(left - right) <= hp.epsilon + 1e-15);
}

TEST_CASE("deam_backtrack variants") {
    CHECK(deam_backtrack(kPi, BacktrackVariant::ClampedCos) == doctest::Approx(-0.5));
    CHECK(deam_backtrack(kPi / 4, BacktrackVariant::ClampedCos) == 0.0);
    CHECK(deam_backtrack(0.0, BacktrackVariant::UnclampedCos) == doctest::Approx(0.5));
    CHECK(deam_backtrack(kPi / 2, BacktrackVariant::SigmoidBased) ==
          doctest::Approx(0.0).epsilon(1e-15));
    CHECK(deam_backtrack(kPi / 2, BacktrackVariant::TanhBased) ==
          doctest::Approx(0.0).epsilon(1e-15));
    CHECK(deam_backtrack(kPi, BacktrackVariant::SigmoidBased) ==
          doctest::Approx(-0.3278971013163362).epsilon(1e-14));
    CHECK(deam_backtrack(kPi, BacktrackVariant::TanhBased) ==
          doctest::Approx(-0.9171523356672744).epsilon(1e-13));
    CHECK(deam_backtrack(1.3, BacktrackVariant::None) == 0.0);
    CHECK_THROWS_AS(deam_backtrack(4.0, BacktrackVariant::ClampedCos), std::invalid_argument);

    for (int i = 0; i <= 1000; ++i) {
        const double theta = kPi * i / 1000.0;
        const double d = deam_backtrack(theta, BacktrackVariant::ClampedCos);
        CHECK(d <= 0.0);
        CHECK(d >= -0.5);
        if (theta <= kPi / 2) {
            CHECK(d == 0.0);
        } else {
            CHECK(d < 0.0);
        }
    }
}

TEST_CASE("hyperparameter validation") {
    CHECK_NOTHROW(DeamHyperparams{}.validate());
    CHECK_THROWS_AS(with_eps(0.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(with_eps(1.0 / kDeamK).validate(), std::invalid_argument);
    DeamHyperparams bad;
    bad.beta2 = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    DeamHyperparams guard;
    guard.div_guard = -1e-9;
    CHECK_THROWS_AS(guard.validate(), std::invalid_argument);
}

// First step on f(x,y) = x^2 + 4y^2 at w = (-4,-1): g = (-8,-8), theta = 0,
// beta1 = eps, m1 = eps*g, v1 = (1-beta2)*64, delta1 = m1/(sqrt(v1)+guard).
TEST_CASE("worked first step on the convex counterexample") {
    DeamOptimizer opt(2);
    ParamVector w{-4.0, -1.0};
    opt.step(w, {-8.0, -8.0}, 1.0);

    const StepDiagnostics& diag = *opt.last_diagnostics();
    CHECK(diag.theta == 0.0);
    CHECK(diag.beta1 == 0.001);
    CHECK(diag.d == 0.0);
    CHECK(diag.grad_norm == doctest::Approx(11.313708498984761).epsilon(1e-14));

    const DeamState& st = opt.state();
    CHECK(st.t == 1);
    CHECK(st.m[0] == -0.008);
    CHECK(st.m[1] == -0.008);
    CHECK(st.v[0] == doctest::Approx(0.064).epsilon(1e-12));
    CHECK(st.v_hat[0] == st.v[0]);
    CHECK(st.delta_prev[0] == doctest::Approx(0.031622775351683834).epsilon(1e-10));
    CHECK(w[0] == doctest::Approx(-3.968377224648316).epsilon(1e-12));
    CHECK(w[1] == doctest::Approx(-0.9683772246483162).epsilon(1e-12));
}

TEST_CASE("zero gradient with fresh state is a fixed point") {
    DeamOptimizer opt(3);
    ParamVector w{1.0, -2.0, 0.5};
    const ParamVector before = w;
    opt.step(w, {0.0, 0.0, 0.0}, 0.7);
    CHECK(w == before);
    const StepDiagnostics& diag = *opt.last_diagnostics();
    CHECK(diag.theta == 0.0);
    CHECK(diag.d == 0.0);
    for (double x : opt.state().m) CHECK(x == 0.0);
    for (double x : opt.state().v_hat) CHECK(x == 0.0);
    for (double x : opt.state().delta_prev) CHECK(x == 0.0);
}

TEST_CASE("constant positive gradient follows the geometric recursion") {
    const double c = 2.0;
    const double eps = 0.001;
    DeamOptimizer opt(1, with_eps(eps));
    ParamVector w{5.0};
    for (int t = 1; t <= 20; ++t) {
        opt.step(w, {c}, 0.01);
        const StepDiagnostics& diag = *opt.last_diagnostics();
        CHECK(diag.theta <= 1e-7); // exactly parallel up to rounding of the norms
        CHECK(diag.beta1 >= eps);
        CHECK(diag.beta1 <= eps + 1e-8);
        const double closed_form = c * (1.0 - std::pow(1.0 - eps, t));
        CHECK(opt.state().m[0] == doctest::Approx(closed_form).epsilon(1e-6));
    }
}

TEST_CASE("non-finite state is a hard error naming field and step") {
    DeamOptimizer opt(2);
    ParamVector w{0.0, 0.0};
    CHECK_THROWS_WITH_AS(opt.step(w, {1e308, 1.0}, 1.0), doctest::Contains("'v'"),
                         DivergenceError);
}

TEST_CASE("random steps keep the documented invariants") {
    Rng rng(2024);
    for (int run = 0; run < 40; ++run) {
        const std::size_t dim = 1 + rng.below(8);
        DeamHyperparams hp;
        DeamOptimizer opt(dim, hp);
        ParamVector w(dim, 0.0);
        ParamVector max_abs_g(dim, 0.0);
        ParamVector prev_vhat(dim, 0.0);
        for (int t = 1; t <= 50; ++t) {
            ParamVector g(dim);
            for (double& x : g) x = rng.uniform(-10.0, 10.0);
            for (std::size_t i = 0; i < dim; ++i) {
                max_abs_g[i] = std::max(max_abs_g[i], std::abs(g[i]));
            }
            opt.step(w, g, 0.05);

            const StepDiagnostics& diag = *opt.last_diagnostics();
            CHECK(diag.theta >= 0.0);
            CHECK(diag.theta <= kPi);
            CHECK(diag.beta1 >= hp.epsilon);
            CHECK(diag.beta1 <= 1.0 / kDeamK + hp.epsilon);
            CHECK(diag.d <= 0.0);
            CHECK(diag.d >= -0.5);
            const DeamState& st = opt.state();
            for (std::size_t i = 0; i < dim; ++i) {
                CHECK(st.v[i] >= 0.0);
                CHECK(st.v_hat[i] >= prev_vhat[i]);
                CHECK(std::abs(st.m[i]) <= max_abs_g[i] * (1.0 + 1e-12));
            }
            prev_vhat = st.v_hat;
        }
    }
}

// With the backtrack disabled and beta1 pinned, the update reduces to
// AMSGrad without bias correction; an independent reference must agree
// coordinate-for-coordinate.
TEST_CASE("pinned-beta1, no-backtrack steps match a plain AMSGrad reference") {
    const double pinned = 0.1;
    const double guard = 1e-8;
    Rng rng(77);
    for (int run = 0; run < 10; ++run) {
        const std::size_t dim = 1 + rng.below(6);
        DeamHyperparams hp;
        hp.backtrack = BacktrackVariant::None;
        hp.beta1_override = pinned;
        DeamOptimizer opt(dim, hp);
        ParamVector w(dim, 0.0), w_ref(dim, 0.0);
        ParamVector m(dim, 0.0), v(dim, 0.0), vhat(dim, 0.0);
        const double beta1 = 1.0 - pinned; // reference uses the Adam convention
        for (int t = 0; t < 60; ++t) {
            ParamVector g(dim);
            for (double& x : g) x = rng.uniform(-4.0, 4.0);
            opt.step(w, g, 0.02);
            for (std::size_t i = 0; i < dim; ++i) {
                m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
                v[i] = hp.beta2 * v[i] + (1.0 - hp.beta2) * g[i] * g[i];
                vhat[i] = std::max(vhat[i], v[i]);
                w_ref[i] -= 0.02 * m[i] / (std::sqrt(vhat[i]) + guard);
            }
            for (std::size_t i = 0; i < dim; ++i) {
                CHECK(std::abs(w[i] - w_ref[i]) < 1e-12);
            }
        }
    }
}
