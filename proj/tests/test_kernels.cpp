#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "opiniongame/kernels.hpp"

using namespace opiniongame;

TEST_CASE("bounded confidence indicator uses strict inequality") {
    auto k = KernelSpec::bounded_confidence(0.75);
    CHECK(eval_H(0.0, 0.7499, k) == 1.0);
    CHECK(eval_H(0.0, 0.75, k) == 0.0);
    CHECK(eval_H(0.75, 0.0, k) == 0.0);
    CHECK(eval_H(-0.3, 0.3, k) == 1.0);
}

TEST_CASE("unit kernel and knowledge-gap kernel have no opinion part") {
    CHECK(eval_H(-1.0, 1.0, KernelSpec::unit()) == 1.0);
    CHECK(eval_H(-1.0, 1.0, KernelSpec::knowledge_gap(50.0)) == 1.0);
}

TEST_CASE("logistic knowledge kernel") {
    CHECK(eval_K(0.3, 0.3, 50.0) == doctest::Approx(0.5));
    // the knowledgeable agent barely moves, the novice moves strongly
    CHECK(eval_K(5.0, 0.0, 50.0) < 1e-12);
    CHECK(eval_K(0.0, 5.0, 50.0) > 1.0 - 1e-12);
    // large arguments stay finite through the exponent clamp
    CHECK(std::isfinite(eval_K(1e9, 0.0, 50.0)));
    CHECK(std::isfinite(eval_K(0.0, 1e9, 50.0)));
    CHECK(eval_K(1e9, 0.0, 50.0) >= 0.0);
}

TEST_CASE("equal knowledge halves the compromise propensity") {
    auto p = KernelSpec::knowledge_gap(50.0);
    CHECK(eval_P(0.2, -0.4, 1.0, 1.0, p) == doctest::Approx(0.5));
    auto prod = KernelSpec::product(0.75, 50.0);
    CHECK(eval_P(0.2, -0.4, 1.0, 1.0, prod) == doctest::Approx(0.5));
    CHECK(eval_P(0.2, 0.99, 1.0, 1.0, prod) == 0.0);
}

TEST_CASE("credibility index") {
    CredibilitySpec cred{0.001, 0.75, 0.0};
    CHECK(cred.psi(0.0) == doctest::Approx(177.82794100389228));
    CHECK(cred.psi(0.1) < cred.psi(0.0));  // strictly decreasing
    CHECK(cred.psi(1.0) < cred.psi(0.1));
}

TEST_CASE("follower-leader propensity gates through credibility") {
    CredibilitySpec cred{0.001, 0.75, 0.0};
    auto spec = KernelSpec::knowledge_gap(50.0);
    // a leader at its anchor is maximally credible: low-knowledge followers
    // interact with near-unit propensity
    CHECK(eval_R(0.0, 0.0, 0.05, cred, spec) > 1.0 - 1e-12);
    // without a credibility index R reduces to the opinion part
    CHECK(eval_R(0.0, 0.5, 0.05, std::nullopt, spec) == 1.0);
    auto bc = KernelSpec::bounded_confidence(0.25);
    CHECK(eval_R(0.0, 0.5, 0.05, cred, bc) == 0.0);
}

TEST_CASE("diffusion functions") {
    auto quad = DiffusionSpec::quadratic_cap();
    CHECK(eval_D(0.0, quad) == 1.0);
    CHECK(eval_D(1.0, quad) == 0.0);
    CHECK(eval_D(-1.0, quad) == 0.0);
    CHECK(eval_D(0.5, quad) == doctest::Approx(0.75));

    auto tab = DiffusionSpec::tabulated({0.0, 1.0, 0.0});
    CHECK(eval_D(-1.0, tab) == doctest::Approx(0.0));
    CHECK(eval_D(-0.5, tab) == doctest::Approx(0.5));
    CHECK(eval_D(0.0, tab) == doctest::Approx(1.0));
    CHECK(eval_D(1.0, tab) == doctest::Approx(0.0));
    CHECK_THROWS_AS(DiffusionSpec::tabulated({1.0}), std::invalid_argument);
}

TEST_CASE("admissible noise bounds, quadratic cap") {
    auto quad = DiffusionSpec::quadratic_cap();
    auto f = admissible_noise_bounds(quad, 0.1, 0.0, NoiseRule::follower);
    CHECK(f.lo == doctest::Approx(-0.45));
    CHECK(f.hi == doctest::Approx(0.45));
    CHECK(f.contains(0.45));
    CHECK_FALSE(f.contains(0.46));

    auto l = admissible_noise_bounds(quad, 0.1, 0.1, NoiseRule::leader);
    CHECK(l.lo == doctest::Approx(-0.4));
    CHECK(l.hi == doctest::Approx(0.4));

    // a control bound past the margin leaves no admissible noise at all
    auto bad = admissible_noise_bounds(quad, 0.1, 0.6, NoiseRule::leader);
    CHECK(bad.empty());
}

TEST_CASE("admissible noise bounds, degenerate diffusion") {
    auto zero = DiffusionSpec::tabulated({0.0, 0.0});
    auto i = admissible_noise_bounds(zero, 0.1, 0.0, NoiseRule::follower);
    CHECK(std::isinf(i.hi));
    CHECK(i.contains(1e300));
}
