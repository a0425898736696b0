#include <doctest.h>

#include <cmath>

#include "opiniongame/binary_engine.hpp"

using namespace opiniongame;

namespace {
const DiffusionSpec quad = DiffusionSpec::quadratic_cap();
const KernelSpec unit = KernelSpec::unit();
}  // namespace

TEST_CASE("noise half width") {
    CHECK(NoiseSpec{0.0}.half_width() == 0.0);
    CHECK(NoiseSpec{0.01}.half_width() == doctest::Approx(std::sqrt(0.03)));
    CHECK(NoiseSpec::from_sigma(0.1).sigma2 == doctest::Approx(0.01));
}

TEST_CASE("follower-follower compromise") {
    // unit kernel, zero noise: w' = w + a (w* - w)
    auto out = follower_follower(0.0, 0.5, 0.0, 0.0, 0.1, unit, quad, 0.0, 0.0);
    REQUIRE(out.accepted);
    CHECK(out.first == doctest::Approx(0.05));
    CHECK(out.second == doctest::Approx(0.45));
    // symmetric kernel conserves the pair sum exactly
    CHECK(out.first + out.second == doctest::Approx(0.5).epsilon(1e-15));

    // blocked by bounded confidence: both unchanged, still accepted
    auto bc = KernelSpec::bounded_confidence(0.25);
    auto blocked = follower_follower(0.0, 0.5, 0.0, 0.0, 0.1, bc, quad, 0.0, 0.0);
    REQUIRE(blocked.accepted);
    CHECK(blocked.first == 0.0);
    CHECK(blocked.second == 0.5);
}

TEST_CASE("follower-follower noise enters through the diffusion cap") {
    auto out = follower_follower(0.5, 0.5, 0.0, 0.0, 0.1, unit, quad, 0.2, -0.2);
    REQUIRE(out.accepted);
    CHECK(out.first == doctest::Approx(0.5 + 0.2 * 0.75));
    CHECK(out.second == doctest::Approx(0.5 - 0.2 * 0.75));
}

TEST_CASE("follower-follower rejection restores both states") {
    // w = 0.9, w* = 1.0: w' = 0.9 + 0.01 + 0.9 * 0.19 > 1
    auto out = follower_follower(0.9, 1.0, 0.0, 0.0, 0.1, unit, quad, 0.9, 0.0);
    CHECK_FALSE(out.accepted);
}

TEST_CASE("knowledge-gap asymmetry in opinion exchange") {
    auto kgap = KernelSpec::knowledge_gap(50.0);
    auto out = follower_follower(0.0, 0.5, 5.0, 0.0, 0.1, kgap, quad, 0.0, 0.0);
    REQUIRE(out.accepted);
    // knowledgeable agent barely moves, novice moves strongly
    CHECK(std::abs(out.first - 0.0) < 1e-10);
    CHECK(out.second == doctest::Approx(0.45).epsilon(1e-9));
}

TEST_CASE("follower-leader leaves the leader untouched") {
    auto out = follower_leader(0.0, 0.5, 0.0, 0.1, unit, std::nullopt, quad, 0.0);
    REQUIRE(out.accepted);
    CHECK(out.first == doctest::Approx(0.05));
    CHECK(out.second == 0.5);
}

TEST_CASE("leader-leader with shared control drift") {
    auto out = leader_leader(0.0, 0.5, 0.1, unit, quad, 0.0, 0.0, 0.0);
    REQUIRE(out.accepted);
    CHECK(out.first == doctest::Approx(0.05));
    CHECK(out.second == doctest::Approx(0.45));

    // pure control drift: both shift by 2 a u
    auto drift = leader_leader(0.2, 0.2, 0.1, unit, quad, 0.0, 0.0, 0.5);
    REQUIRE(drift.accepted);
    CHECK(drift.first == doctest::Approx(0.3));
    CHECK(drift.second == doctest::Approx(0.3));

    // symmetric kernel: sum changes by exactly 4 a u when noise is zero
    auto s = leader_leader(-0.1, 0.4, 0.1, unit, quad, 0.0, 0.0, 0.25);
    REQUIRE(s.accepted);
    CHECK(s.first + s.second - (-0.1 + 0.4) ==
          doctest::Approx(4.0 * 0.1 * 0.25));
}

TEST_CASE("knowledge exchange") {
    // decay only
    auto d = knowledge_exchange(2.0, 3.0, 5.0, 0.01, 0.01, 0.0, 0.0, 0.0, 0.0);
    REQUIRE(d.accepted);
    CHECK(d.first == doctest::Approx(2.0 * (1.0 - 0.01 * 0.01)));
    CHECK(d.second == doctest::Approx(3.0 * (1.0 - 0.01 * 0.01)));

    // background absorption from zero knowledge
    auto b = knowledge_exchange(0.0, 0.0, 5.0, 0.01, 0.01, 0.0, 0.005, 0.0, 0.0);
    REQUIRE(b.accepted);
    CHECK(b.first == doctest::Approx(2.5e-4));
    CHECK(b.second == doctest::Approx(2.5e-4));

    // the mean fixed point x = lambda_B m_B / (lambda - lambda_C) is invariant
    const double xfix = 0.005 * 5.0 / (0.01 - 0.005);
    auto f = knowledge_exchange(xfix, xfix, 5.0, 0.01, 0.01, 0.005, 0.005, 0.0,
                                0.0);
    REQUIRE(f.accepted);
    CHECK(f.first == doctest::Approx(xfix));
    CHECK(f.second == doctest::Approx(xfix));

    // multiplicative noise below -1 + lambda+ would drive knowledge negative
    auto neg = knowledge_exchange(1.0, 1.0, 0.0, 0.01, 0.01, 0.0, 0.0, -1.01,
                                  0.0);
    CHECK_FALSE(neg.accepted);
}

TEST_CASE("mean knowledge recursion converges to the analytic fixed point") {
    // scalar iteration oracle for E[x'] = (1 - a(l - l_C)) E[x] + a l_B m_B
    const double alpha = 0.01, lambda = 0.01, lc = 0.005, lb = 0.005, mb = 5.0;
    double x = 0.05;
    for (int i = 0; i < 400000; ++i) {
        x = (1.0 - alpha * (lambda - lc)) * x + alpha * lb * mb;
    }
    CHECK(x == doctest::Approx(lb * mb / (lambda - lc)).epsilon(1e-6));
}
