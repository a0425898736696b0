#include <doctest.h>

#include <cmath>
#include <vector>

#include "opiniongame/stationary.hpp"

using namespace opiniongame;

namespace {

// Finite-difference residual of the stationary flux balance
//   (b - w) f(w) = (s^2/2) d/dw [ (1-w^2)^2 f(w) ]
// maximized over a grid in [-0.95, 0.95], relative to the largest
// left-hand side. Five-point central stencil.
double fd_residual(const NormalizedStationary& f) {
    const double b = f.density().b;
    const double s2 = f.density().sigma2;
    auto g = [&](double w) {
        const double c = 1.0 - w * w;
        return c * c * f(w);
    };
    const double h = 1e-4;
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i <= 380; ++i) {
        const double w = -0.95 + 0.005 * i;
        const double dg = (-g(w + 2 * h) + 8 * g(w + h) - 8 * g(w - h) +
                           g(w - 2 * h)) /
                          (12 * h);
        const double lhs = (b - w) * f(w);
        worst = std::max(worst, std::abs(lhs - 0.5 * s2 * dg));
        scale = std::max(scale, std::abs(lhs));
    }
    return worst / scale;
}

}  // namespace

TEST_CASE("symmetric density at b = 0") {
    NormalizedStationary f({0.0, 0.015});
    CHECK(f(0.3) == doctest::Approx(f(-0.3)));
    CHECK(f(0.0) > 0.0);
    CHECK(f.mean() == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("density vanishes at the boundary despite the algebraic blow-up") {
    NormalizedStationary f({0.25, 0.02});
    CHECK(f(0.999999) == doctest::Approx(0.0));
    CHECK(f(-0.999999) == doctest::Approx(0.0));
    // log form stays finite where the direct formula underflows
    CHECK(std::isfinite(f.density().log_unnormalized(0.5)));
    CHECK(f.density().unnormalized(0.0) >= 0.0);
}

TEST_CASE("normalization and mean") {
    for (auto [b, s2] : {std::pair{0.0, 0.005}, std::pair{0.3, 0.015},
                         std::pair{-0.5, 0.01}, std::pair{0.5, 0.01}}) {
        NormalizedStationary f({b, s2});
        CHECK(f.integrate(-1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(f.mean() == doctest::Approx(b).epsilon(1e-6));
        CHECK(f.normalization() > 0.0);
    }
}

TEST_CASE("finite-difference residual of the flux balance") {
    CHECK(fd_residual(NormalizedStationary({0.0, 0.005})) <= 1e-6);
    CHECK(fd_residual(NormalizedStationary({0.3, 0.015})) <= 1e-6);
    CHECK(fd_residual(NormalizedStationary({-0.5, 0.01})) <= 1e-6);
}

TEST_CASE("leader shift") {
    std::vector<double> psi{1.0};
    std::vector<double> targets{0.5};
    // single group: vbar = target, shift collapses to m_L_inf
    CHECK(leader_shift(0.25, psi, targets, 0.5) == doctest::Approx(0.25));

    std::vector<double> psi2{0.5, 0.5};
    std::vector<double> t2{0.5, -0.5};
    // symmetric targets around vbar = 0 cancel
    CHECK(leader_shift(0.1, psi2, t2, 0.0) == doctest::Approx(0.1));
    std::vector<double> t3{0.6, 0.2};
    // (1/2)(0.5(0.6-0.4) + 0.5(0.2-0.4)) = 0
    CHECK(leader_shift(0.1, psi2, t3, 0.4) == doctest::Approx(0.1));
    std::vector<double> psi3{1.0, 0.0};
    CHECK(leader_shift(0.0, psi3, t3, 0.4) ==
          doctest::Approx(0.5 * (0.6 - 0.4)));
}

TEST_CASE("l1 distance vanishes for a histogram matching the density") {
    NormalizedStationary f({0.0, 0.015});
    Histogram h;
    h.lo = -1.0;
    h.hi = 1.0;
    h.samples = 1;
    const std::size_t bins = 50;
    h.density.resize(bins);
    const double width = 2.0 / static_cast<double>(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        const double lo = -1.0 + width * static_cast<double>(i);
        h.density[i] = f.integrate(lo, lo + width) / width;
    }
    CHECK(l1_distance(h, f) == doctest::Approx(0.0).epsilon(1e-8));

    // a flat histogram is far from the concentrated density
    Histogram flat = h;
    for (auto& d : flat.density) d = 0.5;
    CHECK(l1_distance(flat, f) > 0.5);
}
