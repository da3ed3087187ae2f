#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mixpde/quadrature.hpp"

using namespace mixpde;
using Catch::Approx;

TEST_CASE("textbook integrals", "[quadrature]") {
    double s = quad_gl([](double t) { return std::sin(t); }, 0.0, std::numbers::pi, 64);
    CHECK(s == Approx(2.0).margin(1e-12));

    double q = quad_gl([](double t) { return t * t; }, 0.0, 1.0, 16);
    CHECK(q == Approx(1.0 / 3.0).margin(1e-15));
}

TEST_CASE("polynomial exactness of one 16-point panel", "[quadrature]") {
    // degree 31 is integrated exactly
    double v = quad_gl([](double t) { return std::pow(t, 31.0); }, 0.0, 1.0, 16);
    CHECK(v == Approx(1.0 / 32.0).margin(1e-14));
}

TEST_CASE("nu kernel closed form at x = 1/2", "[quadrature]") {
    const double x = 0.5;
    auto f = [x](double th) {
        double s = std::sin(th);
        double den = 1.0 - 2.0 * x * std::cos(th) + x * x;
        return s * s / (den * den);
    };
    double v256 = quad_gl(f, 0.0, std::numbers::pi, 256);
    double exact = std::numbers::pi / (2.0 * (1.0 - x * x));
    CHECK(v256 == Approx(exact).margin(1e-10));
    // brute-force refinement agrees
    double v4096 = quad_gl(f, 0.0, std::numbers::pi, 4096);
    CHECK(v256 == Approx(v4096).margin(1e-10));
}

TEST_CASE("doubling the node count moves smooth results below 1e-10", "[quadrature][property]") {
    auto f = [](double t) { return std::exp(t) * std::sin(3.0 * t); };
    double a = quad_gl(f, 0.0, 3.0, 128);
    double b = quad_gl(f, 0.0, 3.0, 256);
    CHECK(std::abs(a - b) <= 1e-10);
}

TEST_CASE("interval and parameter errors", "[quadrature]") {
    auto f = [](double t) { return t; };
    CHECK_THROWS_AS(quad_gl(f, 1.0, 0.0, 16), BadInterval);
    CHECK_THROWS_AS(quad_gl(f, 0.0, 1.0, 1), BadParameter);
    CHECK(quad_gl(f, 2.0, 2.0, 16) == 0.0);
}

TEST_CASE("small node counts fall back to a single panel", "[quadrature]") {
    double v = quad_gl([](double t) { return t * t * t; }, 0.0, 1.0, 2);
    CHECK(v == Approx(0.25).margin(1e-14));  // 2-point rule is exact through degree 3
}

TEST_CASE("graded panels resolve a near-singular peak", "[quadrature]") {
    // integral of d / ((t-t*)^2 + d^2) over [0, pi] -> atan closed form
    const double tstar = 1.0, d = 1e-6;
    auto f = [&](double t) { return d / ((t - tstar) * (t - tstar) + d * d); };
    PanelLayout lay = graded_panels(0.0, std::numbers::pi, 256, tstar, d);
    double acc = 0.0;
    for (std::size_t i = 0; i < lay.size(); ++i) acc += lay.weight[i] * f(lay.node[i]);
    double exact = std::atan((std::numbers::pi - tstar) / d) + std::atan(tstar / d);
    CHECK(acc == Approx(exact).margin(1e-9));
}
