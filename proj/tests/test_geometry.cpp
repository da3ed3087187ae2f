#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mixpde/geometry.hpp"

using namespace mixpde;
using Catch::Approx;

TEST_CASE("polar coordinates on the axes", "[geometry]") {
    auto p1 = polar({1.0, 0.0});
    CHECK(p1.r == Approx(1.0));
    CHECK(p1.theta == Approx(0.0).margin(0));

    auto p2 = polar({0.0, 2.0});
    CHECK(p2.r == Approx(2.0));
    CHECK(p2.theta == Approx(std::numbers::pi / 2));

    auto p3 = polar({-1.0, 0.0});
    CHECK(p3.r == Approx(1.0));
    CHECK(p3.theta == Approx(std::numbers::pi));

    auto origin = polar({0.0, 0.0});
    CHECK(origin.r == 0.0);
    CHECK(origin.theta == 0.0);

    // theta stays in [0, 2*pi)
    auto below = polar({0.5, -1e-3});
    CHECK(below.theta > std::numbers::pi);
    CHECK(below.theta < 2 * std::numbers::pi);
}

TEST_CASE("tricomi classification of interior and boundary points", "[geometry]") {
    CHECK(classify_tricomi({0.0, 0.5}) == Region::D1Upper);
    CHECK(classify_tricomi({0.0, -0.5}) == Region::D2Triangle);
    CHECK(classify_tricomi({-0.5, -0.5}) == Region::OnCharAC);
    CHECK(classify_tricomi({0.5, -0.5}) == Region::OnCharBC);
    CHECK(classify_tricomi({0.3, 0.0}) == Region::OnDiameter);
    double c = std::numbers::sqrt2 / 2;
    CHECK(classify_tricomi({c, c}) == Region::OnSigma);
    CHECK(classify_tricomi({1.5, 0.5}) == Region::Outside);
    CHECK(classify_tricomi({0.0, -1.2}) == Region::Outside);

    // corners: diameter precedence at A and B, characteristics meet at C
    CHECK(classify_tricomi({-1.0, 0.0}) == Region::OnDiameter);
    CHECK(classify_tricomi({1.0, 0.0}) == Region::OnDiameter);
    auto at_c = classify_tricomi({0.0, -1.0});
    CHECK((at_c == Region::OnCharAC || at_c == Region::OnCharBC));
}

TEST_CASE("boundary tags win within the tolerance band", "[geometry]") {
    CHECK(classify_tricomi({0.3, 1e-10}) == Region::OnDiameter);
    CHECK(classify_tricomi({0.3, -1e-10}) == Region::OnDiameter);
    double r = 1.0 - 1e-10;
    CHECK(classify_tricomi({r * std::cos(1.0), r * std::sin(1.0)}) == Region::OnSigma);
    // on AC shifted inward by less than the band
    Point p{-0.5 + 1e-10, -0.5};
    CHECK(classify_tricomi(p) == Region::OnCharAC);
    // wider tolerance pulls nearby interior points onto the boundary
    CHECK(classify_tricomi({0.3, 1e-5}, 1e-4) == Region::OnDiameter);
    CHECK_THROWS_AS(classify_tricomi({0, 0}, 1e-2), BadParameter);
}

TEST_CASE("classification is a partition and symmetric in x", "[geometry][property]") {
    std::mt19937 rng(20260810);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    int region_counts[7] = {0};
    for (int k = 0; k < 10000; ++k) {
        Point p{u(rng), u(rng)};
        Region r = classify_tricomi(p);
        ++region_counts[int(r)];
        CHECK(classify_tricomi(p) == r);  // deterministic

        Region m = classify_tricomi({-p.x, p.y});
        Region expected = r;
        if (r == Region::OnCharAC) expected = Region::OnCharBC;
        if (r == Region::OnCharBC) expected = Region::OnCharAC;
        CHECK(m == expected);

        // interior tags agree with their defining inequalities
        double rad = std::hypot(p.x, p.y);
        if (r == Region::D1Upper) {
            CHECK(p.y > 0);
            CHECK(rad < 1.0);
        } else if (r == Region::D2Triangle) {
            CHECK(p.y < 0);
            CHECK(p.y > -p.x - 1.0);
            CHECK(p.y > p.x - 1.0);
        }
    }
    // random points in [-2,2]^2 land in both interior regions and outside
    CHECK(region_counts[int(Region::D1Upper)] > 0);
    CHECK(region_counts[int(Region::D2Triangle)] > 0);
    CHECK(region_counts[int(Region::Outside)] > 0);
}

TEST_CASE("domain specs", "[geometry]") {
    CHECK_THROWS_AS(make_disk(-1.0), BadParameter);
    DomainSpec d = make_disk(2.0);
    CHECK(domain_contains(d, {1.9, 0}));
    CHECK_FALSE(domain_contains(d, {2.1, 0}));
    CHECK(domain_contains(GoursatWedge{}, {0.5, 0.2}));
    CHECK_FALSE(domain_contains(GoursatWedge{}, {0.5, -0.8}));
    CHECK(domain_contains(TricomiUnit{}, {0.0, -0.5}));
    CHECK_FALSE(domain_contains(TricomiUnit{}, {0.0, 1.5}));
}
