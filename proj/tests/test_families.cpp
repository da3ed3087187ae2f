#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mixpde/families.hpp"
#include "mixpde/numerics.hpp"

using namespace mixpde;
using namespace mixpde::families;
using Catch::Approx;

namespace {

bool has_violation(const std::vector<ConstraintViolation>& v, const std::string& param) {
    for (const auto& c : v)
        if (c.parameter == param) return true;
    return false;
}

}  // namespace

TEST_CASE("validate accepts good parameters and lists violations", "[families]") {
    CHECK_NOTHROW(validate(DirichletEq1Mixed{1.0, 1.0, 0.5}));

    auto v = check(DirichletEq1Mixed{1.0, -1.0, 0.5});
    REQUIRE(has_violation(v, "H"));
    CHECK_THROWS_AS(validate(DirichletEq1Mixed{1.0, -1.0, 0.5}), ValidationError);

    auto v2 = check(NeumannEq1TrivialHyp{1.0, 1.0, 0.0});
    REQUIRE(has_violation(v2, "C"));  // needs C < -K*R/2 = -0.5
    try {
        validate(NeumannEq1TrivialHyp{1.0, 1.0, 0.0});
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        REQUIRE(e.violations().size() == 1);
        CHECK(e.violations()[0].parameter == "C");
        CHECK(e.violations()[0].value == 0.0);
    }

    // every violated inequality is listed
    auto v3 = check(DirichletEq1Mixed{-1.0, -1.0, 0.5});
    CHECK(v3.size() >= 2);

    CHECK(check(CauchyEq1TrivialHyp{1.0, 0.0, 1.0}).empty());   // H <= 0 with K > 0
    CHECK(has_violation(check(CauchyEq1TrivialHyp{1.0, 0.5, 1.0}), "H"));
    CHECK(check(CauchyEq1TrivialHyp{1.0, -1.0, -1.0}).empty()); // H - KR/2 < 0 with K < 0
    CHECK(has_violation(check(CauchyEq1TrivialHyp{1.0, 0.0, -1.0}), "H"));
}

TEST_CASE("goursat matching condition", "[families]") {
    GoursatEq1 bad;
    bad.f2 = Callable1D::polynomial({1.5, -1.0});  // f2(1/2) = 1 != f1(1/2) = 0
    CHECK_THROWS_AS(validate(FamilySpec{bad}), GoursatMismatch);
    CHECK_NOTHROW(validate(FamilySpec{GoursatEq1{}}));
}

TEST_CASE("dirichlet mixed field values", "[families]") {
    auto s = validate(DirichletEq1Mixed{1.0, 1.0, 0.5});
    CHECK(s.eval({1.0, 0.0}) == Approx(1.0).margin(1e-12));
    CHECK(s.eval({0.0, 0.0}) == Approx(-1.0 / (2.0 * std::log(2.0))).margin(1e-12));
    CHECK(s.eval({0.75, 0.0}) == Approx(std::log(2.0 / 3.0) / std::log(0.5)).margin(1e-12));
    CHECK_THROWS_AS(s.eval({1.5, 0.0}), OutOfDomain);
}

TEST_CASE("half-plane and goursat field values", "[families]") {
    auto hp = validate(HalfPlaneEq1{1.0});
    CHECK(hp.eval({0.0, std::numbers::pi / 2}) == Approx(1.0).margin(1e-12));
    CHECK_THROWS_AS(hp.eval({0.0, -0.5}), OutOfDomain);

    auto g = validate(FamilySpec{GoursatEq1{}});
    CHECK(g.eval({0.5, 0.2}) == Approx(-0.7).margin(1e-12));
    CHECK_THROWS_AS(g.eval({-1.0, 0.2}), OutOfDomain);
}

TEST_CASE("analytic gradients match the closed forms", "[families]") {
    auto s = validate(DirichletEq1Mixed{1.0, 1.0, 0.5});
    // radial derivative at the interface, from either side
    double want = -1.0 / (0.5 * std::log(0.5));
    Vec2 g1 = s.grad({0.5, 0.0});
    CHECK(g1.x == Approx(want).margin(1e-12));
    CHECK(g1.y == Approx(0.0).margin(1e-15));

    auto wp = validate(WholePlaneEq1{1.0, 1.0});
    Vec2 g2 = wp.grad({1.0, 0.0});
    CHECK(g2.x == Approx(2.0).margin(1e-12));

    auto hp = validate(HalfPlaneEq1{1.0});
    Vec2 g3 = hp.grad({0.0, std::numbers::pi});
    CHECK(g3.y == Approx(-1.0).margin(1e-12));
}

TEST_CASE("operator tags", "[families]") {
    auto s = validate(DirichletEq1Mixed{1.0, 1.0, 0.5});
    CHECK(s.operator_tag({0.25, 0.0}) == OperatorTag::Wave);
    CHECK(s.operator_tag({0.75, 0.0}) == OperatorTag::Laplace);
    CHECK(s.operator_tag({0.5, 0.0}) == OperatorTag::Interface);

    // factored-equation fields report the annihilated factor, never sign(U)
    auto t = validate(DirichletEq2TrivialHyp{1.0, 1.0, 1.0});
    CHECK(t.operator_tag({0.3, 0.2}) == OperatorTag::Wave);
    auto m = validate(DirichletEq2Mixed{1.0, -5.0, 1.0, 0.5});
    CHECK(m.eval({0.9, 0.0}) < 0.0);
    CHECK(m.operator_tag({0.9, 0.0}) == OperatorTag::Laplace);
    auto flat = validate(DirichletEq2Mixed{1.0, 2.0, 0.0, 0.5});
    CHECK(flat.operator_tag({0.3, 0.2}) == OperatorTag::BothDegenerate);

    auto hp = validate(HalfPlaneEq1{1.0});
    CHECK(hp.operator_tag({0.0, 1.0}) == OperatorTag::Laplace);
    CHECK(hp.operator_tag({0.0, 4.0}) == OperatorTag::Wave);
    CHECK(hp.operator_tag({0.0, std::numbers::pi}) == OperatorTag::Interface);
}

TEST_CASE("cauchy interface radius", "[families]") {
    CHECK(cauchy_interface_radius(1.0, std::log(2.0), 1.0) == Approx(0.5).margin(1e-15));
    CHECK(cauchy_interface_radius(2.0, 2.0 * std::log(2.0) * 2.0, 2.0) == Approx(1.0).margin(1e-14));
    // interface approaches the boundary as H -> 0+
    double a = cauchy_interface_radius(1.0, 1e-12, 1.0);
    CHECK(a < 1.0);
    CHECK(a > 1.0 - 1e-11);
    CHECK_THROWS_AS(cauchy_interface_radius(1.0, -1.0, 1.0), BadParameter);
}

TEST_CASE("interface C1 matching across every mixed family", "[families][property]") {
    std::vector<FamilySpec> mixed = {DirichletEq1Mixed{}, DirichletEq2Mixed{}, NeumannEq1Mixed{},
                                     NeumannEq2Mixed{},   CauchyEq1Mixed{},    CauchyEq2Mixed{},
                                     WholePlaneEq1{},     HalfPlaneEq1{}};
    for (const auto& spec : mixed) {
        auto s = validate(spec);
        for (Point p : s.interface_samples(100))
            CHECK(s.interface_gradient_jump(p) <= 1e-10);
    }
}

TEST_CASE("boundary data is reproduced to 1e-12", "[families][property]") {
    auto s = validate(DirichletEq1Mixed{});
    auto n = validate(NeumannEq1Mixed{});
    auto c = validate(CauchyEq1Mixed{});
    for (int k = 0; k < 360; ++k) {
        double th = 2.0 * std::numbers::pi * k / 360.0;
        Point p{std::cos(th), std::sin(th)};
        CHECK(std::abs(s.eval(p) - 1.0) <= 1e-12);
        Vec2 gn = n.grad(p);
        CHECK(std::abs(gn.x * std::cos(th) + gn.y * std::sin(th) - 1.0) <= 1e-12);
        Vec2 gc = c.grad(p);
        CHECK(std::abs(c.eval(p) - 1.0) <= 1e-12);
        CHECK(std::abs(gc.x * std::cos(th) + gc.y * std::sin(th) - 1.0) <= 1e-12);
    }
}

TEST_CASE("residual of the tagged operator is second order and sign-consistent",
          "[families][property]") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const auto& spec : all_default_specs()) {
        auto s = validate(spec);
        auto field = [&](long double x, long double y) { return s.eval_at<long double>(x, y); };
        int checked = 0;
        for (int tries = 0; tries < 400 && checked < 25; ++tries) {
            Point p{u(rng), u(rng)};
            if (std::holds_alternative<GoursatEq1>(spec)) p.y = std::abs(p.y);  // keep inside wedge
            if (std::holds_alternative<HalfPlaneEq1>(spec)) p.y = std::abs(p.y) * 3.0 + 0.05;
            if (!s.contains(p, 2.5e-2)) continue;
            auto d = s.interface_distance(p);
            if (d < 5e-2) continue;
            OperatorTag tag = s.operator_tag(p);
            if (tag == OperatorTag::Interface) continue;
            ++checked;

            if (s.sign_semantics()) {
                double v = s.eval(p);
                if (tag == OperatorTag::Laplace) CHECK(v > 0.0);
                if (tag == OperatorTag::Wave) CHECK(v < 0.0);
            }
            double r1 = numerics::fd_residual(field, p, 1e-2, tag);
            double r2 = numerics::fd_residual(field, p, 1e-3, tag);
            CHECK(std::abs(r2) <= 1e-4);  // residual bounded by C*h^2
            if (std::abs(r2) > 1e-10) {
                double order = std::log10(std::abs(r1) / std::abs(r2));
                CHECK(order >= 1.9);
            }
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("goursat field takes its characteristic data and stays nonpositive",
          "[families][property]") {
    GoursatEq1 g;
    g.f1 = Callable1D::polynomial({-0.125, 0.75, -1.5, 1.0});  // (x-1/2)^3
    g.f2 = Callable1D::polynomial({-0.25, 1.0, -1.0});         // -(x-1/2)^2
    REQUIRE(std::abs(g.f1(0.5) - g.f2(0.5)) <= 1e-12);
    auto s = validate(FamilySpec{g});
    for (int k = 0; k < 50; ++k) {
        double x = -2.0 + 2.5 * k / 49.0;
        CHECK(s.eval({x, -x}) == Approx(g.f1(x)).margin(1e-12));
    }
    for (int k = 0; k < 50; ++k) {
        double x = 0.5 + 2.0 * k / 49.0;
        CHECK(s.eval({x, x - 1.0}) == Approx(g.f2(x)).margin(1e-12));
    }
    // negativity condition: f1 - f1(1/2) <= 0 on x <= 1/2 and f2 <= 0 on x >= 1/2
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uy(-0.49, 1.5);
    for (int k = 0; k < 200; ++k) {
        double y = uy(rng);
        std::uniform_real_distribution<double> ux(-y, y + 1.0);
        double x = ux(rng);
        CHECK(s.eval({x, y}) <= 1e-12);
    }
}

TEST_CASE("mixed fields vanish exactly on the interface and nowhere else",
          "[families][property]") {
    for (const auto& spec : {FamilySpec{DirichletEq1Mixed{}}, FamilySpec{WholePlaneEq1{}}}) {
        auto s = validate(spec);
        double a = s.interface_radius().value();
        for (int k = 0; k < 50; ++k) {
            double th = 2.0 * std::numbers::pi * k / 50.0;
            CHECK(std::abs(s.eval({a * std::cos(th), a * std::sin(th)})) <= 1e-12);
            CHECK(s.operator_tag({a * std::cos(th), a * std::sin(th)}) == OperatorTag::Interface);
            CHECK(std::abs(s.eval({(a + 0.05) * std::cos(th), (a + 0.05) * std::sin(th)})) > 1e-3);
            CHECK(std::abs(s.eval({(a - 0.05) * std::cos(th), (a - 0.05) * std::sin(th)})) > 1e-3);
        }
    }
}

TEST_CASE("callable table path interpolates cubics", "[families]") {
    std::vector<double> xs, ys;
    for (int i = 0; i <= 40; ++i) {
        double x = -2.0 + 4.0 * i / 40.0;
        xs.push_back(x);
        ys.push_back(x * x * x - x);
    }
    auto f = Callable1D::table(xs, ys);
    CHECK(f(0.37) == Approx(0.37 * 0.37 * 0.37 - 0.37).margin(1e-12));  // cubic is reproduced
    CHECK(f.deriv(0.37) == Approx(3 * 0.37 * 0.37 - 1.0).margin(1e-10));
    CHECK_THROWS_AS(Callable1D::table({0, 1}, {0, 1}), BadParameter);
}
