#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mixpde/numerics.hpp"
#include "mixpde/tricomi.hpp"
#include "mixpde/view.hpp"

using namespace mixpde;
using namespace mixpde::numerics;
using families::OperatorTag;
using Catch::Approx;

TEST_CASE("fd residuals of reference fields", "[numerics]") {
    auto linear = [](long double, long double y) { return y; };
    CHECK(std::abs(fd_residual(linear, {0.3, 0.2}, 1e-3, OperatorTag::Laplace)) <= 1e-10);

    auto quad = [](long double x, long double y) { return x * x + y * y; };
    CHECK(fd_residual(quad, {0.3, 0.2}, 1e-3, OperatorTag::Laplace) == Approx(4.0).margin(1e-6));
    CHECK(std::abs(fd_residual(quad, {0.3, 0.2}, 1e-3, OperatorTag::Wave)) <= 1e-10);
    CHECK(std::abs(fd_residual(quad, {-1.2, 2.7}, 1e-3, OperatorTag::Wave)) <= 1e-10);

    CHECK_THROWS_AS(fd_residual(linear, {0, 0}, -1.0, OperatorTag::Laplace), BadParameter);
}

TEST_CASE("stencil leaving the domain is a distinct error", "[numerics]") {
    auto disk_field = [](long double x, long double y) -> long double {
        if (x * x + y * y > 1.0) throw OutOfDomain("outside");
        return x;
    };
    CHECK_THROWS_AS(fd_residual(disk_field, {0.9999, 0.0}, 1e-3, OperatorTag::Laplace),
                    StencilOutOfDomain);
}

namespace {

FieldView exact_y_on_tricomi() {
    FieldView v;
    v.name = "exact-y";
    v.grid_desc = "tricomi 61x61";
    v.value = [](long double, long double y) { return y; };
    v.tag = [](Point p) {
        if (p.y > 0) return OperatorTag::Laplace;
        if (p.y < 0) return OperatorTag::Wave;
        return OperatorTag::Interface;
    };
    v.contains = [](Point p, double m) {
        return classify_tricomi(p) != Region::Outside &&
               std::hypot(p.x, p.y) < 1.0 - m && p.y - (p.x - 1.0) > m && p.y - (-p.x - 1.0) > m;
    };
    v.interface_distance = [](Point p) { return std::abs(p.y); };
    v.sign_semantics = true;
    for (int j = 0; j < 61; ++j)
        for (int i = 0; i < 61; ++i) {
            Point p{-1.0 + 2.0 * i / 60.0, -1.0 + 2.0 * j / 60.0};
            if (classify_tricomi(p) != Region::Outside) v.grid.push_back(p);
        }
    return v;
}

}  // namespace

TEST_CASE("verify_solution on the exact mixed field U = y", "[numerics]") {
    auto rep = verify_solution(exact_y_on_tricomi());
    CHECK(rep.pass);
    CHECK(rep.max_residual() <= 1e-10);
    CHECK(rep.sign_consistent);
    CHECK(rep.residual_nodes > 500);
}

TEST_CASE("a corrupted field is reported FAIL with the injected residual", "[numerics]") {
    auto v = exact_y_on_tricomi();
    v.value = [](long double x, long double y) { return y + 0.01L * x * x * x; };
    VerifyOptions opt;
    opt.interface_value_tol = 1e-2;  // the perturbation also shifts boundary values
    auto rep = verify_solution(v, opt);
    CHECK_FALSE(rep.pass);
    // Laplace residual of 0.01 x^3 is 0.06 x; grid reaches |x| near 1
    CHECK(rep.max_residual_laplace == Approx(0.06).margin(0.01));
}

TEST_CASE("verify_solution passes the default disk family on the fine grid", "[numerics]") {
    auto sol = families::validate(families::DirichletEq1Mixed{});
    auto rep = verify_solution(make_field_view(sol, 201));
    CHECK(rep.pass);
    CHECK(rep.max_residual() <= 1e-6);
    CHECK(rep.max_interface_jump <= 1e-10);
    CHECK(rep.sign_consistent);
    // the raw second-order residual near the interface is orders larger;
    // extrapolation is what removes the stencil's own truncation
    CHECK(rep.max_residual_raw > 1e-6);
}

TEST_CASE("interface C1 check: analytic path and a deliberate kink", "[numerics]") {
    auto sol = families::validate(families::DirichletEq1Mixed{});
    auto view = make_field_view(sol, 41);
    CHECK(interface_c1_check(view, view.interface_curve, 1e-3) <= 1e-12);

    auto hp = families::validate(families::HalfPlaneEq1{});
    auto hview = make_field_view(hp, 41);
    CHECK(interface_c1_check(hview, hview.interface_curve, 1e-3) <= 1e-12);

    FieldView kink;
    kink.value = [](long double, long double y) { return std::abs(y); };
    kink.interface_normal = [](Point) { return Vec2{0.0, 1.0}; };
    std::vector<Point> curve;
    for (int i = 0; i < 10; ++i) curve.push_back({-0.5 + i / 9.0, 0.0});
    CHECK(interface_c1_check(kink, curve, 1e-3) == Approx(2.0).margin(1e-6));
}

TEST_CASE("truncation of the raw residual halves as h^2", "[numerics][property]") {
    auto sol = families::validate(families::DirichletEq1Mixed{});
    auto field = [&](long double x, long double y) { return sol.eval_at<long double>(x, y); };
    // logarithmic ring branch has a genuine fourth derivative
    for (Point p : {Point{0.7, 0.1}, Point{0.0, 0.8}, Point{-0.6, -0.3}}) {
        double r1 = std::abs(fd_residual(field, p, 1e-2, OperatorTag::Laplace));
        double r2 = std::abs(fd_residual(field, p, 5e-3, OperatorTag::Laplace));
        REQUIRE(r2 > 1e-12);
        CHECK(r1 / r2 >= 3.5);
        CHECK(r1 / r2 <= 4.5);
    }
}

TEST_CASE("oracle matches the exact harmonic field and its nu", "[numerics]") {
    auto phi = tricomi::BoundaryPhi::sin_theta();
    auto field = oracle_halfdisk(phi, 129, 129);
    CHECK(field.final_update <= 1e-10);
    double worst = 0.0;
    for (int i = 1; i < field.n_r - 1; ++i)
        for (int j = 1; j < field.n_theta - 1; ++j) {
            Point p = field.point(i, j);
            worst = std::max(worst, std::abs(field.value(i, j) - p.y));
        }
    CHECK(worst <= 5e-3);

    double worst_nu = 0.0;
    for (auto [x, v] : field.nu_samples())
        if (std::abs(x) <= 0.9) worst_nu = std::max(worst_nu, std::abs(v - 1.0));
    CHECK(worst_nu <= 5e-3);

    // boundary rows carry the imposed data exactly
    for (int j = 1; j < field.n_theta - 1; ++j)
        CHECK(field.value(field.n_r - 1, j) == phi(field.dtheta * j));
    for (int i = 0; i < field.n_r; ++i) {
        CHECK(field.value(i, 0) == 0.0);
        CHECK(field.value(i, field.n_theta - 1) == 0.0);
    }
}

TEST_CASE("oracle nu for the sin(2 theta) datum tracks 2x", "[numerics]") {
    auto field = oracle_halfdisk(tricomi::BoundaryPhi::sin_2theta(), 129, 129);
    double worst = 0.0;
    for (auto [x, v] : field.nu_samples())
        if (std::abs(x) <= 0.9) worst = std::max(worst, std::abs(v - 2.0 * x));
    CHECK(worst <= 5e-3);
}

TEST_CASE("oracle versus kernel nu", "[numerics][property]") {
    auto phi = tricomi::BoundaryPhi::sin_cubed();
    auto field = oracle_halfdisk(phi, 129, 129);
    auto samples = field.nu_samples();
    int used = 0;
    for (std::size_t k = 0; k < samples.size() && used < 50; k += 3) {
        auto [x, v] = samples[k];
        if (std::abs(x) > 0.9) continue;
        double kernel = tricomi::nu_eval(phi, x, 128, tricomi::KernelConstantMode::CorrectedConstant);
        CHECK(std::abs(kernel - v) <= 1e-2);
        ++used;
    }
    CHECK(used >= 40);
}

TEST_CASE("oracle reports non-convergence instead of a bad field", "[numerics]") {
    OracleOptions opt;
    opt.max_sweeps = 3;
    CHECK_THROWS_AS(oracle_halfdisk(tricomi::BoundaryPhi::sin_theta(), 65, 65, opt), NoConvergence);
    CHECK_THROWS_AS(oracle_halfdisk(tricomi::BoundaryPhi::sin_theta(), 9, 65), BadParameter);
}
