#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "mixpde/families.hpp"
#include "mixpde/numerics.hpp"
#include "mixpde/tricomi.hpp"
#include "mixpde/view.hpp"

namespace mixpde::acceptance {

struct CriterionResult {
    std::string id;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

namespace acc_detail {

class Timer {
public:
    Timer() : t0_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

inline std::vector<Point> random_d2_points(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ux(-1.0, 1.0), uy(-1.0, 0.0);
    std::vector<Point> pts;
    pts.reserve(n);
    while (int(pts.size()) < n) {
        Point p{ux(rng), uy(rng)};
        if (classify_tricomi(p) == Region::D2Triangle) pts.push_back(p);
    }
    return pts;
}

inline std::vector<Point> random_d1_points(int n, unsigned seed, double rmax = 0.98) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ux(-1.0, 1.0), uy(0.0, 1.0);
    std::vector<Point> pts;
    pts.reserve(n);
    while (int(pts.size()) < n) {
        Point p{ux(rng), uy(rng)};
        if (p.y > 0.02 && std::hypot(p.x, p.y) < rmax) pts.push_back(p);
    }
    return pts;
}

/// Admissible random polynomial datum: f(t) = -int_{-1}^t (eps + q(s)^2) ds
/// with deg f <= 8, so f(-1)=0 and f' < 0.
inline tricomi::CharacteristicF random_admissible_poly(std::mt19937& rng) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<double> q(4);
    for (auto& c : q) c = coef(rng);
    // g = eps + q^2, degree 6
    std::vector<double> g(7, 0.0);
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) g[i + j] += q[i] * q[j];
    g[0] += 0.05;
    // f = -int g, with f(-1) = 0
    std::vector<double> f(8, 0.0);
    for (std::size_t k = 0; k < g.size(); ++k) f[k + 1] = -g[k] / double(k + 1);
    double at_m1 = 0.0, p = -1.0;
    for (std::size_t k = 1; k < f.size(); ++k) {
        at_m1 += f[k] * p;
        p *= -1.0;
    }
    f[0] = -at_m1;
    return tricomi::CharacteristicF::polynomial(std::move(f));
}

}  // namespace acc_detail

/// Run every acceptance criterion, printing one PASS/FAIL line per criterion.
inline std::vector<CriterionResult> run_criteria(std::ostream& os) {
    using namespace acc_detail;
    using families::OperatorTag;
    using tricomi::KernelConstantMode;
    std::vector<CriterionResult> results;

    auto emit = [&](CriterionResult r) {
        os << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  (" << fmt(r.seconds) << " s)  "
           << r.detail << "\n";
        os.flush();
        results.push_back(std::move(r));
    };

    // 1. closed-form family suite ------------------------------------------------
    {
        CriterionResult c{"criterion-1 family-suite", true, 0, ""};
        Timer total;
        double worst_resid = 0, worst_jump = 0, slowest = 0;
        std::string failing;
        for (const auto& spec : families::all_default_specs()) {
            Timer per;
            auto sol = families::validate(spec);
            auto view = make_field_view(sol, 201);
            numerics::VerifyOptions opt;
            opt.h = 1e-3;
            opt.residual_tol = 1e-6;
            opt.jump_tol = 1e-10;
            auto rep = numerics::verify_solution(view, opt);
            double secs = per.seconds();
            slowest = std::max(slowest, secs);
            worst_resid = std::max(worst_resid, rep.max_residual());
            worst_jump = std::max(worst_jump, rep.max_interface_jump);
            if (!rep.pass || secs > 5.0) {
                c.pass = false;
                failing += std::string(families::family_name(spec)) + " ";
            }
        }
        c.seconds = total.seconds();
        c.detail = "13 families, 201x201, h=1e-3: max residual " + fmt(worst_resid) + ", max jump " +
                   fmt(worst_jump) + ", slowest " + fmt(slowest) + " s" +
                   (failing.empty() ? "" : "; failing: " + failing);
        emit(std::move(c));
    }

    // 2. boundary-data exactness ---------------------------------------------------
    {
        CriterionResult c{"criterion-2 boundary-data", true, 0, ""};
        Timer t;
        double worst = 0.0;
        auto dirichlet_err = [&](const families::Solution& s, double R, double H) {
            for (int k = 0; k < 360; ++k) {
                double th = 2 * std::numbers::pi * k / 360.0;
                double u = s.eval({R * std::cos(th), R * std::sin(th)});
                worst = std::max(worst, std::abs(u - H));
            }
        };
        auto neumann_err = [&](const families::Solution& s, double R, double K) {
            for (int k = 0; k < 360; ++k) {
                double th = 2 * std::numbers::pi * k / 360.0;
                Point p{R * std::cos(th), R * std::sin(th)};
                Vec2 g = s.grad(p);
                double ur = g.x * std::cos(th) + g.y * std::sin(th);
                worst = std::max(worst, std::abs(ur - K));
            }
        };
        using namespace families;
        dirichlet_err(validate(DirichletEq1Mixed{}), 1, 1);
        dirichlet_err(validate(DirichletEq1TrivialHyp{}), 1, -1);
        dirichlet_err(validate(DirichletEq2Mixed{}), 1, 1);
        dirichlet_err(validate(DirichletEq2TrivialHyp{}), 1, 1);
        dirichlet_err(validate(CauchyEq1TrivialHyp{}), 1, -1);
        dirichlet_err(validate(CauchyEq2Mixed{}), 1, 1);
        neumann_err(validate(NeumannEq1Mixed{}), 1, 1);
        neumann_err(validate(NeumannEq1TrivialHyp{}), 1, 1);
        neumann_err(validate(NeumannEq2Mixed{}), 1, 1);
        neumann_err(validate(CauchyEq1TrivialHyp{}), 1, 1);
        neumann_err(validate(CauchyEq2Mixed{}), 1, 1);
        // Cauchy mixed: both data at once, derived interface radius
        dirichlet_err(validate(CauchyEq1Mixed{}), 1, 1);
        neumann_err(validate(CauchyEq1Mixed{}), 1, 1);
        double a_example = cauchy_interface_radius(1.0, std::log(2.0), 1.0);
        bool radius_ok = std::abs(a_example - 0.5) <= 1e-15;
        c.pass = worst <= 1e-12 && radius_ok;
        c.seconds = t.seconds();
        c.detail = "360 samples/family: max boundary defect " + fmt(worst) +
                   "; a(R=1,K=1,H=ln2) = " + fmt(a_example);
        emit(std::move(c));
    }

    // 3. top-down pipeline vs exact field U = y -------------------------------------
    {
        CriterionResult c{"criterion-3 tricomi1-exact", true, 0, ""};
        Timer t;
        auto phi = tricomi::BoundaryPhi::sin_theta();
        auto field = tricomi::problem1_field(phi, 256, KernelConstantMode::CorrectedConstant);
        double worst_field = 0.0;
        for (int j = 0; j < 101; ++j) {
            double y = -1.0 + 2.0 * j / 100.0;
            for (int i = 0; i < 101; ++i) {
                double x = -1.0 + 2.0 * i / 100.0;
                Point p{x, y};
                if (classify_tricomi(p) == Region::Outside) continue;
                worst_field = std::max(worst_field, std::abs(field.eval(p) - p.y));
            }
        }
        double worst_trace = 0.0;
        for (int k = 0; k < 100; ++k) {
            double x = -1.0 + k / 99.0;
            worst_trace = std::max(worst_trace, std::abs(tricomi::trace_ac(field.nu, x, 256) + (x + 1.0)));
        }
        c.seconds = t.seconds();
        c.pass = worst_field <= 1e-6 && worst_trace <= 1e-8 && c.seconds <= 10.0;
        c.detail = "101x101 field defect " + fmt(worst_field) + ", trace defect " + fmt(worst_trace);
        emit(std::move(c));
    }

    // 4. kernel adjudication ----------------------------------------------------------
    {
        CriterionResult c{"criterion-4 kernel-adjudication", true, 0, ""};
        Timer t;
        auto sin1 = tricomi::BoundaryPhi::sin_theta();
        auto sin2 = tricomi::BoundaryPhi::sin_2theta();
        double worst_paper = 0, worst_corr = 0, worst_2x = 0;
        for (int k = 0; k < 50; ++k) {
            double x = -0.99 + 1.98 * k / 49.0;
            worst_paper = std::max(worst_paper,
                                   std::abs(tricomi::nu_eval(sin1, x, 256, KernelConstantMode::PaperConstant) - 2.0));
            worst_corr = std::max(worst_corr,
                                  std::abs(tricomi::nu_eval(sin1, x, 256, KernelConstantMode::CorrectedConstant) - 1.0));
            worst_2x = std::max(worst_2x,
                                std::abs(tricomi::nu_eval(sin2, x, 256, KernelConstantMode::CorrectedConstant) - 2.0 * x));
        }
        c.seconds = t.seconds();
        c.pass = worst_paper <= 1e-8 && worst_corr <= 1e-8 && worst_2x <= 1e-8;
        c.detail = "paper-mode defect from 2: " + fmt(worst_paper) +
                   "; corrected defect from 1: " + fmt(worst_corr) +
                   "; corrected sin2 defect from 2x: " + fmt(worst_2x) + " (exact nu of U=y is 1)";
        emit(std::move(c));
    }

    // 5. oracle cross-validation ---------------------------------------------------------
    {
        CriterionResult c{"criterion-5 oracle", true, 0, ""};
        Timer t;
        double worst_cmp = 0.0;
        bool orders_ok = true;
        std::string order_txt;
        for (auto phi : {tricomi::BoundaryPhi::sin_theta(), tricomi::BoundaryPhi::sin_2theta()}) {
            auto exact = [&](Point p) {
                return phi.name() == "sin" ? p.y : 2.0 * p.x * p.y;
            };
            double errs[3];
            int grids[3] = {65, 129, 257};
            for (int g = 0; g < 3; ++g) {
                auto field = numerics::oracle_halfdisk(phi, grids[g], grids[g]);
                double e = 0.0;
                for (int i = 1; i < field.n_r - 1; ++i)
                    for (int j = 1; j < field.n_theta - 1; ++j)
                        e = std::max(e, std::abs(field.value(i, j) - exact(field.point(i, j))));
                errs[g] = e;
                if (grids[g] == 129) {
                    // compare against the boundary-integral path at 100 interior nodes
                    int count = 0;
                    for (int i = 12; i < field.n_r - 12 && count < 100; i += 11)
                        for (int j = 12; j < field.n_theta - 12 && count < 100; j += 11) {
                            Point p = field.point(i, j);
                            if (classify_tricomi(p) != Region::D1Upper) continue;
                            double bi = tricomi::harmonic_eval_d1(phi, p, 256);
                            worst_cmp = std::max(worst_cmp, std::abs(bi - field.value(i, j)));
                            ++count;
                        }
                }
            }
            double o1 = std::log2(errs[0] / errs[1]), o2 = std::log2(errs[1] / errs[2]);
            if (!(o1 >= 1.8 && o1 <= 2.2 && o2 >= 1.8 && o2 <= 2.2)) orders_ok = false;
            order_txt += phi.name() + ": " + fmt(o1) + "/" + fmt(o2) + " ";
        }
        c.seconds = t.seconds();
        c.pass = worst_cmp <= 1e-2 && orders_ok && c.seconds <= 60.0;
        c.detail = "129-grid vs boundary integral: " + fmt(worst_cmp) + "; orders " + order_txt;
        emit(std::move(c));
    }

    // 6. bottom-up cubic example ------------------------------------------------------------
    {
        CriterionResult c{"criterion-6 tricomi2-cubic", true, 0, ""};
        Timer t;
        auto f = tricomi::CharacteristicF::cubic();
        double worst1 = 0.0, worst2 = 0.0;
        for (Point p : random_d1_points(500, 61)) {
            double exact = (p.y / 4.0) * (3.0 * (p.x + 1.0) * (p.x + 1.0) - p.y * p.y);
            worst1 = std::max(worst1, std::abs(tricomi::problem2_d1(f, p) - exact));
        }
        for (Point p : random_d2_points(500, 62)) {
            double exact = (p.y / 4.0) * (3.0 * (p.x + 1.0) * (p.x + 1.0) + p.y * p.y);
            worst2 = std::max(worst2, std::abs(tricomi::problem2_d2(f, p) - exact));
        }
        auto probe = tricomi::positivity_probe(f, 200);
        double worst_line = 0.0;
        for (Point z : probe.zero_level)
            worst_line = std::max(worst_line, std::abs(std::numbers::sqrt3 * (z.x + 1.0) - z.y) / 2.0);
        bool line_ok = !probe.zero_level.empty() && worst_line <= 2.0 / 200.0;
        c.seconds = t.seconds();
        c.pass = worst1 <= 1e-12 && worst2 <= 1e-12 && line_ok;
        c.detail = "closed-form defects D1 " + fmt(worst1) + ", D2 " + fmt(worst2) +
                   "; zero-level max distance to y=sqrt(3)(x+1): " + fmt(worst_line);
        emit(std::move(c));
    }

    // 7. continuation equivalence --------------------------------------------------------------
    {
        CriterionResult c{"criterion-7 continuation", true, 0, ""};
        Timer t;
        std::mt19937 rng(71);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            auto f = random_admissible_poly(rng);
            const auto& a = f.series_coeffs();
            for (Point p : random_d1_points(200, 700 + trial)) {
                double direct = tricomi::problem2_d1(f, p);
                double series = tricomi::series_eval_d1(a, p);
                worst = std::max(worst, std::abs(direct - series));
            }
        }
        c.seconds = t.seconds();
        c.pass = worst <= 1e-10;
        c.detail = "20 random degree-<=8 data x 200 points: max |direct - series| = " + fmt(worst);
        emit(std::move(c));
    }

    // 8. Hopf positivity and D2 negativity ---------------------------------------------------------
    {
        CriterionResult c{"criterion-8 hopf-negativity", true, 0, ""};
        Timer t;
        double min_nu = std::numeric_limits<double>::infinity();
        for (auto phi : {tricomi::BoundaryPhi::sin_theta(), tricomi::BoundaryPhi::sin_cubed()}) {
            for (int k = 0; k < 199; ++k) {
                double x = -0.99 + 1.98 * k / 198.0;
                min_nu = std::min(min_nu,
                                  tricomi::nu_eval(phi, x, 256, KernelConstantMode::CorrectedConstant));
            }
        }
        double max_d2 = -std::numeric_limits<double>::infinity();
        std::vector<tricomi::NuFunction> nus;
        nus.push_back(tricomi::NuFunction::from_phi(tricomi::BoundaryPhi::sin_theta(), 256,
                                                    KernelConstantMode::CorrectedConstant));
        nus.push_back(tricomi::NuFunction::from_phi(tricomi::BoundaryPhi::sin_cubed(), 256,
                                                    KernelConstantMode::CorrectedConstant));
        nus.push_back(tricomi::NuFunction::from_characteristic(tricomi::CharacteristicF::cubic()));
        nus.push_back(tricomi::NuFunction::from_characteristic(
            tricomi::CharacteristicF::polynomial({-1.0, -1.0})));
        auto pts = random_d2_points(500, 81);
        for (const auto& nu : nus)
            for (Point p : pts) max_d2 = std::max(max_d2, tricomi::dalembert_extend(nu, p, 128));
        c.seconds = t.seconds();
        c.pass = min_nu > 0.0 && max_d2 < 0.0;
        c.detail = "min nu on [-0.99,0.99]: " + fmt(min_nu) + "; max d'Alembert value in D2: " + fmt(max_d2);
        emit(std::move(c));
    }

    // 9. negative controls ------------------------------------------------------------------------
    {
        CriterionResult c{"criterion-9 negative-controls", true, 0, ""};
        Timer t;
        bool all_fail = true;
        for (const auto& spec : families::all_default_specs()) {
            auto sol = families::validate(spec);
            auto view = with_value_offset(make_field_view(sol, 81),
                                          [](long double x, long double) { return 0.01L * x * x * x; });
            numerics::VerifyOptions opt;
            opt.h = 1e-3;
            opt.residual_tol = 1e-6;
            opt.jump_tol = 1e-10;
            auto rep = numerics::verify_solution(view, opt);
            if (rep.pass) all_fail = false;
        }
        auto bad_f = tricomi::CharacteristicF::polynomial({0.0, 1.0, 1.0});  // f = t + t^2, f(-1)=0, f' > 0 near 0
        bool f_flagged = !tricomi::positivity_probe(bad_f, 60).admissible;
        bool phi_flagged = !tricomi::BoundaryPhi::sin_2theta().admissibility().admissible;
        c.seconds = t.seconds();
        c.pass = all_fail && f_flagged && phi_flagged;
        c.detail = std::string("corrupted fields all FAIL: ") + (all_fail ? "yes" : "no") +
                   "; increasing f flagged: " + (f_flagged ? "yes" : "no") +
                   "; sign-changing phi flagged: " + (phi_flagged ? "yes" : "no");
        emit(std::move(c));
    }

    return results;
}

inline bool all_passed(const std::vector<CriterionResult>& rs) {
    for (const auto& r : rs)
        if (!r.pass) return false;
    return true;
}

}  // namespace mixpde::acceptance
