#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mixpde/errors.hpp"
#include "mixpde/geometry.hpp"

namespace mixpde::families {

/// Governing operator at a point. For sign-switching fields the tag follows
/// sign(U); for factored-equation fields it names the factor the active branch
/// annihilates. Interface marks the measure-zero type-change set,
/// BothDegenerate fields annihilate both second-derivative combinations.
enum class OperatorTag { Laplace, Wave, Interface, BothDegenerate };

inline std::string_view to_string(OperatorTag t) {
    switch (t) {
        case OperatorTag::Laplace: return "laplace";
        case OperatorTag::Wave: return "wave";
        case OperatorTag::Interface: return "interface";
        case OperatorTag::BothDegenerate: return "degenerate";
    }
    return "?";
}

/// One-dimensional data callable for the Goursat family: polynomial
/// coefficients (the tested path) or a sample table with local cubic
/// interpolation (best effort).
class Callable1D {
public:
    Callable1D() { c_ = {0.0}; }

    static Callable1D polynomial(std::vector<double> coeffs) {
        Callable1D f;
        if (coeffs.empty()) coeffs.push_back(0.0);
        f.c_ = std::move(coeffs);
        return f;
    }

    static Callable1D table(std::vector<double> xs, std::vector<double> ys) {
        if (xs.size() < 4 || xs.size() != ys.size())
            throw BadParameter("Callable1D::table needs >= 4 matched samples");
        for (std::size_t i = 1; i < xs.size(); ++i)
            if (!(xs[i] > xs[i - 1])) throw BadParameter("Callable1D::table abscissae must increase");
        Callable1D f;
        f.poly_ = false;
        f.xs_ = std::move(xs);
        f.ys_ = std::move(ys);
        return f;
    }

    bool is_polynomial() const { return poly_; }
    const std::vector<double>& coeffs() const { return c_; }

    template <std::floating_point T>
    T value(T t) const {
        if (poly_) {
            T acc = 0;
            for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + static_cast<T>(c_[i]);
            return acc;
        }
        return lagrange4<T>(t, false);
    }

    template <std::floating_point T>
    T deriv(T t) const {
        if (poly_) {
            T acc = 0;
            for (std::size_t i = c_.size(); i-- > 1;) acc = acc * t + static_cast<T>(c_[i] * double(i));
            return acc;
        }
        return lagrange4<T>(t, true);
    }

    double operator()(double t) const { return value(t); }

private:
    // Local 4-point Lagrange interpolation around t (window clamped to range).
    template <std::floating_point T>
    T lagrange4(T t, bool want_deriv) const {
        auto it = std::upper_bound(xs_.begin(), xs_.end(), static_cast<double>(t));
        std::ptrdiff_t k = it - xs_.begin();
        std::ptrdiff_t lo = std::clamp<std::ptrdiff_t>(k - 2, 0, std::ptrdiff_t(xs_.size()) - 4);
        T acc = 0;
        for (int i = 0; i < 4; ++i) {
            T xi = static_cast<T>(xs_[lo + i]);
            if (!want_deriv) {
                T li = 1;
                for (int j = 0; j < 4; ++j)
                    if (j != i) li *= (t - static_cast<T>(xs_[lo + j])) / (xi - static_cast<T>(xs_[lo + j]));
                acc += static_cast<T>(ys_[lo + i]) * li;
            } else {
                T dli = 0;
                for (int m = 0; m < 4; ++m) {
                    if (m == i) continue;
                    T term = 1 / (xi - static_cast<T>(xs_[lo + m]));
                    for (int j = 0; j < 4; ++j)
                        if (j != i && j != m)
                            term *= (t - static_cast<T>(xs_[lo + j])) / (xi - static_cast<T>(xs_[lo + j]));
                    dli += term;
                }
                acc += static_cast<T>(ys_[lo + i]) * dli;
            }
        }
        return acc;
    }

    bool poly_ = true;
    std::vector<double> c_;
    std::vector<double> xs_, ys_;
};

// --- family parameter structs -------------------------------------------------
// Defaults satisfy each family's own constraints.

struct DirichletEq1Mixed {  // sign-switching disk field, Dirichlet datum H > 0
    double R = 1.0, H = 1.0, a = 0.5;
};
struct DirichletEq1TrivialHyp {  // U = C(r^2 - R^2) + H, negative throughout
    double R = 1.0, H = -1.0, C = 1.0;
};
struct DirichletEq2Mixed {
    double R = 1.0, H = 1.0, C = 1.0, a = 0.5;
};
struct DirichletEq2TrivialHyp {
    double R = 1.0, H = 1.0, C = 1.0;
};
struct NeumannEq1Mixed {
    double R = 1.0, K = 1.0, a = 0.5;
};
struct NeumannEq1TrivialHyp {  // U = K r^2 / (2R) + C
    double R = 1.0, K = 1.0, C = -1.0;
};
struct NeumannEq2Mixed {
    double R = 1.0, K = 1.0, C = 1.0, a = 0.5;
};
struct CauchyEq1Mixed {  // interface radius derived: a = R exp(-H/(K R))
    double R = 1.0, H = 1.0, K = 1.0;
};
struct CauchyEq1TrivialHyp {  // U = K/(2R) (r^2 - R^2) + H
    double R = 1.0, H = -1.0, K = 1.0;
};
struct CauchyEq2Mixed {
    double R = 1.0, H = 1.0, K = 1.0, a = 0.5;
};
struct HalfPlaneEq1 {  // C e^x sin y below y=pi, C e^x sinh(pi-y) above
    double C = 1.0;
};
struct WholePlaneEq1 {  // C(r^2 - a^2) inside, 2 C a^2 ln(r/a) outside
    double C = 1.0, a = 0.5;
};
struct GoursatEq1 {  // wedge y+x>0, y-x+1>0; wave field from characteristic data
    Callable1D f1 = Callable1D::polynomial({-0.5, 1.0});  // x - 1/2 on (-inf, 1/2]
    Callable1D f2 = Callable1D::polynomial({0.5, -1.0});  // 1/2 - x on [1/2, inf)
};

using FamilySpec =
    std::variant<DirichletEq1Mixed, DirichletEq1TrivialHyp, DirichletEq2Mixed,
                 DirichletEq2TrivialHyp, NeumannEq1Mixed, NeumannEq1TrivialHyp, NeumannEq2Mixed,
                 CauchyEq1Mixed, CauchyEq1TrivialHyp, CauchyEq2Mixed, HalfPlaneEq1, WholePlaneEq1,
                 GoursatEq1>;

inline std::string_view family_name(const FamilySpec& s) {
    struct V {
        std::string_view operator()(const DirichletEq1Mixed&) { return "dirichlet-eq1-mixed"; }
        std::string_view operator()(const DirichletEq1TrivialHyp&) { return "dirichlet-eq1-trivial-hyp"; }
        std::string_view operator()(const DirichletEq2Mixed&) { return "dirichlet-eq2-mixed"; }
        std::string_view operator()(const DirichletEq2TrivialHyp&) { return "dirichlet-eq2-trivial-hyp"; }
        std::string_view operator()(const NeumannEq1Mixed&) { return "neumann-eq1-mixed"; }
        std::string_view operator()(const NeumannEq1TrivialHyp&) { return "neumann-eq1-trivial-hyp"; }
        std::string_view operator()(const NeumannEq2Mixed&) { return "neumann-eq2-mixed"; }
        std::string_view operator()(const CauchyEq1Mixed&) { return "cauchy-eq1-mixed"; }
        std::string_view operator()(const CauchyEq1TrivialHyp&) { return "cauchy-eq1-trivial-hyp"; }
        std::string_view operator()(const CauchyEq2Mixed&) { return "cauchy-eq2-mixed"; }
        std::string_view operator()(const HalfPlaneEq1&) { return "half-plane-eq1"; }
        std::string_view operator()(const WholePlaneEq1&) { return "whole-plane-eq1"; }
        std::string_view operator()(const GoursatEq1&) { return "goursat-eq1"; }
    };
    return std::visit(V{}, s);
}

/// All thirteen variants with their default (constraint-satisfying) parameters.
inline std::vector<FamilySpec> all_default_specs() {
    return {DirichletEq1Mixed{},  DirichletEq1TrivialHyp{}, DirichletEq2Mixed{},
            DirichletEq2TrivialHyp{}, NeumannEq1Mixed{},    NeumannEq1TrivialHyp{},
            NeumannEq2Mixed{},    CauchyEq1Mixed{},         CauchyEq1TrivialHyp{},
            CauchyEq2Mixed{},     HalfPlaneEq1{},           WholePlaneEq1{},
            GoursatEq1{}};
}

/// a = R exp(-H/(KR)), the unique interface radius once Dirichlet and Neumann
/// data are imposed together.
inline double cauchy_interface_radius(double R, double H, double K) {
    if (!(R > 0.0) || !(H > 0.0) || !(K > 0.0))
        throw BadParameter("cauchy_interface_radius: R, H, K must all be > 0");
    return R * std::exp(-H / (K * R));
}

namespace fam_detail {

inline void need(std::vector<ConstraintViolation>& out, bool ok, const char* name, double value,
                 std::string required) {
    if (!ok) out.push_back({name, value, std::move(required)});
}

}  // namespace fam_detail

/// Check every parameter inequality of a family; empty result means valid.
inline std::vector<ConstraintViolation> check(const FamilySpec& spec) {
    using fam_detail::need;
    std::vector<ConstraintViolation> v;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DirichletEq1Mixed>) {
                need(v, s.R > 0, "R", s.R, "> 0");
                need(v, s.H > 0, "H", s.H, "> 0");
                need(v, s.a > 0 && s.a < s.R, "a", s.a, "in (0, R)");
            } else if constexpr (std::is_same_v<T, DirichletEq1TrivialHyp>) {
                need(v, s.R > 0, "R", s.R, "> 0");
                need(v, s.H < 0, "H", s.H, "< 0");
                if (s.R > 0) need(v, s.C > s.H / (s.R * s.R), "C", s.C, "> H/R^2");
            } else if constexpr (std::is_same_v<T, DirichletEq2Mixed>) {
                need(v, s.R > 0, "R", s.R, "> 0");
                need(v, s.a > 0 && s.a < s.R, "a", s.a, "in (0, R)");
            } else if constexpr (std::is_same_v<T, DirichletEq2TrivialHyp>) {
                need(v, s.R > 0, "R", s.R, "> 0");
            } else if constexpr (std::is_same_v<T, NeumannEq1Mixed>) {
                need(v, s.R > 0, "R", s.R, "> 0");
                need(v, s.K > 0, "K", s.K, "> 0");
                need(v, s.a > 0 && s.a < s.R, "a", s.a, "in (0, R)");
            } else if constexpr (std::is_same_v<T, NeumannEq1TrivialHyp>) {
                need(v, s.R > 0, "R", s.R, "> 0");
                if (s.K >= 0)
                    need(v, s.C < -s.K * s.R / 2, "C", s.C, "< -K*R/2 (K >= 0)");
                else
                    need(v, s.C < 0, "C", s.C, "< 0 (K < 0)");
            } else if constexpr (std::is_same_v<T, NeumannEq2Mixed>) {
                need(v, s.R > 0, "R", s.R, "> 0");
                need(v, s.a > 0 && s.a < s.R, "a", s.a, "in (0, R)");
            } else if constexpr (std::is_same_v<T, CauchyEq1Mixed>) {
                need(v, s.R > 0, "R", s.R, "> 0");
                need(v, s.H > 0, "H", s.H, "> 0");
                need(v, s.K > 0, "K", s.K, "> 0");
            } else if constexpr (std::is_same_v<T, CauchyEq1TrivialHyp>) {
                need(v, s.R > 0, "R", s.R, "> 0");
                if (s.K > 0)
                    need(v, s.H <= 0, "H", s.H, "<= 0 (K > 0)");
                else
                    need(v, s.H - s.K * s.R / 2 < 0, "H", s.H, "H - K*R/2 < 0 (K <= 0)");
            } else if constexpr (std::is_same_v<T, CauchyEq2Mixed>) {
                need(v, s.R > 0, "R", s.R, "> 0");
                need(v, s.a > 0 && s.a < s.R, "a", s.a, "in (0, R)");
            } else if constexpr (std::is_same_v<T, HalfPlaneEq1>) {
                need(v, s.C >= 0, "C", s.C, ">= 0");
            } else if constexpr (std::is_same_v<T, WholePlaneEq1>) {
                need(v, s.C > 0, "C", s.C, "> 0");
                need(v, s.a > 0, "a", s.a, "> 0");
            } else if constexpr (std::is_same_v<T, GoursatEq1>) {
                double m1 = s.f1(0.5), m2 = s.f2(0.5);
                if (!(std::abs(m1 - m2) <= 1e-12))
                    v.push_back({"f1(1/2)-f2(1/2)", m1 - m2, "= 0 within 1e-12"});
            }
        },
        spec);
    return v;
}

namespace fam_detail {

/// Radial branch U = alpha*s + beta*ln(s) + gamma with s = r^2. Covers every
/// disk-type branch in the catalogue: quadratics (beta=0) annihilate
/// U_xx - U_yy, logarithms (alpha=0) are harmonic.
struct RadialBranch {
    double alpha = 0.0, beta = 0.0, gamma = 0.0;

    template <std::floating_point T>
    T value(T s) const {
        T v = static_cast<T>(alpha) * s + static_cast<T>(gamma);
        if (beta != 0.0) v += static_cast<T>(beta) * std::log(s);
        return v;
    }
    // dU/ds
    double slope(double s) const { return alpha + (beta != 0.0 ? beta / s : 0.0); }
};

enum class Equation { SignU, Factored };
enum class Layout { DiskMixed, DiskSingle, HalfPlane, WholePlane, Goursat };

}  // namespace fam_detail

/// A validated, evaluatable closed-form field: value, analytic gradient and
/// governing-operator tag at any admissible point.
class Solution {
public:
    const FamilySpec& spec() const { return spec_; }
    std::string_view name() const { return family_name(spec_); }
    bool sign_semantics() const { return eq_ == fam_detail::Equation::SignU; }

    /// Interface radius for two-branch radial families (derived for Cauchy).
    std::optional<double> interface_radius() const {
        using fam_detail::Layout;
        if (layout_ == Layout::DiskMixed || layout_ == Layout::WholePlane) return a_;
        return std::nullopt;
    }

    template <std::floating_point T>
    T eval_at(T x, T y) const {
        using fam_detail::Layout;
        switch (layout_) {
            case Layout::DiskMixed: {
                T s = require_in_disk(x, y);
                return s < T(a_ * a_) ? inner_.value(s) : outer_.value(s);
            }
            case Layout::DiskSingle: {
                T s = require_in_disk(x, y);
                return inner_.value(s);
            }
            case Layout::WholePlane: {
                T s = x * x + y * y;
                return s < T(a_ * a_) ? inner_.value(s) : outer_.value(s);
            }
            case Layout::HalfPlane: {
                if (!(y >= T(-kBand))) throw OutOfDomain("half-plane field: y < 0");
                const T pi = std::numbers::pi_v<T>;
                return y <= pi ? T(C_) * std::exp(x) * std::sin(y)
                               : T(C_) * std::exp(x) * std::sinh(pi - y);
            }
            case Layout::Goursat: {
                require_in_wedge(double(x), double(y));
                return f1_.value((x - y) / 2) + f2_.value((x + y + 1) / 2) - T(f1_half_);
            }
        }
        throw Error("Internal", "unreachable layout");
    }

    double eval(Point p) const { return eval_at<double>(p.x, p.y); }

    Vec2 grad(Point p) const {
        using fam_detail::Layout;
        double x = p.x, y = p.y;
        switch (layout_) {
            case Layout::DiskMixed:
            case Layout::DiskSingle:
            case Layout::WholePlane: {
                double s = x * x + y * y;
                if (layout_ != Layout::WholePlane) require_in_disk<double>(x, y);
                const fam_detail::RadialBranch& b =
                    (layout_ == Layout::DiskSingle || s < a_ * a_) ? inner_ : outer_;
                double g = b.slope(std::max(s, 1e-300));
                return {2.0 * x * g, 2.0 * y * g};
            }
            case Layout::HalfPlane: {
                if (!(y >= -kBand)) throw OutOfDomain("half-plane field: y < 0");
                double ex = C_ * std::exp(x);
                if (y <= std::numbers::pi) return {ex * std::sin(y), ex * std::cos(y)};
                return {ex * std::sinh(std::numbers::pi - y), -ex * std::cosh(std::numbers::pi - y)};
            }
            case Layout::Goursat: {
                require_in_wedge(x, y);
                double d1 = f1_.deriv((x - y) / 2), d2 = f2_.deriv((x + y + 1) / 2);
                return {0.5 * (d1 + d2), 0.5 * (-d1 + d2)};
            }
        }
        throw Error("Internal", "unreachable layout");
    }

    OperatorTag operator_tag(Point p) const {
        using fam_detail::Equation;
        using fam_detail::Layout;
        double itol = 1e-12 * std::max(1.0, a_);
        if (layout_ == Layout::DiskMixed || layout_ == Layout::WholePlane) {
            double r = std::hypot(p.x, p.y);
            if (layout_ == Layout::DiskMixed) require_in_disk<double>(p.x, p.y);
            if (std::abs(r - a_) <= itol) return OperatorTag::Interface;
            if (eq_ == Equation::Factored) return branch_tag(r < a_ ? inner_ : outer_);
        }
        if (eq_ == Equation::Factored) {
            if (layout_ == Layout::DiskSingle) require_in_disk<double>(p.x, p.y);
            return branch_tag(inner_);
        }
        if (layout_ == Layout::HalfPlane) {
            if (!(p.y >= -kBand)) throw OutOfDomain("half-plane field: y < 0");
            if (C_ == 0.0) return OperatorTag::BothDegenerate;
            if (std::abs(p.y) <= itol || std::abs(p.y - std::numbers::pi) <= itol)
                return OperatorTag::Interface;
        }
        double u = eval(p);
        if (u > 0.0) return OperatorTag::Laplace;
        if (u < 0.0) return OperatorTag::Wave;
        return OperatorTag::Interface;
    }

    /// Geometric disposition of p, for field exports.
    std::string region_name(Point p) const {
        using fam_detail::Layout;
        double itol = 1e-9;
        switch (layout_) {
            case Layout::DiskMixed:
            case Layout::WholePlane: {
                double r = std::hypot(p.x, p.y);
                if (std::abs(r - a_) <= itol) return "interface";
                return r < a_ ? "inner" : "outer";
            }
            case Layout::DiskSingle: return "disk";
            case Layout::HalfPlane: {
                if (std::abs(p.y - std::numbers::pi) <= itol) return "interface";
                return p.y < std::numbers::pi ? "strip" : "upper";
            }
            case Layout::Goursat: return "wedge";
        }
        return "?";
    }

    bool contains(Point p, double margin = 0.0) const {
        using fam_detail::Layout;
        double m = std::max(margin, 0.0);
        switch (layout_) {
            case Layout::DiskMixed:
            case Layout::DiskSingle: return std::hypot(p.x, p.y) <= R_ - m + (m == 0.0 ? kBand : 0.0);
            case Layout::WholePlane: return true;
            case Layout::HalfPlane: return p.y >= m - (m == 0.0 ? kBand : 0.0);
            case Layout::Goursat: {
                double s2 = std::numbers::sqrt2;
                double slack = (m == 0.0 ? kBand : 0.0);
                return (p.x + p.y) / s2 >= m - slack && (p.y - p.x + 1.0) / s2 >= m - slack;
            }
        }
        return false;
    }

    /// Sample points on the declared gluing curve (empty when there is none).
    std::vector<Point> interface_samples(int n) const {
        using fam_detail::Layout;
        std::vector<Point> pts;
        if (layout_ == Layout::DiskMixed || layout_ == Layout::WholePlane) {
            pts.reserve(n);
            for (int k = 0; k < n; ++k) {
                double t = 2.0 * std::numbers::pi * k / n;
                pts.push_back({a_ * std::cos(t), a_ * std::sin(t)});
            }
        } else if (layout_ == Layout::HalfPlane) {
            pts.reserve(n);
            for (int k = 0; k < n; ++k)
                pts.push_back({-1.0 + 2.0 * k / std::max(1, n - 1), std::numbers::pi});
        }
        return pts;
    }

    /// Distance to the declared interface; +inf when none is declared.
    double interface_distance(Point p) const {
        using fam_detail::Layout;
        if (layout_ == Layout::DiskMixed || layout_ == Layout::WholePlane)
            return std::abs(std::hypot(p.x, p.y) - a_);
        if (layout_ == Layout::HalfPlane) return std::abs(p.y - std::numbers::pi);
        return std::numeric_limits<double>::infinity();
    }

    /// |grad_inner - grad_outer| from the two analytic branch gradients.
    double interface_gradient_jump(Point p) const {
        using fam_detail::Layout;
        double s = p.x * p.x + p.y * p.y;
        switch (layout_) {
            case Layout::DiskMixed:
            case Layout::WholePlane: {
                double dg = inner_.slope(s) - outer_.slope(s);
                return 2.0 * std::sqrt(s) * std::abs(dg);
            }
            case Layout::HalfPlane: {
                double ex = C_ * std::exp(p.x);
                double dux = ex * (std::sin(p.y) - std::sinh(std::numbers::pi - p.y));
                double duy = ex * (std::cos(p.y) + std::cosh(std::numbers::pi - p.y));
                return std::hypot(dux, duy);
            }
            default: return 0.0;
        }
    }

    /// Natural verification grid: n-per-axis sampling of the family's domain
    /// (a bounded window for the unbounded domains).
    std::vector<Point> verification_grid(int n) const {
        using fam_detail::Layout;
        std::vector<Point> pts;
        auto polar_grid = [&](double rmax) {
            pts.reserve(std::size_t(n) * n);
            pts.push_back({0.0, 0.0});
            for (int i = 1; i < n; ++i) {
                double r = rmax * i / (n - 1);
                for (int j = 0; j < n; ++j) {
                    double t = 2.0 * std::numbers::pi * j / n;
                    pts.push_back({r * std::cos(t), r * std::sin(t)});
                }
            }
        };
        switch (layout_) {
            case Layout::DiskMixed:
            case Layout::DiskSingle: polar_grid(R_); break;
            case Layout::WholePlane: polar_grid(2.0 * a_); break;
            case Layout::HalfPlane:
                pts.reserve(std::size_t(n) * n);
                for (int j = 0; j < n; ++j)
                    for (int i = 0; i < n; ++i)
                        pts.push_back({-1.0 + 2.0 * i / (n - 1), 2.0 * std::numbers::pi * j / (n - 1)});
                break;
            case Layout::Goursat:
                pts.reserve(std::size_t(n) * n);
                for (int j = 0; j < n; ++j) {
                    double y = -0.5 + 2.0 * (j + 0.5) / n;
                    for (int i = 0; i < n; ++i) {
                        double x = -y + (1.0 + 2.0 * y) * (i + 0.5) / n;
                        pts.push_back({x, y});
                    }
                }
                break;
        }
        return pts;
    }

    std::string grid_description(int n) const {
        using fam_detail::Layout;
        std::string nn = std::to_string(n);
        switch (layout_) {
            case Layout::DiskMixed:
            case Layout::DiskSingle: return "polar " + nn + "x" + nn + " on disk r<=R";
            case Layout::WholePlane: return "polar " + nn + "x" + nn + " on r<=2a";
            case Layout::HalfPlane: return "cartesian " + nn + "x" + nn + " on [-1,1]x[0,2pi]";
            case Layout::Goursat: return "wedge " + nn + "x" + nn + " rows y in (-1/2, 3/2]";
        }
        return "?";
    }

private:
    friend Solution validate(const FamilySpec&);
    Solution() = default;

    static OperatorTag branch_tag(const fam_detail::RadialBranch& b) {
        if (b.alpha != 0.0) return OperatorTag::Wave;
        if (b.beta != 0.0) return OperatorTag::Laplace;
        return OperatorTag::BothDegenerate;
    }

    template <std::floating_point T>
    T require_in_disk(T x, T y) const {
        T s = x * x + y * y;
        T rb = T(R_ + kBand * std::max(1.0, R_));
        if (s > rb * rb) throw OutOfDomain("point outside disk r <= R");
        return s;
    }

    void require_in_wedge(double x, double y) const {
        if (x + y < -kBand || y - x + 1.0 < -kBand)
            throw OutOfDomain("point outside Goursat wedge");
    }

    static constexpr double kBand = 1e-9;

    FamilySpec spec_;
    fam_detail::Equation eq_ = fam_detail::Equation::SignU;
    fam_detail::Layout layout_ = fam_detail::Layout::DiskMixed;
    double R_ = 1.0, a_ = 0.0, C_ = 0.0;
    fam_detail::RadialBranch inner_, outer_;
    Callable1D f1_, f2_;
    double f1_half_ = 0.0;
};

/// Check constraints and build the evaluatable field; throws ValidationError
/// (GoursatMismatch for the matching condition) listing each violation.
inline Solution validate(const FamilySpec& spec) {
    auto violations = check(spec);
    if (!violations.empty()) {
        if (std::holds_alternative<GoursatEq1>(spec)) throw GoursatMismatch(std::move(violations));
        throw ValidationError(std::move(violations));
    }

    using fam_detail::Equation;
    using fam_detail::Layout;
    Solution sol;
    sol.spec_ = spec;

    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, DirichletEq1Mixed>) {
                double L = std::log(s.a / s.R);
                sol.eq_ = Equation::SignU;
                sol.layout_ = Layout::DiskMixed;
                sol.R_ = s.R;
                sol.a_ = s.a;
                sol.inner_ = {-s.H / (2 * L * s.a * s.a), 0.0, s.H / (2 * L)};
                sol.outer_ = {0.0, -s.H / (2 * L), s.H * std::log(s.a) / L};
            } else if constexpr (std::is_same_v<T, DirichletEq1TrivialHyp>) {
                sol.eq_ = Equation::SignU;
                sol.layout_ = Layout::DiskSingle;
                sol.R_ = s.R;
                sol.inner_ = {s.C, 0.0, s.H - s.C * s.R * s.R};
            } else if constexpr (std::is_same_v<T, DirichletEq2Mixed>) {
                sol.eq_ = Equation::Factored;
                sol.layout_ = Layout::DiskMixed;
                sol.R_ = s.R;
                sol.a_ = s.a;
                double a2 = s.a * s.a;
                sol.inner_ = {s.C, 0.0, -s.C * a2 + 2 * s.C * a2 * std::log(s.a / s.R) + s.H};
                sol.outer_ = {0.0, s.C * a2, s.H - 2 * s.C * a2 * std::log(s.R)};
            } else if constexpr (std::is_same_v<T, DirichletEq2TrivialHyp>) {
                sol.eq_ = Equation::Factored;
                sol.layout_ = Layout::DiskSingle;
                sol.R_ = s.R;
                sol.inner_ = {s.C, 0.0, s.H - s.C * s.R * s.R};
            } else if constexpr (std::is_same_v<T, NeumannEq1Mixed>) {
                sol.eq_ = Equation::SignU;
                sol.layout_ = Layout::DiskMixed;
                sol.R_ = s.R;
                sol.a_ = s.a;
                sol.inner_ = {s.K * s.R / (2 * s.a * s.a), 0.0, -s.K * s.R / 2};
                sol.outer_ = {0.0, s.K * s.R / 2, -s.K * s.R * std::log(s.a)};
            } else if constexpr (std::is_same_v<T, NeumannEq1TrivialHyp>) {
                sol.eq_ = Equation::SignU;
                sol.layout_ = Layout::DiskSingle;
                sol.R_ = s.R;
                sol.inner_ = {s.K / (2 * s.R), 0.0, s.C};
            } else if constexpr (std::is_same_v<T, NeumannEq2Mixed>) {
                sol.eq_ = Equation::Factored;
                sol.layout_ = Layout::DiskMixed;
                sol.R_ = s.R;
                sol.a_ = s.a;
                double a2 = s.a * s.a;
                sol.inner_ = {s.K * s.R / (2 * a2), 0.0,
                              -s.K * s.R / 2 + s.K * s.R * std::log(s.a / s.R) + s.C};
                sol.outer_ = {0.0, s.K * s.R / 2, s.C - s.K * s.R * std::log(s.R)};
            } else if constexpr (std::is_same_v<T, CauchyEq1Mixed>) {
                double a = cauchy_interface_radius(s.R, s.H, s.K);
                double L = -s.H / (s.K * s.R);  // = ln(a/R), exact
                sol.eq_ = Equation::SignU;
                sol.layout_ = Layout::DiskMixed;
                sol.R_ = s.R;
                sol.a_ = a;
                sol.inner_ = {-s.H / (2 * L * a * a), 0.0, s.H / (2 * L)};
                sol.outer_ = {0.0, -s.H / (2 * L), s.H * std::log(a) / L};
            } else if constexpr (std::is_same_v<T, CauchyEq1TrivialHyp>) {
                sol.eq_ = Equation::SignU;
                sol.layout_ = Layout::DiskSingle;
                sol.R_ = s.R;
                sol.inner_ = {s.K / (2 * s.R), 0.0, s.H - s.K * s.R / 2};
            } else if constexpr (std::is_same_v<T, CauchyEq2Mixed>) {
                sol.eq_ = Equation::Factored;
                sol.layout_ = Layout::DiskMixed;
                sol.R_ = s.R;
                sol.a_ = s.a;
                double a2 = s.a * s.a;
                sol.inner_ = {s.K * s.R / (2 * a2), 0.0,
                              -s.K * s.R / 2 + s.K * s.R * std::log(s.a / s.R) + s.H};
                sol.outer_ = {0.0, s.K * s.R / 2, s.H - s.K * s.R * std::log(s.R)};
            } else if constexpr (std::is_same_v<T, HalfPlaneEq1>) {
                sol.eq_ = Equation::SignU;
                sol.layout_ = Layout::HalfPlane;
                sol.C_ = s.C;
            } else if constexpr (std::is_same_v<T, WholePlaneEq1>) {
                sol.eq_ = Equation::SignU;
                sol.layout_ = Layout::WholePlane;
                sol.a_ = s.a;
                sol.inner_ = {s.C, 0.0, -s.C * s.a * s.a};
                sol.outer_ = {0.0, s.C * s.a * s.a, -2 * s.C * s.a * s.a * std::log(s.a)};
            } else if constexpr (std::is_same_v<T, GoursatEq1>) {
                sol.eq_ = Equation::SignU;
                sol.layout_ = Layout::Goursat;
                sol.f1_ = s.f1;
                sol.f2_ = s.f2;
                sol.f1_half_ = s.f1(0.5);
            }
        },
        spec);
    return sol;
}

}  // namespace mixpde::families
