#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mixpde/errors.hpp"
#include "mixpde/families.hpp"
#include "mixpde/geometry.hpp"
#include "mixpde/quadrature.hpp"

namespace mixpde::tricomi {

/// Constant in front of the sigma-kernel integral for nu(x).
/// PaperConstant is 4(1-x^2)/pi as printed; CorrectedConstant is 2(1-x^2)/pi,
/// the value consistent with the exact fields U=y and U=2xy.
enum class KernelConstantMode { PaperConstant, CorrectedConstant };

inline std::string_view to_string(KernelConstantMode m) {
    return m == KernelConstantMode::PaperConstant ? "paper" : "corrected";
}

/// Dirichlet datum on the arc sigma, as a callable of theta in [0, pi].
class BoundaryPhi {
public:
    BoundaryPhi() : BoundaryPhi(sin_theta()) {}

    static BoundaryPhi sin_theta() {
        return BoundaryPhi("sin", [](double t) { return std::sin(t); }, false);
    }
    static BoundaryPhi sin_2theta() {
        return BoundaryPhi("sin2", [](double t) { return std::sin(2.0 * t); }, false);
    }
    static BoundaryPhi sin_cubed() {
        return BoundaryPhi("sin3", [](double t) { double s = std::sin(t); return s * s * s; }, false);
    }

    /// Piecewise-linear table on [0, pi]; the lower-confidence data path.
    static BoundaryPhi table(std::vector<double> theta, std::vector<double> value) {
        if (theta.size() < 2 || theta.size() != value.size())
            throw BadParameter("BoundaryPhi::table needs >= 2 matched samples");
        for (std::size_t i = 1; i < theta.size(); ++i)
            if (!(theta[i] > theta[i - 1])) throw BadParameter("BoundaryPhi::table abscissae must increase");
        auto th = std::make_shared<std::vector<double>>(std::move(theta));
        auto va = std::make_shared<std::vector<double>>(std::move(value));
        auto fn = [th, va](double t) {
            const auto& x = *th;
            const auto& y = *va;
            if (t <= x.front()) return y.front();
            if (t >= x.back()) return y.back();
            auto it = std::upper_bound(x.begin(), x.end(), t);
            std::size_t k = it - x.begin();
            double w = (t - x[k - 1]) / (x[k] - x[k - 1]);
            return (1.0 - w) * y[k - 1] + w * y[k];
        };
        return BoundaryPhi("table", std::move(fn), true);
    }

    double operator()(double theta) const { return fn_(theta); }
    const std::string& name() const { return name_; }
    bool is_table() const { return table_; }

    struct Admissibility {
        bool admissible = true;
        double min_value = 0.0;
        double end_left = 0.0, end_right = 0.0;
        std::vector<std::string> notes;
    };

    /// Problem-1 admissibility (phi >= 0, phi(0) = phi(pi) = 0), checked at
    /// 721 samples. Inadmissible data stays usable for kernel work.
    Admissibility admissibility() const {
        Admissibility a;
        a.min_value = std::numeric_limits<double>::infinity();
        constexpr int kSamples = 721;
        for (int i = 0; i < kSamples; ++i) {
            double t = std::numbers::pi * i / (kSamples - 1);
            a.min_value = std::min(a.min_value, fn_(t));
        }
        a.end_left = fn_(0.0);
        a.end_right = fn_(std::numbers::pi);
        if (a.min_value < -1e-12) {
            a.admissible = false;
            a.notes.push_back("phi takes negative values (min " + std::to_string(a.min_value) + ")");
        }
        if (std::abs(a.end_left) > 1e-9 || std::abs(a.end_right) > 1e-9) {
            a.admissible = false;
            a.notes.push_back("phi does not vanish at both endpoints");
        }
        return a;
    }

private:
    BoundaryPhi(std::string name, std::function<double(double)> fn, bool table)
        : name_(std::move(name)), fn_(std::move(fn)), table_(table) {}

    std::string name_;
    std::function<double(double)> fn_;
    bool table_ = false;
};

// --- Green's function for the upper unit half-disk -----------------------------

/// G(x, xi) = ln( |xi* - x| |xi- - x| / (|xi+ - x| |xi - x|) ) with the unit
/// circle inversion xi* = xi/|xi|^2 and the diameter reflection xi- = (xi,-eta).
/// Vanishes on the diameter and on the semicircle.
inline double greens_half_disk(Point x, Point xi) {
    double rx = std::hypot(x.x, x.y), rxi = std::hypot(xi.x, xi.y);
    if (!(rx <= 1.0 + 1e-9) || x.y < -1e-9) throw OutOfDomain("greens_half_disk: x outside closed half-disk");
    if (!(rxi < 1.0 - 1e-12) || !(xi.y > 1e-12))
        throw OutOfDomain("greens_half_disk: xi must lie strictly inside the open half-disk");
    double dxx = std::hypot(x.x - xi.x, x.y - xi.y);
    if (dxx < 1e-12) throw SingularPoint("greens_half_disk: coincident arguments");

    double s = rxi * rxi;
    Point star{xi.x / s, xi.y / s};
    Point refl{xi.x, -xi.y};
    Point plus{refl.x / s, refl.y / s};
    double d_star = std::hypot(star.x - x.x, star.y - x.y);
    double d_refl = std::hypot(refl.x - x.x, refl.y - x.y);
    double d_plus = std::hypot(plus.x - x.x, plus.y - x.y);
    return std::log(d_star * d_refl / (d_plus * dxx));
}

// --- sigma-kernel quadrature ----------------------------------------------------

namespace tri_detail {

/// Quadrature nodes on [0, pi] with cached trig and boundary-datum values.
struct SigmaQuad {
    std::vector<double> w, cth, sth, phiv;
};

/// Panel layout for an integrand whose complexified singularity sits at angle
/// theta_star, a distance `dist` away. Panels are doubled once inside the
/// near-boundary band and graded dyadically toward theta_star.
inline PanelLayout sigma_panels(int n_quad, double theta_star, double dist) {
    int base = n_quad;
    if (dist < 0.01) base *= 2;
    if (dist < 0.5) return graded_panels(0.0, std::numbers::pi, base, theta_star, dist);
    return uniform_panels(0.0, std::numbers::pi, base);
}

inline SigmaQuad build_sigma_quad(const BoundaryPhi& phi, int n_quad, double theta_star, double dist) {
    PanelLayout lay = sigma_panels(n_quad, theta_star, dist);
    SigmaQuad q;
    std::size_t n = lay.size();
    q.w = std::move(lay.weight);
    q.cth.resize(n);
    q.sth.resize(n);
    q.phiv.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        q.cth[i] = std::cos(lay.node[i]);
        q.sth[i] = std::sin(lay.node[i]);
        q.phiv[i] = phi(lay.node[i]);
    }
    return q;
}

inline double nu_integral(const SigmaQuad& q, double x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < q.w.size(); ++i) {
        double den = 1.0 - 2.0 * x * q.cth[i] + x * x;
        acc += q.w[i] * q.phiv[i] * q.sth[i] / (den * den);
    }
    return acc;
}

inline double kernel_constant(KernelConstantMode mode, double x) {
    double f = (mode == KernelConstantMode::PaperConstant) ? 4.0 : 2.0;
    return f * (1.0 - x * x) / std::numbers::pi;
}

}  // namespace tri_detail

/// Interface normal derivative nu(x) = dU/dy at y=0 from the sigma datum,
/// via the explicit kernel integral with the selected constant mode.
inline double nu_eval(const BoundaryPhi& phi, double x, int n_quad, KernelConstantMode mode) {
    if (n_quad < 64) throw BadParameter("nu_eval: n_quad >= 64 required");
    double d = 1.0 - std::abs(x);
    if (!(d > 0.0)) throw OutOfDomain("nu_eval: |x| must be < 1");
    auto q = tri_detail::build_sigma_quad(phi, n_quad, x >= 0.0 ? 0.0 : std::numbers::pi, d);
    return tri_detail::kernel_constant(mode, x) * tri_detail::nu_integral(q, x);
}

namespace tri_detail {

inline double harmonic_raw(const BoundaryPhi& phi, Point p, int n_quad) {
    double r2 = p.x * p.x + p.y * p.y;
    double d = 1.0 - std::sqrt(r2);
    auto q = build_sigma_quad(phi, n_quad, std::atan2(p.y, p.x), d);
    double acc = 0.0;
    for (std::size_t i = 0; i < q.w.size(); ++i) {
        double dx = p.x - q.cth[i];
        double a = dx * dx + (p.y - q.sth[i]) * (p.y - q.sth[i]);
        double b = dx * dx + (p.y + q.sth[i]) * (p.y + q.sth[i]);
        acc += q.w[i] * q.phiv[i] * (1.0 / a - 1.0 / b);
    }
    return acc * (1.0 - r2) / (2.0 * std::numbers::pi);
}

inline Vec2 harmonic_raw_grad(const BoundaryPhi& phi, Point p, int n_quad) {
    double r2 = p.x * p.x + p.y * p.y;
    double d = 1.0 - std::sqrt(r2);
    auto q = build_sigma_quad(phi, n_quad, std::atan2(p.y, p.x), d);
    double gx = 0.0, gy = 0.0;
    for (std::size_t i = 0; i < q.w.size(); ++i) {
        double dx = p.x - q.cth[i];
        double ym = p.y - q.sth[i], yp = p.y + q.sth[i];
        double a = dx * dx + ym * ym, b = dx * dx + yp * yp;
        double ka = 1.0 / a, kb = 1.0 / b;
        double diff = ka - kb;
        gx += q.w[i] * q.phiv[i] * (-2.0 * p.x * diff - (1.0 - r2) * 2.0 * dx * (ka * ka - kb * kb));
        gy += q.w[i] * q.phiv[i] *
              (-2.0 * p.y * diff - (1.0 - r2) * 2.0 * (ym * ka * ka - yp * kb * kb));
    }
    return {gx / (2.0 * std::numbers::pi), gy / (2.0 * std::numbers::pi)};
}

}  // namespace tri_detail

/// Harmonic field in D1 with zero diameter data and phi on sigma, by
/// Gauss-Legendre quadrature of the half-disk boundary kernel. The result is
/// cross-checked against a doubled rule; disagreement beyond 1e-6 raises
/// QuadratureUnderResolved.
inline double harmonic_eval_d1(const BoundaryPhi& phi, Point p, int n_quad) {
    if (n_quad < 32) throw BadParameter("harmonic_eval_d1: n_quad >= 32 required");
    if (classify_tricomi(p) != Region::D1Upper)
        throw OutOfDomain("harmonic_eval_d1: point not strictly inside D1");
    double u = tri_detail::harmonic_raw(phi, p, n_quad);
    double u2 = tri_detail::harmonic_raw(phi, p, 2 * n_quad);
    if (std::abs(u2 - u) > 1e-6)
        throw QuadratureUnderResolved("harmonic_eval_d1: doubling n_quad moved the result by " +
                                      std::to_string(std::abs(u2 - u)));
    return u;
}

/// Analytic gradient of the same boundary-integral field (for exports).
inline Vec2 harmonic_grad_d1(const BoundaryPhi& phi, Point p, int n_quad) {
    if (classify_tricomi(p) != Region::D1Upper)
        throw OutOfDomain("harmonic_grad_d1: point not strictly inside D1");
    return tri_detail::harmonic_raw_grad(phi, p, n_quad);
}

// --- nu as first-class data -----------------------------------------------------

/// The interface datum nu on (-1,1), tagged with its provenance.
class NuFunction {
public:
    enum class Provenance { AnalyticKernel, FromF, OracleSampled };

    static NuFunction from_phi(const BoundaryPhi& phi, int n_quad, KernelConstantMode mode) {
        if (n_quad < 64) throw BadParameter("NuFunction::from_phi: n_quad >= 64 required");
        struct Kernel {
            BoundaryPhi phi;
            int n_quad;
            KernelConstantMode mode;
            tri_detail::SigmaQuad uniform;
        };
        auto k = std::make_shared<Kernel>(
            Kernel{phi, n_quad, mode, tri_detail::build_sigma_quad(phi, n_quad, 0.0, 1.0)});
        NuFunction nu;
        nu.provenance_ = Provenance::AnalyticKernel;
        nu.mode_ = mode;
        nu.desc_ = std::string("kernel(") + phi.name() + "," + std::string(to_string(mode)) + ")";
        nu.fn_ = [k](double x) {
            double d = 1.0 - std::abs(x);
            if (!(d > 0.0)) throw OutOfDomain("nu kernel: |x| must be < 1");
            double integral;
            if (d >= 0.5) {
                integral = tri_detail::nu_integral(k->uniform, x);
            } else {
                auto q = tri_detail::build_sigma_quad(k->phi, k->n_quad,
                                                      x >= 0.0 ? 0.0 : std::numbers::pi, d);
                integral = tri_detail::nu_integral(q, x);
            }
            return tri_detail::kernel_constant(k->mode, x) * integral;
        };
        return nu;
    }

    /// nu(x) = -f'((x-1)/2) induced by a characteristic datum (defined below).
    template <class F>
    static NuFunction from_characteristic(const F& f) {
        NuFunction nu;
        nu.provenance_ = Provenance::FromF;
        nu.desc_ = "from-f(" + f.name() + ")";
        nu.fn_ = [f](double x) { return -f.deriv((x - 1.0) / 2.0); };
        return nu;
    }

    /// Linear interpolation through sampled values (e.g. an oracle trace).
    static NuFunction from_samples(std::vector<double> xs, std::vector<double> vals) {
        if (xs.size() < 2 || xs.size() != vals.size())
            throw BadParameter("NuFunction::from_samples needs >= 2 matched samples");
        for (std::size_t i = 1; i < xs.size(); ++i)
            if (!(xs[i] > xs[i - 1])) throw BadParameter("NuFunction::from_samples abscissae must increase");
        auto x = std::make_shared<std::vector<double>>(std::move(xs));
        auto v = std::make_shared<std::vector<double>>(std::move(vals));
        NuFunction nu;
        nu.provenance_ = Provenance::OracleSampled;
        nu.desc_ = "sampled(" + std::to_string(x->size()) + ")";
        nu.lo_ = x->front();
        nu.hi_ = x->back();
        nu.fn_ = [x, v](double t) {
            const auto& xs2 = *x;
            if (t <= xs2.front()) return v->front();
            if (t >= xs2.back()) return v->back();
            auto it = std::upper_bound(xs2.begin(), xs2.end(), t);
            std::size_t k = it - xs2.begin();
            double w = (t - xs2[k - 1]) / (xs2[k] - xs2[k - 1]);
            return (1.0 - w) * (*v)[k - 1] + w * (*v)[k];
        };
        return nu;
    }

    double operator()(double x) const { return fn_(x); }
    Provenance provenance() const { return provenance_; }
    KernelConstantMode mode() const { return mode_; }
    const std::string& describe() const { return desc_; }
    double domain_lo() const { return lo_; }
    double domain_hi() const { return hi_; }

private:
    Provenance provenance_ = Provenance::FromF;
    KernelConstantMode mode_ = KernelConstantMode::CorrectedConstant;
    std::string desc_;
    std::function<double(double)> fn_;
    double lo_ = -1.0, hi_ = 1.0;
};

/// Endpoint clipping applied to a characteristic integral.
struct ClipInfo {
    bool clipped_lo = false, clipped_hi = false;
};

/// Wave-region extension U(x,y) = 1/2 * integral of nu from x-y to x+y,
/// negative throughout D2 whenever nu > 0. Integration endpoints are clipped
/// into the open data interval by 1e-9.
inline double dalembert_extend(const NuFunction& nu, Point p, int n_quad, ClipInfo* clip = nullptr) {
    Region reg = classify_tricomi(p);
    if (reg != Region::D2Triangle && reg != Region::OnCharAC && reg != Region::OnCharBC &&
        reg != Region::OnDiameter)
        throw OutOfDomain("dalembert_extend: point not in the closed triangle D2");
    double lo = p.x + p.y, hi = p.x - p.y;
    if (hi <= lo) return 0.0;
    if (lo < nu.domain_lo() - 1e-8 || hi > nu.domain_hi() + 1e-8)
        throw IntervalEscapesData("dalembert_extend: characteristic interval [" + std::to_string(lo) +
                                  ", " + std::to_string(hi) + "] leaves the nu data range");
    double clo = std::max(lo, nu.domain_lo() + 1e-9);
    double chi = std::min(hi, nu.domain_hi() - 1e-9);
    if (clip) {
        clip->clipped_lo = clo > lo;
        clip->clipped_hi = chi < hi;
    }
    if (chi <= clo) return 0.0;
    return -0.5 * quad_gl([&](double t) { return nu(t); }, clo, chi, n_quad);
}

/// Induced characteristic datum f(x) = -1/2 * integral of nu over (-1, 2x+1],
/// for x in [-1, 0]; exactly zero at x = -1.
inline double trace_ac(const NuFunction& nu, double x, int n_quad, ClipInfo* clip = nullptr) {
    if (x < -1.0 - 1e-9 || x > 1e-9) throw OutOfDomain("trace_ac: x must lie in [-1, 0]");
    double hi = 2.0 * x + 1.0;
    double lo = std::max(-1.0, nu.domain_lo()) + 1e-9;
    double chi = std::min(hi, nu.domain_hi() - 1e-9);
    if (clip) {
        clip->clipped_lo = true;
        clip->clipped_hi = chi < hi;
    }
    if (chi <= lo) return 0.0;
    return -0.5 * quad_gl([&](double t) { return nu(t); }, lo, chi, n_quad);
}

// --- characteristic data for problem 2 -------------------------------------------

/// Datum on the characteristic AC: f on [-1, 0] with derivative and complex
/// continuation. Polynomials are exact; long coefficient lists are truncated
/// with a geometric tail bound.
class CharacteristicF {
public:
    static CharacteristicF cubic() {  // f(x) = -(1+x)^3
        CharacteristicF f(std::vector<double>{-1.0, -3.0, -3.0, -1.0});
        f.name_ = "cubic";
        return f;
    }

    /// f(t) = sum c_k t^k.
    static CharacteristicF polynomial(std::vector<double> coeffs) {
        CharacteristicF f(std::move(coeffs));
        f.name_ = "poly";
        f.require_endpoint();
        return f;
    }

    /// f(t) = sum a_n (t + 1/2)^n.
    static CharacteristicF power_series(std::vector<double> a) {
        CharacteristicF f(shift_to_plain(a));
        f.name_ = "series";
        f.series_ = std::move(a);
        f.require_endpoint();
        return f;
    }

    double value(double t) const { return horner<double>(c_, t); }
    double deriv(double t) const { return horner_deriv<double>(c_, t); }
    double operator()(double t) const { return value(t); }

    /// f at a complex argument; SeriesDiverged when the tail bound after
    /// n_terms kept terms exceeds 1e-12.
    std::complex<double> value_c(std::complex<double> w, int n_terms = 64) const {
        if (int(c_.size()) - 1 <= n_terms) {
            std::complex<double> acc = 0.0;
            for (std::size_t i = c_.size(); i-- > 0;) acc = acc * w + c_[i];
            return acc;
        }
        std::complex<double> acc = 0.0, pw = 1.0;
        for (int n = 0; n <= n_terms; ++n) {
            acc += c_[n] * pw;
            pw *= w;
        }
        double tail = 0.0, aw = std::abs(w);
        double p = std::pow(aw, n_terms + 1);
        for (std::size_t n = n_terms + 1; n < c_.size(); ++n) {
            tail += std::abs(c_[n]) * p;
            p *= aw;
        }
        if (tail > 1e-12)
            throw SeriesDiverged("CharacteristicF::value_c: truncation tail bound " +
                                 std::to_string(tail) + " exceeds 1e-12");
        return acc;
    }

    const std::vector<double>& coeffs() const { return c_; }
    /// Coefficients of the expansion around -1/2 (powers of t + 1/2).
    const std::vector<double>& series_coeffs() const {
        if (series_.empty()) series_ = shift_to_centered(c_);
        return series_;
    }
    const std::string& name() const { return name_; }

    struct Admissibility {
        bool endpoint_ok = true;   // f(-1) = 0 within 1e-12
        bool decreasing = true;    // f' < 0 on (-1, 0), 200 samples
        double f_at_minus1 = 0.0;
        double max_fprime = 0.0;
        std::vector<std::string> notes;
        bool admissible() const { return endpoint_ok && decreasing; }
    };

    Admissibility admissibility() const {
        Admissibility a;
        a.f_at_minus1 = value(-1.0);
        a.endpoint_ok = std::abs(a.f_at_minus1) <= 1e-12;
        if (!a.endpoint_ok) a.notes.push_back("f(-1) != 0");
        a.max_fprime = -std::numeric_limits<double>::infinity();
        constexpr int kSamples = 200;
        for (int i = 0; i < kSamples; ++i) {
            double t = -1.0 + (i + 0.5) / kSamples;
            a.max_fprime = std::max(a.max_fprime, deriv(t));
        }
        if (!(a.max_fprime < 0.0)) {
            a.decreasing = false;
            a.notes.push_back("f' >= 0 somewhere on (-1, 0) (max f' = " +
                              std::to_string(a.max_fprime) + ")");
        }
        return a;
    }

private:
    explicit CharacteristicF(std::vector<double> c) : c_(std::move(c)) {
        if (c_.empty()) c_.push_back(0.0);
    }

    void require_endpoint() const {
        double f1 = horner<double>(c_, -1.0);
        if (std::abs(f1) > 1e-12)
            throw ValidationError({{"f(-1)", f1, "= 0 within 1e-12"}});
    }

    template <class T>
    static T horner(const std::vector<double>& c, T t) {
        T acc = 0;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
        return acc;
    }
    template <class T>
    static T horner_deriv(const std::vector<double>& c, T t) {
        T acc = 0;
        for (std::size_t i = c.size(); i-- > 1;) acc = acc * t + c[i] * double(i);
        return acc;
    }

    // (t+1/2)-coefficients -> plain powers of t
    static std::vector<double> shift_to_plain(const std::vector<double>& a) {
        std::vector<double> c(std::max<std::size_t>(a.size(), 1), 0.0);
        std::vector<double> binom(a.size(), 0.0);
        for (std::size_t n = 0; n < a.size(); ++n) {
            // expand a_n (t + 1/2)^n
            double pow_half = 1.0;
            binom[0] = 1.0;
            for (std::size_t k = 1; k <= n; ++k)
                binom[k] = binom[k - 1] * double(n - k + 1) / double(k);
            for (std::size_t k = n + 1; k-- > 0;) {
                c[k] += a[n] * binom[k] * pow_half;
                pow_half *= 0.5;
            }
        }
        return c;
    }
    // plain powers -> (t+1/2)-coefficients (Taylor shift by -1/2)
    static std::vector<double> shift_to_centered(const std::vector<double>& c) {
        std::vector<double> a = c;
        // synthetic division by (t + 1/2) repeatedly
        for (std::size_t k = 0; k + 1 < a.size(); ++k)
            for (std::size_t i = a.size() - 1; i > k; --i) a[i - 1] += -0.5 * a[i];
        return a;
    }

    std::vector<double> c_;
    mutable std::vector<double> series_;
    std::string name_ = "poly";
};

/// D2 wave field U = f((x-y-1)/2) - f((x+y-1)/2): takes the datum on AC and
/// vanishes on the diameter.
inline double problem2_d2(const CharacteristicF& f, Point p) {
    Region reg = classify_tricomi(p);
    if (reg != Region::D2Triangle && reg != Region::OnCharAC && reg != Region::OnCharBC &&
        reg != Region::OnDiameter)
        throw OutOfDomain("problem2_d2: point not in the closed triangle D2");
    return f.value((p.x - p.y - 1.0) / 2.0) - f.value((p.x + p.y - 1.0) / 2.0);
}

inline Vec2 problem2_d2_grad(const CharacteristicF& f, Point p) {
    double d1 = f.deriv((p.x - p.y - 1.0) / 2.0), d2 = f.deriv((p.x + p.y - 1.0) / 2.0);
    return {0.5 * (d1 - d2), 0.5 * (-d1 - d2)};
}

/// nu(x) = -f'((x-1)/2); positive whenever f is decreasing.
inline double problem2_nu(const CharacteristicF& f, double x) {
    if (std::abs(x) > 1.0 + 1e-9) throw OutOfDomain("problem2_nu: |x| must be <= 1");
    return -f.deriv((x - 1.0) / 2.0);
}

/// Harmonic continuation above the diameter: U = -2 Im f((z-1)/2), z = x + iy.
inline double problem2_d1(const CharacteristicF& f, Point p, int n_terms = 64) {
    if (!(p.y > 0.0)) throw OutOfDomain("problem2_d1: requires y > 0");
    std::complex<double> w(0.5 * (p.x - 1.0), 0.5 * p.y);
    return -2.0 * std::imag(f.value_c(w, n_terms));
}

inline Vec2 problem2_d1_grad(const CharacteristicF& f, Point p) {
    std::complex<double> w(0.5 * (p.x - 1.0), 0.5 * p.y);
    // f'(w) by Horner on the derivative coefficients
    const auto& c = f.coeffs();
    std::complex<double> acc = 0.0;
    for (std::size_t i = c.size(); i-- > 1;) acc = acc * w + c[i] * double(i);
    return {-std::imag(acc), -std::real(acc)};
}

/// Partial sum of U = -sum a_n / 2^(n-1) r^n sin(n phi) for data given as
/// coefficients around -1/2, with a geometric tail estimate.
inline double series_eval_d1(std::span<const double> a, Point p, int n_terms = 64) {
    if (!(p.y > 0.0)) throw OutOfDomain("series_eval_d1: requires y > 0");
    std::complex<double> w(0.5 * p.x, 0.5 * p.y);
    std::complex<double> pw = w;
    double acc = 0.0;
    int cut = std::min<int>(n_terms, int(a.size()) - 1);
    for (int n = 1; n <= cut; ++n) {
        acc += a[n] * std::imag(pw);
        pw *= w;
    }
    // Tail: remaining supplied coefficients, then geometric extrapolation from
    // the trailing ratios when the list looks like a truncated series.
    double aw = std::abs(w);
    double tail = 0.0;
    double p_abs = std::pow(aw, cut + 1);
    for (std::size_t n = std::size_t(cut) + 1; n < a.size(); ++n) {
        tail += std::abs(a[n]) * p_abs;
        p_abs *= aw;
    }
    if (int(a.size()) - 1 > cut && a.size() >= 3) {
        double q = 0.0;
        int pairs = 0;
        for (std::size_t n = a.size() - 1; n > a.size() - std::min<std::size_t>(8, a.size() - 1); --n) {
            if (a[n - 1] != 0.0 && a[n] != 0.0) {
                q = std::max(q, std::abs(a[n] / a[n - 1]));
                ++pairs;
            }
        }
        if (pairs > 0) {
            double rho = q * aw;
            if (rho >= 1.0)
                throw SeriesDiverged("series_eval_d1: extrapolated term ratio " + std::to_string(rho) +
                                     " >= 1 at this point");
            tail += std::abs(a.back()) * p_abs * rho / (1.0 - rho);
        }
    }
    if (tail > 1e-12)
        throw SeriesDiverged("series_eval_d1: tail bound " + std::to_string(tail) + " exceeds 1e-12");
    return -2.0 * acc;
}

// --- positivity probe -------------------------------------------------------------

/// Sampled sign structure of the continuation above the diameter: the connected
/// positive component grown from the interval (-1,1), and the first zero
/// crossing per column.
struct PositivityReport {
    int grid_n = 0;
    bool admissible = true;
    std::vector<std::string> admissibility_notes;
    std::vector<std::uint8_t> in_component;  // row-major, index j*grid_n + i
    long positive_cells = 0;
    long component_cells = 0;
    std::vector<Point> zero_level;

    double x_of(int i) const { return -1.0 + 2.0 * (i + 0.5) / grid_n; }
    double y_of(int j) const { return 1.2 * (j + 1.0) / grid_n; }
    bool whole_grid_positive() const { return positive_cells == long(grid_n) * grid_n; }
};

/// Evaluate the continuation on a grid_n x grid_n grid over (-1,1) x (0, 1.2]
/// and flood the positive component adjacent to the diameter interval.
inline PositivityReport positivity_probe(const CharacteristicF& f, int grid_n) {
    if (grid_n < 50) throw BadParameter("positivity_probe: grid_n >= 50 required");
    PositivityReport rep;
    rep.grid_n = grid_n;
    auto adm = f.admissibility();
    rep.admissible = adm.admissible();
    rep.admissibility_notes = adm.notes;

    std::vector<double> u(std::size_t(grid_n) * grid_n);
    for (int j = 0; j < grid_n; ++j)
        for (int i = 0; i < grid_n; ++i)
            u[std::size_t(j) * grid_n + i] = problem2_d1(f, {rep.x_of(i), rep.y_of(j)});

    rep.in_component.assign(u.size(), 0);
    std::deque<std::pair<int, int>> queue;
    for (int i = 0; i < grid_n; ++i) {
        if (u[i] > 0.0) {
            rep.in_component[i] = 1;
            queue.emplace_back(i, 0);
        }
        for (int j = 0; j < grid_n; ++j)
            if (u[std::size_t(j) * grid_n + i] > 0.0) ++rep.positive_cells;
    }
    while (!queue.empty()) {
        auto [i, j] = queue.front();
        queue.pop_front();
        const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            int ni = i + di[k], nj = j + dj[k];
            if (ni < 0 || nj < 0 || ni >= grid_n || nj >= grid_n) continue;
            std::size_t idx = std::size_t(nj) * grid_n + ni;
            if (!rep.in_component[idx] && u[idx] > 0.0) {
                rep.in_component[idx] = 1;
                queue.emplace_back(ni, nj);
            }
        }
    }
    for (auto c : rep.in_component) rep.component_cells += c;

    for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j + 1 < grid_n; ++j) {
            double u0 = u[std::size_t(j) * grid_n + i], u1 = u[std::size_t(j + 1) * grid_n + i];
            if (u0 > 0.0 && u1 <= 0.0) {
                double t = u0 / (u0 - u1);
                rep.zero_level.push_back({rep.x_of(i), rep.y_of(j) + t * (rep.y_of(j + 1) - rep.y_of(j))});
                break;
            }
        }
    }
    return rep;
}

// --- assembled problem-1 field ------------------------------------------------------

/// Top-down pipeline: sigma datum, harmonic D1 field, kernel nu, d'Alembert D2
/// extension; zero on the diameter, phi on sigma.
struct Problem1Field {
    BoundaryPhi phi;
    int n_quad;
    KernelConstantMode mode;
    NuFunction nu;

    double eval(Point p) const {
        switch (classify_tricomi(p)) {
            case Region::D1Upper: return harmonic_eval_d1(phi, p, n_quad);
            case Region::D2Triangle:
            case Region::OnCharAC:
            case Region::OnCharBC: return dalembert_extend(nu, p, n_quad);
            case Region::OnDiameter: return 0.0;
            case Region::OnSigma: return phi(polar(p).theta);
            default: throw OutOfDomain("Problem1Field: point outside the Tricomi domain");
        }
    }
};

inline Problem1Field problem1_field(const BoundaryPhi& phi, int n_quad, KernelConstantMode mode) {
    return {phi, n_quad, mode, NuFunction::from_phi(phi, n_quad, mode)};
}

}  // namespace mixpde::tricomi
