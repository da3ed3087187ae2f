#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string_view>
#include <variant>

#include "mixpde/errors.hpp"

namespace mixpde {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    double norm() const { return std::hypot(x, y); }
};

struct Polar {
    double r = 0.0;
    double theta = 0.0;  // in [0, 2*pi)
};

/// Polar coordinates measured from the positive x-axis; theta = 0 at the origin.
inline Polar polar(Point p) {
    double r = std::hypot(p.x, p.y);
    if (r == 0.0) return {0.0, 0.0};
    double t = std::atan2(p.y, p.x);
    if (t < 0.0) t += 2.0 * std::numbers::pi;
    if (t >= 2.0 * std::numbers::pi) t = 0.0;
    return {r, t};
}

/// Partition tags for the unit Tricomi domain: upper half-disk D1, characteristic
/// triangle D2 with vertices A(-1,0), B(1,0), C(0,-1), and its boundary pieces.
enum class Region { D1Upper, D2Triangle, OnDiameter, OnSigma, OnCharAC, OnCharBC, Outside };

inline std::string_view to_string(Region r) {
    switch (r) {
        case Region::D1Upper: return "d1";
        case Region::D2Triangle: return "d2";
        case Region::OnDiameter: return "diameter";
        case Region::OnSigma: return "sigma";
        case Region::OnCharAC: return "char-ac";
        case Region::OnCharBC: return "char-bc";
        case Region::Outside: return "outside";
    }
    return "?";
}

namespace geo_detail {

/// Distance from p to the segment a--b.
inline double segment_distance(Point p, Point a, Point b) {
    double vx = b.x - a.x, vy = b.y - a.y;
    double wx = p.x - a.x, wy = p.y - a.y;
    double t = (vx * wx + vy * wy) / (vx * vx + vy * vy);
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(wx - t * vx, wy - t * vy);
}

}  // namespace geo_detail

/// Classify a point against the unit Tricomi domain. Boundary tags win over
/// interior tags within distance tol; precedence among boundary pieces is
/// diameter, sigma, AC, BC (nearer characteristic first).
inline Region classify_tricomi(Point p, double tol = 1e-9) {
    if (!(tol > 0.0) || !(tol < 1e-3))
        throw BadParameter("classify_tricomi: tol must lie in (0, 1e-3)");

    const Point A{-1.0, 0.0}, B{1.0, 0.0}, C{0.0, -1.0};
    double r = std::hypot(p.x, p.y);

    double d_diam = geo_detail::segment_distance(p, A, B);
    double d_sigma = (p.y >= 0.0) ? std::abs(r - 1.0)
                                  : std::min(std::hypot(p.x + 1.0, p.y), std::hypot(p.x - 1.0, p.y));
    double d_ac = geo_detail::segment_distance(p, A, C);
    double d_bc = geo_detail::segment_distance(p, B, C);

    if (d_diam <= tol) return Region::OnDiameter;
    if (d_sigma <= tol) return Region::OnSigma;
    if (d_ac <= tol && d_bc <= tol) return d_bc < d_ac ? Region::OnCharBC : Region::OnCharAC;
    if (d_ac <= tol) return Region::OnCharAC;
    if (d_bc <= tol) return Region::OnCharBC;

    if (p.y > 0.0 && r < 1.0) return Region::D1Upper;
    if (p.y < 0.0 && p.y > -p.x - 1.0 && p.y > p.x - 1.0) return Region::D2Triangle;
    return Region::Outside;
}

// Fixed domains used by the solution families.
struct Disk {
    double radius = 1.0;
};
struct UpperHalfPlane {};
struct Plane {};
struct GoursatWedge {};  // y + x > 0, y - x + 1 > 0
struct TricomiUnit {};   // sigma = unit semicircle, C = (0,-1)

using DomainSpec = std::variant<Disk, UpperHalfPlane, Plane, GoursatWedge, TricomiUnit>;

inline DomainSpec make_disk(double radius) {
    if (!(radius > 0.0)) throw BadParameter("Disk radius must be > 0");
    return Disk{radius};
}

inline bool domain_contains(const DomainSpec& d, Point p, double tol = 1e-9) {
    return std::visit(
        [&](const auto& dom) -> bool {
            using T = std::decay_t<decltype(dom)>;
            if constexpr (std::is_same_v<T, Disk>)
                return std::hypot(p.x, p.y) <= dom.radius + tol;
            else if constexpr (std::is_same_v<T, UpperHalfPlane>)
                return p.y >= -tol;
            else if constexpr (std::is_same_v<T, Plane>)
                return true;
            else if constexpr (std::is_same_v<T, GoursatWedge>)
                return p.y + p.x >= -tol && p.y - p.x + 1.0 >= -tol;
            else
                return classify_tricomi(p, tol) != Region::Outside;
        },
        d);
}

}  // namespace mixpde
