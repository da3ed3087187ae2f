#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include "mixpde/errors.hpp"

namespace mixpde {

namespace quad_detail {

/// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_m.
inline void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w) {
    x.assign(m, 0.0);
    w.assign(m, 0.0);
    const int half = (m + 1) / 2;
    for (int k = 0; k < half; ++k) {
        double z = std::cos(std::numbers::pi * (k + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < m; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = m * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[k] = -z;
        x[m - 1 - k] = z;
        w[k] = w[m - 1 - k] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

inline const std::pair<std::vector<double>, std::vector<double>>& gl16() {
    static const auto nodes = [] {
        std::pair<std::vector<double>, std::vector<double>> nw;
        gauss_legendre(16, nw.first, nw.second);
        return nw;
    }();
    return nodes;
}

}  // namespace quad_detail

/// Flattened composite quadrature rule: nodes and weights over [a,b].
struct PanelLayout {
    std::vector<double> node;
    std::vector<double> weight;
    std::size_t size() const { return node.size(); }
};

namespace quad_detail {

inline void append_panel(PanelLayout& lay, double lo, double hi, const std::vector<double>& x,
                         const std::vector<double>& w) {
    double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < x.size(); ++i) {
        lay.node.push_back(mid + hw * x[i]);
        lay.weight.push_back(hw * w[i]);
    }
}

inline PanelLayout from_edges(const std::vector<double>& edges) {
    const auto& [x, w] = gl16();
    PanelLayout lay;
    lay.node.reserve(16 * (edges.size() - 1));
    lay.weight.reserve(16 * (edges.size() - 1));
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) append_panel(lay, edges[k], edges[k + 1], x, w);
    return lay;
}

}  // namespace quad_detail

/// Composite rule of 16-point panels; n_total names the total node count.
inline PanelLayout uniform_panels(double a, double b, int n_total) {
    if (n_total < 16) {
        int m = std::max(2, n_total);
        std::vector<double> x, w;
        quad_detail::gauss_legendre(m, x, w);
        PanelLayout lay;
        quad_detail::append_panel(lay, a, b, x, w);
        return lay;
    }
    int npan = (n_total + 15) / 16;
    std::vector<double> edges(npan + 1);
    for (int k = 0; k <= npan; ++k) edges[k] = a + (b - a) * k / npan;
    return quad_detail::from_edges(edges);
}

/// Composite rule refined toward t_star: any panel wider than twice its distance
/// to t_star (or twice `scale`, whichever is larger) is split in half, so panel
/// widths decay dyadically into the near-singular point. Keeps 16-point panels;
/// n_total names the node count of the unrefined base layout.
inline PanelLayout graded_panels(double a, double b, int n_total, double t_star, double scale) {
    int npan = std::max(1, n_total / 16);
    std::vector<double> edges(npan + 1);
    for (int k = 0; k <= npan; ++k) edges[k] = a + (b - a) * k / npan;

    double floor_scale = std::max(scale, 1e-12);
    for (int guard = 0; guard < 128; ++guard) {
        bool changed = false;
        std::vector<double> out;
        out.reserve(edges.size() + 8);
        for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
            double lo = edges[k], hi = edges[k + 1], w = hi - lo;
            double dist = std::max({0.0, lo - t_star, t_star - hi});
            out.push_back(lo);
            if (w > 2.0 * std::max(floor_scale, dist) && w > 1e-13) {
                out.push_back(0.5 * (lo + hi));
                changed = true;
            }
        }
        out.push_back(edges.back());
        edges = std::move(out);
        if (!changed) break;
    }
    return quad_detail::from_edges(edges);
}

/// Composite Gauss-Legendre integral of f over [a,b] with ~n nodes.
template <class F>
    requires std::invocable<F&, double>
double quad_gl(F&& f, double a, double b, int n) {
    if (!(a <= b)) throw BadInterval("quad_gl: requires a <= b");
    if (n < 2) throw BadParameter("quad_gl: requires n >= 2");
    if (a == b) return 0.0;
    PanelLayout lay = uniform_panels(a, b, n);
    double acc = 0.0;
    for (std::size_t i = 0; i < lay.size(); ++i) acc += lay.weight[i] * f(lay.node[i]);
    return acc;
}

}  // namespace mixpde
