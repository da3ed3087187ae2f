#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixpde/families.hpp"
#include "mixpde/geometry.hpp"
#include "mixpde/numerics.hpp"
#include "mixpde/tricomi.hpp"

namespace mixpde::io {

/// Shortest round-trip decimal form.
inline std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

struct FieldRow {
    double x = 0, y = 0, u = 0, ux = 0, uy = 0;
    std::string region, op;
};

inline std::string csv_text(std::span<const FieldRow> rows) {
    std::string out = "x,y,u,ux,uy,region,operator\n";
    for (const auto& r : rows) {
        out += format_double(r.x);
        out += ',';
        out += format_double(r.y);
        out += ',';
        out += format_double(r.u);
        out += ',';
        out += format_double(r.ux);
        out += ',';
        out += format_double(r.uy);
        out += ',';
        out += r.region;
        out += ',';
        out += r.op;
        out += '\n';
    }
    return out;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw BadParameter("cannot open output file: " + path);
    f << text;
}

/// Resolved invocation parameters; embedded verbatim in JSON reports.
struct RunConfig {
    std::string subcommand;
    std::string family;
    std::map<std::string, double> params;  // R, H, K, C, a when given
    std::string phi, f_desc, kernel;
    int grid = 0, n_quad = 0, oracle_n = 0;
    double h = 0.0, residual_tol = 0.0, jump_tol = 0.0;
    std::string out, report;
};

inline nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json j;
    j["subcommand"] = c.subcommand;
    if (!c.family.empty()) j["family"] = c.family;
    if (!c.params.empty()) j["params"] = c.params;
    if (!c.phi.empty()) j["phi"] = c.phi;
    if (!c.f_desc.empty()) j["f"] = c.f_desc;
    if (!c.kernel.empty()) j["kernel"] = c.kernel;
    if (c.grid) j["grid"] = c.grid;
    if (c.n_quad) j["n_quad"] = c.n_quad;
    if (c.oracle_n) j["oracle_n"] = c.oracle_n;
    if (c.h != 0.0) j["h"] = c.h;
    if (c.residual_tol != 0.0) j["residual_tol"] = c.residual_tol;
    if (c.jump_tol != 0.0) j["jump_tol"] = c.jump_tol;
    if (!c.out.empty()) j["out"] = c.out;
    if (!c.report.empty()) j["report"] = c.report;
    return j;
}

inline nlohmann::json to_json(const numerics::ResidualReport& r) {
    nlohmann::json j;
    j["field"] = r.field_name;
    j["grid"] = r.grid_desc;
    j["h"] = r.h;
    j["residual_tol"] = r.residual_tol;
    j["jump_tol"] = r.jump_tol;
    j["nodes"] = r.nodes;
    j["residual_nodes"] = r.residual_nodes;
    j["banded"] = r.banded;
    j["skipped_stencils"] = r.skipped_stencils;
    j["max_residual"] = {{"laplace", r.max_residual_laplace},
                         {"wave", r.max_residual_wave},
                         {"degenerate", r.max_residual_degenerate}};
    j["max_residual_raw_h"] = r.max_residual_raw;
    j["max_interface_jump"] = r.max_interface_jump;
    j["sign_applicable"] = r.sign_applicable;
    j["sign_consistent"] = r.sign_consistent;
    j["sign_violations"] = r.sign_violations;
    if (!r.kernel_mode.empty()) j["kernel_mode"] = r.kernel_mode;
    j["pass"] = r.pass;
    return j;
}

inline nlohmann::json report_json(const numerics::ResidualReport& r, const RunConfig& c) {
    nlohmann::json j;
    j["config"] = to_json(c);
    j["report"] = to_json(r);
    return j;
}

// --- family / pipeline exports ------------------------------------------------------

inline std::vector<FieldRow> rows_for_family(const families::Solution& sol, int grid_n) {
    std::vector<FieldRow> rows;
    for (Point p : sol.verification_grid(grid_n)) {
        if (!sol.contains(p)) continue;
        FieldRow r;
        r.x = p.x;
        r.y = p.y;
        r.u = sol.eval(p);
        Vec2 g = sol.grad(p);
        r.ux = g.x;
        r.uy = g.y;
        r.region = sol.region_name(p);
        r.op = std::string(families::to_string(sol.operator_tag(p)));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline std::vector<FieldRow> rows_for_problem1(const tricomi::Problem1Field& field, int grid_n) {
    std::vector<FieldRow> rows;
    for (int j = 0; j < grid_n; ++j) {
        double y = -1.0 + 2.0 * j / (grid_n - 1);
        for (int i = 0; i < grid_n; ++i) {
            double x = -1.0 + 2.0 * i / (grid_n - 1);
            Point p{x, y};
            Region reg = classify_tricomi(p);
            if (reg == Region::Outside) continue;
            FieldRow r;
            r.x = x;
            r.y = y;
            r.u = field.eval(p);
            switch (reg) {
                case Region::D1Upper: {
                    Vec2 g = tricomi::harmonic_grad_d1(field.phi, p, field.n_quad);
                    r.ux = g.x;
                    r.uy = g.y;
                    r.op = "laplace";
                    break;
                }
                case Region::OnSigma: {
                    // one-sided extrapolation of the interior analytic gradient
                    Point q1{p.x * (1 - 1e-4), p.y * (1 - 1e-4)};
                    Point q2{p.x * (1 - 2e-4), p.y * (1 - 2e-4)};
                    Vec2 g1 = tricomi::harmonic_grad_d1(field.phi, q1, field.n_quad);
                    Vec2 g2 = tricomi::harmonic_grad_d1(field.phi, q2, field.n_quad);
                    r.ux = 2 * g1.x - g2.x;
                    r.uy = 2 * g1.y - g2.y;
                    r.op = "laplace";
                    break;
                }
                case Region::OnDiameter: {
                    double xi = std::clamp(x, -1.0 + 1e-9, 1.0 - 1e-9);
                    r.ux = 0.0;
                    r.uy = field.nu(xi);
                    r.op = "interface";
                    break;
                }
                default: {  // D2 and its characteristics
                    double lo = std::clamp(x + y, -1.0 + 1e-9, 1.0 - 1e-9);
                    double hi = std::clamp(x - y, -1.0 + 1e-9, 1.0 - 1e-9);
                    r.ux = 0.5 * (field.nu(lo) - field.nu(hi));
                    r.uy = 0.5 * (field.nu(lo) + field.nu(hi));
                    r.op = "wave";
                    break;
                }
            }
            r.region = std::string(to_string(reg));
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

inline std::vector<FieldRow> rows_for_problem2(const tricomi::CharacteristicF& f, int grid_n) {
    std::vector<FieldRow> rows;
    for (int j = 0; j < grid_n; ++j) {
        double y = -1.0 + 2.0 * j / (grid_n - 1);
        for (int i = 0; i < grid_n; ++i) {
            double x = -1.0 + 2.0 * i / (grid_n - 1);
            Point p{x, y};
            Region reg = classify_tricomi(p);
            if (reg == Region::Outside) continue;
            FieldRow r;
            r.x = x;
            r.y = y;
            Vec2 g;
            if (reg == Region::D1Upper || reg == Region::OnSigma) {
                r.u = tricomi::problem2_d1(f, p);
                g = tricomi::problem2_d1_grad(f, p);
                r.op = "laplace";
            } else if (reg == Region::OnDiameter) {
                r.u = 0.0;
                g = {0.0, tricomi::problem2_nu(f, x)};
                r.op = "interface";
            } else {
                r.u = tricomi::problem2_d2(f, p);
                g = tricomi::problem2_d2_grad(f, p);
                r.op = "wave";
            }
            r.ux = g.x;
            r.uy = g.y;
            r.region = std::string(to_string(reg));
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

// --- CLI parsing helpers --------------------------------------------------------------

inline std::vector<double> parse_coeff_list(const std::string& body) {
    std::vector<double> out;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    if (out.empty()) throw BadParameter("empty coefficient list");
    return out;
}

/// "cubic", "poly:c0,c1,...", or "series:a0,a1,...".
inline tricomi::CharacteristicF parse_characteristic(const std::string& desc) {
    if (desc == "cubic") return tricomi::CharacteristicF::cubic();
    if (desc.rfind("poly:", 0) == 0)
        return tricomi::CharacteristicF::polynomial(parse_coeff_list(desc.substr(5)));
    if (desc.rfind("series:", 0) == 0)
        return tricomi::CharacteristicF::power_series(parse_coeff_list(desc.substr(7)));
    throw BadParameter("unknown characteristic datum: " + desc +
                       " (want cubic | poly:c0,c1,... | series:a0,a1,...)");
}

/// "sin", "sin2", "sin3", or a path to a two-column CSV (theta, phi).
inline tricomi::BoundaryPhi parse_phi(const std::string& desc) {
    if (desc == "sin") return tricomi::BoundaryPhi::sin_theta();
    if (desc == "sin2") return tricomi::BoundaryPhi::sin_2theta();
    if (desc == "sin3") return tricomi::BoundaryPhi::sin_cubed();
    std::ifstream in(desc);
    if (!in) throw BadParameter("phi preset not recognized and not a readable file: " + desc);
    std::vector<double> th, va;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string c1, c2;
        if (!std::getline(ss, c1, ',') || !std::getline(ss, c2, ',')) continue;
        try {
            double t = std::stod(c1), v = std::stod(c2);
            th.push_back(t);
            va.push_back(v);
        } catch (...) {
            continue;  // header row
        }
    }
    return tricomi::BoundaryPhi::table(std::move(th), std::move(va));
}

/// Construct a family spec by CLI name with optional parameter overrides.
inline families::FamilySpec make_family_spec(const std::string& name, std::optional<double> R,
                                             std::optional<double> H, std::optional<double> K,
                                             std::optional<double> C, std::optional<double> a,
                                             const std::optional<std::string>& f1_desc = {},
                                             const std::optional<std::string>& f2_desc = {}) {
    using namespace families;
    auto pick = [](std::optional<double> v, double dflt) { return v.value_or(dflt); };
    if (name == "dirichlet-eq1-mixed") {
        DirichletEq1Mixed s;
        return DirichletEq1Mixed{pick(R, s.R), pick(H, s.H), pick(a, s.a)};
    }
    if (name == "dirichlet-eq1-trivial-hyp") {
        DirichletEq1TrivialHyp s;
        return DirichletEq1TrivialHyp{pick(R, s.R), pick(H, s.H), pick(C, s.C)};
    }
    if (name == "dirichlet-eq2-mixed") {
        DirichletEq2Mixed s;
        return DirichletEq2Mixed{pick(R, s.R), pick(H, s.H), pick(C, s.C), pick(a, s.a)};
    }
    if (name == "dirichlet-eq2-trivial-hyp") {
        DirichletEq2TrivialHyp s;
        return DirichletEq2TrivialHyp{pick(R, s.R), pick(H, s.H), pick(C, s.C)};
    }
    if (name == "neumann-eq1-mixed") {
        NeumannEq1Mixed s;
        return NeumannEq1Mixed{pick(R, s.R), pick(K, s.K), pick(a, s.a)};
    }
    if (name == "neumann-eq1-trivial-hyp") {
        NeumannEq1TrivialHyp s;
        return NeumannEq1TrivialHyp{pick(R, s.R), pick(K, s.K), pick(C, s.C)};
    }
    if (name == "neumann-eq2-mixed") {
        NeumannEq2Mixed s;
        return NeumannEq2Mixed{pick(R, s.R), pick(K, s.K), pick(C, s.C), pick(a, s.a)};
    }
    if (name == "cauchy-eq1-mixed") {
        CauchyEq1Mixed s;
        return CauchyEq1Mixed{pick(R, s.R), pick(H, s.H), pick(K, s.K)};
    }
    if (name == "cauchy-eq1-trivial-hyp") {
        CauchyEq1TrivialHyp s;
        return CauchyEq1TrivialHyp{pick(R, s.R), pick(H, s.H), pick(K, s.K)};
    }
    if (name == "cauchy-eq2-mixed") {
        CauchyEq2Mixed s;
        return CauchyEq2Mixed{pick(R, s.R), pick(H, s.H), pick(K, s.K), pick(a, s.a)};
    }
    if (name == "half-plane-eq1") {
        HalfPlaneEq1 s;
        return HalfPlaneEq1{pick(C, s.C)};
    }
    if (name == "whole-plane-eq1") {
        WholePlaneEq1 s;
        return WholePlaneEq1{pick(C, s.C), pick(a, s.a)};
    }
    if (name == "goursat-eq1") {
        GoursatEq1 s;
        auto parse_callable = [](const std::string& d) {
            if (d.rfind("poly:", 0) == 0)
                return families::Callable1D::polynomial(parse_coeff_list(d.substr(5)));
            throw BadParameter("goursat data must be poly:c0,c1,...");
        };
        if (f1_desc) s.f1 = parse_callable(*f1_desc);
        if (f2_desc) s.f2 = parse_callable(*f2_desc);
        return s;
    }
    throw BadParameter("unknown family: " + name);
}

inline std::vector<std::string> family_names() {
    std::vector<std::string> names;
    for (const auto& s : families::all_default_specs()) names.emplace_back(families::family_name(s));
    return names;
}

}  // namespace mixpde::io
