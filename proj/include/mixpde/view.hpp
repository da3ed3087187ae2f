#pragma once

#include <memory>
#include <utility>

#include "mixpde/families.hpp"
#include "mixpde/numerics.hpp"

namespace mixpde {

/// Verification view of a validated family solution on its natural grid.
inline numerics::FieldView make_field_view(const families::Solution& sol, int grid_n) {
    auto s = std::make_shared<families::Solution>(sol);
    numerics::FieldView v;
    v.name = std::string(s->name());
    v.grid_desc = s->grid_description(grid_n);
    v.value = [s](long double x, long double y) { return s->eval_at<long double>(x, y); };
    v.tag = [s](Point p) { return s->operator_tag(p); };
    v.contains = [s](Point p, double m) { return s->contains(p, m); };
    v.interface_distance = [s](Point p) { return s->interface_distance(p); };
    v.interface_jump = [s](Point p) { return s->interface_gradient_jump(p); };
    v.grid = s->verification_grid(grid_n);
    v.interface_curve = s->interface_samples(100);
    v.sign_semantics = s->sign_semantics();
    return v;
}

/// Same field with a smooth additive perturbation; tags, grid and interface
/// data are kept, so residual checks must flag the defect.
inline numerics::FieldView with_value_offset(numerics::FieldView base,
                                             std::function<long double(long double, long double)> delta) {
    auto inner = base.value;
    auto d = std::move(delta);
    base.value = [inner, d](long double x, long double y) { return inner(x, y) + d(x, y); };
    base.name += "+perturbation";
    return base;
}

}  // namespace mixpde
