#include "nnv/model_sets.hpp"

#include "nnv/errors.hpp"

namespace nnv {

namespace {

LinExpr row_expr(const Mat& C, int r, const std::vector<VarId>& vars) {
    LinExpr e;
    for (size_t i = 0; i < vars.size(); ++i)
        if (C(r, i) != 0.0) e += LinExpr::var(vars[i], C(r, i));
    return e;
}

}  // namespace

void add_set_constraint(LinearModel& m, const GeometricSet& s, const std::vector<VarId>& vars) {
    if (static_cast<int>(vars.size()) != set_dim(s))
        throw InvalidArgument("set constraint variable count mismatch");
    if (std::holds_alternative<PolytopeComplement>(s))
        throw Unsupported("polytope complement is not a convex constraint");
    if (const auto* box = std::get_if<Hyperrectangle>(&s)) {
        for (size_t i = 0; i < vars.size(); ++i) {
            m.add_le(LinExpr::var(vars[i]), box->center[i] + box->radius[i]);
            m.add_ge(LinExpr::var(vars[i]), box->center[i] - box->radius[i]);
        }
        return;
    }
    HPolytope h = as_hrep(s);
    for (int r = 0; r < h.num_rows(); ++r) m.add_le(row_expr(h.C, r, vars), h.d[r]);
}

void add_complement_constraint(LinearModel& m, const GeometricSet& s,
                               const std::vector<VarId>& vars) {
    if (static_cast<int>(vars.size()) != set_dim(s))
        throw InvalidArgument("complement constraint variable count mismatch");
    if (const auto* hs = std::get_if<Halfspace>(&s)) {
        LinExpr e;
        for (size_t i = 0; i < vars.size(); ++i)
            if (hs->c[i] != 0.0) e += LinExpr::var(vars[i], hs->c[i]);
        m.add_ge(e, hs->d + kComplementMargin);
        return;
    }
    if (const auto* pc = std::get_if<PolytopeComplement>(&s)) {
        // Complement of a complement: the inner polytope itself.
        for (int r = 0; r < pc->inner.num_rows(); ++r)
            m.add_le(row_expr(pc->inner.C, r, vars), pc->inner.d[r]);
        return;
    }
    throw Unsupported("set complement is not convex");
}

}  // namespace nnv
