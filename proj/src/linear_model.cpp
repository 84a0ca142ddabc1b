#include "nnv/linear_model.hpp"

#include <algorithm>

#include "nnv/errors.hpp"

namespace nnv {

LinExpr& LinExpr::operator+=(const LinExpr& o) {
    for (const auto& [id, c] : o.coeffs) {
        double& slot = coeffs[id];
        slot += c;
        if (slot == 0.0) coeffs.erase(id);
    }
    constant += o.constant;
    return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
    for (const auto& [id, c] : o.coeffs) {
        double& slot = coeffs[id];
        slot -= c;
        if (slot == 0.0) coeffs.erase(id);
    }
    constant -= o.constant;
    return *this;
}

LinExpr& LinExpr::operator*=(double s) {
    if (s == 0.0) {
        coeffs.clear();
        constant = 0.0;
        return *this;
    }
    for (auto& [id, c] : coeffs) c *= s;
    constant *= s;
    return *this;
}

VarId LinearModel::add_var(double lower, double upper) {
    if (lower > upper) throw InvalidArgument("variable lower bound exceeds upper bound");
    VarId id = static_cast<VarId>(vars_.size());
    vars_.push_back({id, VarKind::Continuous, lower, upper});
    return id;
}

VarId LinearModel::add_binary() {
    VarId id = static_cast<VarId>(vars_.size());
    vars_.push_back({id, VarKind::Binary, 0.0, 1.0});
    return id;
}

void LinearModel::add_constraint(const LinExpr& lhs, Relation rel, double rhs) {
    Constraint c;
    c.coeffs = lhs.coeffs;
    for (const auto& [id, coeff] : c.coeffs) {
        (void)coeff;
        if (id < 0 || id >= num_vars())
            throw InvalidArgument("constraint references undeclared variable");
    }
    c.rel = rel;
    c.rhs = rhs - lhs.constant;
    cons_.push_back(std::move(c));
}

void LinearModel::set_objective(Sense sense, const LinExpr& expr) {
    for (const auto& [id, coeff] : expr.coeffs) {
        (void)coeff;
        if (id < 0 || id >= num_vars())
            throw InvalidArgument("objective references undeclared variable");
    }
    sense_ = sense;
    objective_ = expr;
}

void LinearModel::restrict_bounds(VarId id, double lower, double upper) {
    if (id < 0 || id >= num_vars()) throw InvalidArgument("unknown variable id");
    Variable& v = vars_[id];
    v.lower = std::max(v.lower, lower);
    v.upper = std::min(v.upper, upper);
    if (v.lower > v.upper) throw InvalidArgument("bound restriction made variable empty");
}

bool LinearModel::has_binaries() const {
    return std::any_of(vars_.begin(), vars_.end(),
                       [](const Variable& v) { return v.kind == VarKind::Binary; });
}

double LinearModel::eval(const LinExpr& e, const Vec& point) const {
    double v = e.constant;
    for (const auto& [id, c] : e.coeffs) v += c * point[id];
    return v;
}

}  // namespace nnv
