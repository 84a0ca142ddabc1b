#pragma once

#include <vector>

#include "nnv/geometry.hpp"
#include "nnv/linear_model.hpp"

namespace nnv {

// The complement of a closed halfspace is open. It is closed off by this
// margin when emitted as a linear constraint, so that any feasible point
// violates the original inequality by a robust amount.
constexpr double kComplementMargin = 1e-6;

// Appends the linear inequalities of a convex set over the given variables.
// Rejects PolytopeComplement (nonconvex).
void add_set_constraint(LinearModel& m, const GeometricSet& s, const std::vector<VarId>& vars);

// Constrains vars to lie in the complement of `s`. Supported when the
// complement is convex: a Halfspace (reversed inequality, pushed inward by
// kComplementMargin) or a PolytopeComplement (the inner polytope's rows).
void add_complement_constraint(LinearModel& m, const GeometricSet& s,
                               const std::vector<VarId>& vars);

}  // namespace nnv
