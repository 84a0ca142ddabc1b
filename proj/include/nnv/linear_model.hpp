#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "nnv/linalg.hpp"

namespace nnv {

using VarId = int;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Feasibility tolerance of the LP/MILP kernel. Optimal points satisfy
// every constraint to within this slack; values this close to an integer
// are accepted as integral during branch and bound.
constexpr double kLpTol = 1e-7;

// Sparse linear expression over model variables plus a constant term.
// Kept ordered by variable id so models built the same way solve the
// same way, bit for bit.
struct LinExpr {
    std::map<VarId, double> coeffs;
    double constant = 0.0;

    LinExpr() = default;
    LinExpr(double c) : constant(c) {}  // NOLINT: implicit by design
    static LinExpr var(VarId id, double coeff = 1.0) {
        LinExpr e;
        e.coeffs[id] = coeff;
        return e;
    }

    LinExpr& operator+=(const LinExpr& o);
    LinExpr& operator-=(const LinExpr& o);
    LinExpr& operator*=(double s);
    friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
    friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
    friend LinExpr operator*(double s, LinExpr a) { return a *= s; }
    friend LinExpr operator*(LinExpr a, double s) { return a *= s; }
    friend LinExpr operator-(LinExpr a) { return a *= -1.0; }
};

enum class VarKind { Continuous, Binary };
enum class Relation { LE, EQ, GE };
enum class Sense { Minimize, Maximize, Feasibility };

struct Variable {
    VarId id;
    VarKind kind;
    double lower;
    double upper;
};

struct Constraint {
    std::map<VarId, double> coeffs;
    Relation rel;
    double rhs;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded };

struct SolveOutcome {
    SolveStatus status = SolveStatus::Infeasible;
    Vec point;     // indexed by VarId, valid when Optimal
    double value = 0.0;

    bool optimal() const { return status == SolveStatus::Optimal; }
};

// Builder for linear and mixed-integer linear programs. Mutable while a
// single encoding is assembled; solving does not modify the model.
class LinearModel {
public:
    VarId add_var(double lower = -kInf, double upper = kInf);
    VarId add_binary();

    void add_constraint(const LinExpr& lhs, Relation rel, double rhs);
    void add_le(const LinExpr& lhs, double rhs) { add_constraint(lhs, Relation::LE, rhs); }
    void add_ge(const LinExpr& lhs, double rhs) { add_constraint(lhs, Relation::GE, rhs); }
    void add_eq(const LinExpr& lhs, double rhs) { add_constraint(lhs, Relation::EQ, rhs); }

    void set_objective(Sense sense, const LinExpr& expr);
    void set_feasibility_objective() { set_objective(Sense::Feasibility, LinExpr()); }

    // Tightens one variable's bounds in place (used by branch and bound).
    void restrict_bounds(VarId id, double lower, double upper);

    int num_vars() const { return static_cast<int>(vars_.size()); }
    const std::vector<Variable>& variables() const { return vars_; }
    const std::vector<Constraint>& constraints() const { return cons_; }
    Sense objective_sense() const { return sense_; }
    const LinExpr& objective() const { return objective_; }
    bool has_binaries() const;

    double eval(const LinExpr& e, const Vec& point) const;

private:
    std::vector<Variable> vars_;
    std::vector<Constraint> cons_;
    Sense sense_ = Sense::Feasibility;
    LinExpr objective_;
};

// Two-phase dense simplex with Bland's anti-cycling rule. Binary
// variables are rejected; relax them first or use solve_milp.
SolveOutcome solve_lp(const LinearModel& model);

// Depth-first branch and bound over the binary variables. Branches on
// the binary whose relaxed value is closest to 1/2 (ties to the lowest
// id) and prunes with an absolute incumbent gap of kLpTol.
SolveOutcome solve_milp(const LinearModel& model);

}  // namespace nnv
