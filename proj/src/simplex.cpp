#include <algorithm>
#include <cmath>
#include <vector>

#include "nnv/errors.hpp"
#include "nnv/linear_model.hpp"

namespace nnv {
namespace {

constexpr double kPivotTol = 1e-9;

// How an original model variable maps onto the nonnegative standard-form
// columns of the tableau.
struct VarMap {
    enum Kind { Fixed, Shifted, Mirrored, Split } kind;
    double offset = 0.0;  // Fixed: the value; Shifted: lower; Mirrored: upper
    int col = -1;         // primary column
    int col_neg = -1;     // negative part for Split
};

struct Tableau {
    Mat a;                   // m x n, current basis coordinates
    Vec b;                   // m, kept nonnegative
    std::vector<int> basis;  // basic column per row
    int num_structural = 0;  // columns that are not artificial
    int first_artificial = 0;

    int rows() const { return static_cast<int>(a.rows()); }
    int cols() const { return static_cast<int>(a.cols()); }

    void pivot(int row, int col) {
        const double pivot_value = a(row, col);
        a.row(row) /= pivot_value;
        b[row] /= pivot_value;
        b[row] = std::max(b[row], 0.0);
        a(row, col) = 1.0;
        for (int i = 0; i < rows(); ++i) {
            if (i == row) continue;
            double factor = a(i, col);
            if (factor == 0.0) continue;
            a.row(i) -= factor * a.row(row);
            b[i] -= factor * b[row];
            a(i, col) = 0.0;
            if (b[i] < 0.0 && b[i] > -kPivotTol) b[i] = 0.0;
        }
        basis[row] = col;
    }
};

// Bland's rule: entering = lowest-index column with negative reduced cost;
// leaving = lowest basic index among the minimum-ratio rows.
// Returns false when optimal or unbounded.
bool simplex_iterate(Tableau& t, Vec& reduced, bool allow_artificial, bool& unbounded) {
    unbounded = false;
    int limit = allow_artificial ? t.cols() : t.num_structural;
    int enter = -1;
    for (int j = 0; j < limit; ++j) {
        if (reduced[j] < -kPivotTol) {
            enter = j;
            break;
        }
    }
    if (enter < 0) return false;

    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < t.rows(); ++i) {
        if (t.a(i, enter) <= kPivotTol) continue;
        double ratio = t.b[i] / t.a(i, enter);
        if (leave < 0 || ratio < best_ratio - kPivotTol ||
            (ratio < best_ratio + kPivotTol && t.basis[i] < t.basis[leave])) {
            leave = i;
            best_ratio = ratio;
        }
    }
    if (leave < 0) {
        unbounded = true;
        return false;
    }

    double step = reduced[enter];
    t.pivot(leave, enter);
    reduced -= step * t.a.row(leave).transpose();
    reduced[enter] = 0.0;
    return true;
}

void run_simplex(Tableau& t, Vec& reduced, bool allow_artificial, bool& unbounded) {
    long iteration_cap = 20000L + 200L * (t.rows() + t.cols());
    for (long it = 0; it < iteration_cap; ++it) {
        if (!simplex_iterate(t, reduced, allow_artificial, unbounded)) return;
    }
    throw Error("simplex iteration limit exceeded");
}

Vec reduced_costs(const Tableau& t, const Vec& cost) {
    Vec reduced = cost;
    for (int i = 0; i < t.rows(); ++i) {
        double cb = cost[t.basis[i]];
        if (cb == 0.0) continue;
        reduced -= cb * t.a.row(i).transpose();
    }
    return reduced;
}

double basis_objective(const Tableau& t, const Vec& cost) {
    double obj = 0.0;
    for (int i = 0; i < t.rows(); ++i) obj += cost[t.basis[i]] * t.b[i];
    return obj;
}

SolveOutcome solve_lp_impl(const LinearModel& model) {
    const auto& vars = model.variables();
    const int n_orig = model.num_vars();

    // Map every variable to nonnegative standard-form columns.
    std::vector<VarMap> var_map(n_orig);
    int n_cols = 0;
    std::vector<std::pair<int, double>> upper_rows;  // column <= value
    for (int j = 0; j < n_orig; ++j) {
        const Variable& v = vars[j];
        const bool lo = std::isfinite(v.lower), hi = std::isfinite(v.upper);
        if (lo && hi && v.upper - v.lower <= 0.0) {
            var_map[j] = {VarMap::Fixed, v.lower, -1, -1};
        } else if (lo) {
            var_map[j] = {VarMap::Shifted, v.lower, n_cols++, -1};
            if (hi) upper_rows.emplace_back(var_map[j].col, v.upper - v.lower);
        } else if (hi) {
            var_map[j] = {VarMap::Mirrored, v.upper, n_cols++, -1};
        } else {
            var_map[j] = {VarMap::Split, 0.0, n_cols, n_cols + 1};
            n_cols += 2;
        }
    }

    // Rewrite rows over the standard-form columns.
    struct Row {
        Vec coeffs;
        Relation rel;
        double rhs;
    };
    std::vector<Row> rows;
    rows.reserve(model.constraints().size() + upper_rows.size());
    for (const Constraint& c : model.constraints()) {
        Row r{Vec::Zero(n_cols), c.rel, c.rhs};
        for (const auto& [id, coeff] : c.coeffs) {
            const VarMap& vm = var_map[id];
            switch (vm.kind) {
                case VarMap::Fixed: r.rhs -= coeff * vm.offset; break;
                case VarMap::Shifted:
                    r.coeffs[vm.col] += coeff;
                    r.rhs -= coeff * vm.offset;
                    break;
                case VarMap::Mirrored:
                    r.coeffs[vm.col] -= coeff;
                    r.rhs -= coeff * vm.offset;
                    break;
                case VarMap::Split:
                    r.coeffs[vm.col] += coeff;
                    r.coeffs[vm.col_neg] -= coeff;
                    break;
            }
        }
        rows.push_back(std::move(r));
    }
    for (const auto& [col, cap] : upper_rows) {
        Row r{Vec::Zero(n_cols), Relation::LE, cap};
        r.coeffs[col] = 1.0;
        rows.push_back(std::move(r));
    }

    // Normalize to rhs >= 0, then add slack/surplus and artificial columns.
    const int m = static_cast<int>(rows.size());
    int n_slack = 0, n_artificial = 0;
    for (Row& r : rows) {
        if (r.rhs < 0.0) {
            r.coeffs = -r.coeffs;
            r.rhs = -r.rhs;
            r.rel = r.rel == Relation::LE ? Relation::GE
                  : r.rel == Relation::GE ? Relation::LE
                                          : Relation::EQ;
        }
        if (r.rel != Relation::EQ) ++n_slack;
        if (r.rel != Relation::LE) ++n_artificial;
    }

    Tableau t;
    t.num_structural = n_cols + n_slack;
    t.first_artificial = t.num_structural;
    const int total = t.num_structural + n_artificial;
    t.a = Mat::Zero(m, total);
    t.b = Vec::Zero(m);
    t.basis.assign(m, -1);
    int slack_at = n_cols, artificial_at = t.first_artificial;
    for (int i = 0; i < m; ++i) {
        t.a.row(i).head(n_cols) = rows[i].coeffs.transpose();
        t.b[i] = rows[i].rhs;
        if (rows[i].rel == Relation::LE) {
            t.a(i, slack_at) = 1.0;
            t.basis[i] = slack_at++;
        } else if (rows[i].rel == Relation::GE) {
            t.a(i, slack_at) = -1.0;
            ++slack_at;
            t.a(i, artificial_at) = 1.0;
            t.basis[i] = artificial_at++;
        } else {
            t.a(i, artificial_at) = 1.0;
            t.basis[i] = artificial_at++;
        }
    }

    bool unbounded = false;

    // Phase one: drive the artificials to zero.
    if (n_artificial > 0) {
        Vec cost1 = Vec::Zero(total);
        cost1.tail(n_artificial).setOnes();
        Vec reduced = reduced_costs(t, cost1);
        run_simplex(t, reduced, true, unbounded);
        if (basis_objective(t, cost1) > kLpTol) return {SolveStatus::Infeasible, {}, 0.0};
        // Pivot remaining artificials out of the basis where possible.
        for (int i = 0; i < t.rows(); ++i) {
            if (t.basis[i] < t.first_artificial) continue;
            int col = -1;
            for (int j = 0; j < t.num_structural; ++j) {
                if (std::abs(t.a(i, j)) > kPivotTol) {
                    col = j;
                    break;
                }
            }
            if (col >= 0) t.pivot(i, col);
            // else: redundant zero row; the artificial stays basic at zero.
        }
    }

    // Phase two: optimize the real objective over the structural columns.
    Vec cost2 = Vec::Zero(total);
    const double sign = model.objective_sense() == Sense::Maximize ? -1.0 : 1.0;
    if (model.objective_sense() != Sense::Feasibility) {
        for (const auto& [id, coeff] : model.objective().coeffs) {
            const VarMap& vm = var_map[id];
            switch (vm.kind) {
                case VarMap::Fixed: break;
                case VarMap::Shifted: cost2[vm.col] += sign * coeff; break;
                case VarMap::Mirrored: cost2[vm.col] -= sign * coeff; break;
                case VarMap::Split:
                    cost2[vm.col] += sign * coeff;
                    cost2[vm.col_neg] -= sign * coeff;
                    break;
            }
        }
    }
    Vec reduced = reduced_costs(t, cost2);
    run_simplex(t, reduced, false, unbounded);
    if (unbounded) return {SolveStatus::Unbounded, {}, 0.0};

    // Recover the point in original variable space.
    Vec std_point = Vec::Zero(total);
    for (int i = 0; i < t.rows(); ++i) std_point[t.basis[i]] = t.b[i];
    Vec point = Vec::Zero(n_orig);
    for (int j = 0; j < n_orig; ++j) {
        const VarMap& vm = var_map[j];
        switch (vm.kind) {
            case VarMap::Fixed: point[j] = vm.offset; break;
            case VarMap::Shifted: point[j] = vm.offset + std_point[vm.col]; break;
            case VarMap::Mirrored: point[j] = vm.offset - std_point[vm.col]; break;
            case VarMap::Split: point[j] = std_point[vm.col] - std_point[vm.col_neg]; break;
        }
    }
    double value = model.objective_sense() == Sense::Feasibility
                       ? 0.0
                       : model.eval(model.objective(), point);
    return {SolveStatus::Optimal, std::move(point), value};
}

}  // namespace

SolveOutcome solve_lp(const LinearModel& model) {
    if (model.has_binaries())
        throw InvalidArgument("solve_lp cannot handle binary variables; use solve_milp");
    return solve_lp_impl(model);
}

namespace {

struct BranchState {
    const LinearModel* base;
    std::vector<VarId> binaries;
    bool maximize;
    bool has_incumbent = false;
    double incumbent_value = 0.0;
    Vec incumbent_point;

    bool beats_incumbent(double bound) const {
        if (!has_incumbent) return true;
        return maximize ? bound > incumbent_value + kLpTol
                        : bound < incumbent_value - kLpTol;
    }
};

void branch(BranchState& st, LinearModel node) {
    SolveOutcome relax = solve_lp_impl(node);
    if (relax.status == SolveStatus::Infeasible) return;
    if (relax.status == SolveStatus::Unbounded)
        throw Error("unbounded LP relaxation in branch and bound");
    if (!st.beats_incumbent(relax.value)) return;

    // Branch on the binary whose relaxed value is closest to 1/2.
    VarId pick = -1;
    double best_dist = 0.5 - kLpTol;
    for (VarId id : st.binaries) {
        const Variable& v = node.variables()[id];
        if (v.upper - v.lower <= 0.0) continue;  // already fixed
        double frac = relax.point[id];
        double dist = std::abs(frac - 0.5);
        if (std::min(frac, 1.0 - frac) <= kLpTol) continue;  // integral
        if (dist < best_dist) {
            best_dist = dist;
            pick = id;
        }
    }
    if (pick < 0) {
        st.has_incumbent = true;
        st.incumbent_value = relax.value;
        st.incumbent_point = relax.point;
        for (VarId id : st.binaries)
            st.incumbent_point[id] = std::round(st.incumbent_point[id]);
        return;
    }

    int first = relax.point[pick] >= 0.5 ? 1 : 0;
    for (int round = 0; round < 2; ++round) {
        int fix = round == 0 ? first : 1 - first;
        LinearModel child = node;
        child.restrict_bounds(pick, fix, fix);
        branch(st, std::move(child));
    }
}

}  // namespace

SolveOutcome solve_milp(const LinearModel& model) {
    if (!model.has_binaries()) return solve_lp_impl(model);

    BranchState st;
    st.base = &model;
    st.maximize = model.objective_sense() == Sense::Maximize;
    for (const Variable& v : model.variables())
        if (v.kind == VarKind::Binary) st.binaries.push_back(v.id);

    branch(st, model);
    if (!st.has_incumbent) return {SolveStatus::Infeasible, {}, 0.0};
    double value = model.objective_sense() == Sense::Feasibility
                       ? 0.0
                       : model.eval(model.objective(), st.incumbent_point);
    return {SolveStatus::Optimal, std::move(st.incumbent_point), value};
}

}  // namespace nnv
