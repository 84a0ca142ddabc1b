#include "nnv/sat.hpp"

#include <cmath>
#include <cstdlib>

#include "nnv/errors.hpp"

namespace nnv {

void Cnf::add_clause(std::vector<int> lits) {
    if (lits.empty()) throw InvalidArgument("empty clause");
    for (int lit : lits) {
        if (lit == 0 || std::abs(lit) > num_vars)
            throw InvalidArgument("literal out of range");
    }
    clauses.push_back(std::move(lits));
}

namespace {

enum : signed char { kUnassigned = -1, kFalse = 0, kTrue = 1 };

bool lit_true(int lit, const std::vector<signed char>& a) {
    signed char v = a[std::abs(lit)];
    return v != kUnassigned && (v == kTrue) == (lit > 0);
}

bool lit_false(int lit, const std::vector<signed char>& a) {
    signed char v = a[std::abs(lit)];
    return v != kUnassigned && (v == kTrue) != (lit > 0);
}

// Unit propagation to fixpoint; returns false on an empty clause.
bool propagate(const Cnf& f, std::vector<signed char>& a) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& clause : f.clauses) {
            int unassigned = 0;
            int unit_lit = 0;
            bool satisfied = false;
            for (int lit : clause) {
                if (lit_true(lit, a)) {
                    satisfied = true;
                    break;
                }
                if (!lit_false(lit, a)) {
                    ++unassigned;
                    unit_lit = lit;
                }
            }
            if (satisfied) continue;
            if (unassigned == 0) return false;
            if (unassigned == 1) {
                a[std::abs(unit_lit)] = unit_lit > 0 ? kTrue : kFalse;
                changed = true;
            }
        }
    }
    return true;
}

// Assigns variables that appear with a single polarity in the not-yet
// satisfied clauses. Scans variables in ascending order.
void assign_pure_literals(const Cnf& f, std::vector<signed char>& a) {
    std::vector<signed char> seen_pos(f.num_vars + 1, 0), seen_neg(f.num_vars + 1, 0);
    for (const auto& clause : f.clauses) {
        bool satisfied = false;
        for (int lit : clause)
            if (lit_true(lit, a)) {
                satisfied = true;
                break;
            }
        if (satisfied) continue;
        for (int lit : clause) {
            if (lit_false(lit, a)) continue;
            (lit > 0 ? seen_pos : seen_neg)[std::abs(lit)] = 1;
        }
    }
    for (int v = 1; v <= f.num_vars; ++v) {
        if (a[v] != kUnassigned) continue;
        if (seen_pos[v] && !seen_neg[v]) a[v] = kTrue;
        else if (seen_neg[v] && !seen_pos[v]) a[v] = kFalse;
    }
}

bool dpll(const Cnf& f, std::vector<signed char>& a) {
    if (!propagate(f, a)) return false;
    assign_pure_literals(f, a);
    if (!propagate(f, a)) return false;

    int branch_var = 0;
    for (int v = 1; v <= f.num_vars; ++v) {
        if (a[v] == kUnassigned) {
            branch_var = v;
            break;
        }
    }
    if (branch_var == 0) return true;  // complete assignment

    for (signed char value : {kTrue, kFalse}) {
        std::vector<signed char> saved = a;
        a[branch_var] = value;
        if (dpll(f, a)) return true;
        a = std::move(saved);
    }
    return false;
}

}  // namespace

std::optional<std::vector<bool>> sat_solve(const Cnf& f) {
    std::vector<signed char> a(f.num_vars + 1, kUnassigned);
    if (!dpll(f, a)) return std::nullopt;
    std::vector<bool> model(f.num_vars + 1, false);
    for (int v = 1; v <= f.num_vars; ++v) model[v] = a[v] == kTrue;
    return model;
}

}  // namespace nnv
