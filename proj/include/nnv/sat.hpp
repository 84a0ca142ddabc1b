#pragma once

#include <optional>
#include <vector>

namespace nnv {

// CNF formula over variables 1..num_vars. A literal +v asserts variable v,
// -v asserts its negation. Clauses must be nonempty at construction.
struct Cnf {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;

    void add_clause(std::vector<int> lits);
};

// DPLL with unit propagation and pure-literal elimination. Branches on the
// lowest-index unassigned variable, trying true first, so the returned
// model is deterministic. Returns nullopt when unsatisfiable.
std::optional<std::vector<bool>> sat_solve(const Cnf& f);

}  // namespace nnv
