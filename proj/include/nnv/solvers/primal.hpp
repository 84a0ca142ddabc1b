#pragma once

#include <optional>

#include "nnv/problem.hpp"

namespace nnv {

struct NSVerifyConfig {
    // Big-M for the integer encoding; unset picks
    // max(1e4, 10 * largest absolute pre-activation bound).
    std::optional<double> m;
};

struct ILPConfig {
    bool iterative = true;
};

// Complete MILP falsification: big-M encoding, input and complemented
// output constraints, feasibility objective. Any feasible point is a
// counter example.
VerificationResult solve_nsverify(const VerificationProblem& p, const NSVerifyConfig& cfg = {});

// Bounds-tightened MILP that minimizes the input disturbance needed to
// leave the output set, then compares it against the input radius.
VerificationResult solve_mipverify(const VerificationProblem& p);

// Linearizes the network on the activation pattern of the input center and
// minimizes the disturbance over that single segment. The iterative mode
// starts from the relaxed equalities and adds violated sign constraints
// one at a time.
VerificationResult solve_ilp(const VerificationProblem& p, const ILPConfig& cfg = {});

}  // namespace nnv
