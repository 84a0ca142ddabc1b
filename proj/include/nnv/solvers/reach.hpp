#pragma once

#include <vector>

#include "nnv/problem.hpp"

namespace nnv {

// Widest ReLU layer the exact-partition solvers will process; beyond this
// the 2^k orthant split is ruled out.
constexpr int kPartitionWidthCap = 10;

struct MaxSensConfig {
    double resolution = 1.0;
    bool tight = false;
};

// Exact layer-by-layer reachability: every ReLU layer splits each set into
// per-orthant pieces, so the output union is the true reachable set.
VerificationResult solve_exactreach(const VerificationProblem& p);

// Split-and-join over-approximation: the per-orthant pieces of each layer
// are merged back into one convex hull before the next layer.
VerificationResult solve_ai2(const VerificationProblem& p);

// Grid the input box into cells no wider than `resolution`, then push each
// cell through node-wise interval propagation.
VerificationResult solve_maxsens(const VerificationProblem& p, const MaxSensConfig& cfg = {});

// Single-cell interval propagation of a box through one layer (the
// MaxSens node rule; `tight` selects the endpoint form over the
// center-aligned form).
Hyperrectangle maxsens_forward_layer(const Layer& layer, const Hyperrectangle& input, bool tight);

// Axis grid with boundary remainder cells, in axis-major order.
std::vector<Hyperrectangle> partition_box(const Hyperrectangle& box, double resolution);

}  // namespace nnv
