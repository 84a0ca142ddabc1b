#pragma once

#include <utility>
#include <vector>

#include "nnv/geometry.hpp"
#include "nnv/network.hpp"
#include "nnv/problem.hpp"

namespace nnv {

// Per-layer value bounds. `post[0]` is the input box; `post[i]` bounds the
// post-activation values of layer i and `pre[i-1]` its pre-activation
// values, both for i in 1..n.
struct LayerBounds {
    std::vector<Hyperrectangle> post;
    std::vector<Hyperrectangle> pre;

    const Hyperrectangle& input() const { return post.front(); }
    const Hyperrectangle& output() const { return post.back(); }
    const Hyperrectangle& pre_activation(int layer) const { return pre[layer]; }
};

enum class NodePhase { Active, Inactive, Undetermined };

struct NodeClasses {
    std::vector<NodePhase> phase;

    bool active(int j) const { return phase[j] == NodePhase::Active; }
    bool inactive(int j) const { return phase[j] == NodePhase::Inactive; }
    bool undetermined(int j) const { return phase[j] == NodePhase::Undetermined; }
};

// Bounds on the network Jacobian dy/dx over an input set, with the
// per-layer activation-gradient masks that produced them.
struct GradientBounds {
    Mat lower;  // k_n x k_0
    Mat upper;
    std::vector<Vec> mask_low;  // per layer, diagonal in {0,1}
    std::vector<Vec> mask_up;
};

// Interval image of a linear map: for x in [l, u], W x lies in the result.
std::pair<Mat, Mat> interval_map(const Mat& W, const Mat& l, const Mat& u);
std::pair<Vec, Vec> interval_map(const Mat& W, const Vec& l, const Vec& u);

// Node-wise bounds by layer-by-layer interval arithmetic, seeded with the
// bounding box of the input set.
LayerBounds get_bounds(const Network& net, const Hyperrectangle& input);
LayerBounds get_bounds(const VerificationProblem& p);

// Classification of a ReLU layer's nodes from its pre-activation bounds.
// Boundary values resolve as written: lower >= 0 is active, upper <= 0 is
// inactive (so an exactly-zero node is inactive).
NodeClasses classify_nodes(const LayerBounds& bounds, int layer);
NodeClasses classify_nodes(const Vec& pre_low, const Vec& pre_high);

// Jacobian at a point, by the chain rule along the forward trace.
// At a ReLU kink the inactive branch is taken (gradient zero).
Mat get_gradient(const Network& net, const Vec& x);

// Jacobian bounds over an input set via interval arithmetic.
GradientBounds get_gradient_bounds(const Network& net, const GeometricSet& input);
// Same recursion from explicit activation-gradient masks.
GradientBounds gradient_bounds_from_masks(const Network& net, const std::vector<Vec>& mask_low,
                                          const std::vector<Vec>& mask_up);

}  // namespace nnv
