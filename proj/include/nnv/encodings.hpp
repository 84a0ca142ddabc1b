#pragma once

#include <vector>

#include "nnv/bounds.hpp"
#include "nnv/linear_model.hpp"
#include "nnv/network.hpp"

namespace nnv {

// The six ways a ReLU network becomes linear (or mixed-integer linear)
// constraints. Pattern-parameterized kinds need a full activation pattern;
// bounds-parameterized kinds need pre-activation bounds for every layer.
// All encodings use the convention delta = 1 <=> node active.
enum class EncodingKind {
    StandardLP,          // exact on one activation pattern
    LinearRelaxedLP,     // pattern equalities only, sign constraints dropped
    SlackLP,             // pattern with slack variables measuring violation
    TriangularRelaxedLP, // convex envelope per node from bounds
    NaiveMIP,            // big-M integer encoding
    BoundedMIP,          // integer encoding tightened by bounds
};

struct EncodingSpec {
    EncodingKind kind;
    const ActivationPattern* pattern = nullptr;
    const LayerBounds* bounds = nullptr;
    double big_m = 0.0;  // NaiveMIP only; 0 means use default_big_m

    static EncodingSpec standard_lp(const ActivationPattern& p) {
        return {EncodingKind::StandardLP, &p, nullptr, 0.0};
    }
    static EncodingSpec linear_relaxed(const ActivationPattern& p) {
        return {EncodingKind::LinearRelaxedLP, &p, nullptr, 0.0};
    }
    static EncodingSpec slack_lp(const ActivationPattern& p) {
        return {EncodingKind::SlackLP, &p, nullptr, 0.0};
    }
    static EncodingSpec triangular(const LayerBounds& b) {
        return {EncodingKind::TriangularRelaxedLP, nullptr, &b, 0.0};
    }
    static EncodingSpec naive_mip(double m) { return {EncodingKind::NaiveMIP, nullptr, nullptr, m}; }
    static EncodingSpec bounded_mip(const LayerBounds& b) {
        return {EncodingKind::BoundedMIP, nullptr, &b, 0.0};
    }
};

// Variable handles produced by encode_network. `z[i]` holds the node
// variables of layer i (z[0] is the input). `delta[i]` holds the binary
// variables of layer i+1's ReLU nodes for the MIP kinds; `slack[i]`
// likewise for SlackLP. Id-layer slots stay empty.
struct EncodingHandles {
    std::vector<std::vector<VarId>> z;
    std::vector<std::vector<VarId>> delta;
    std::vector<std::vector<VarId>> slack;

    const std::vector<VarId>& input() const { return z.front(); }
    const std::vector<VarId>& output() const { return z.back(); }
};

EncodingHandles encode_network(LinearModel& m, const Network& net, const EncodingSpec& spec);

// Fallback big-M when the caller does not supply one.
double default_big_m(const LayerBounds& bounds);

// Two-line band around an undetermined ReLU node:
//   slope * zhat <= z <= slope * (zhat - pre_low).
// Consumed analytically; never emitted into a model.
struct ParallelRelaxation {
    double slope;
};
ParallelRelaxation parallel_relaxation(double pre_low, double pre_high);

// Slope of the relaxed ReLU over [l, u]: 0 when saturated off, 1 when on,
// u / (u - l) in between.
double relaxed_relu_slope(double l, double u);

// Objective builders.
void objective_linear(LinearModel& m, const std::vector<VarId>& vars, const Vec& c, double d,
                      Sense sense);
// Epigraph of the infinity norm of (vars - center); returns the bound
// variable, which the model minimizes.
VarId objective_max_disturbance(LinearModel& m, const std::vector<VarId>& vars, const Vec& center);
void objective_sum(LinearModel& m, const std::vector<std::vector<VarId>>& groups, Sense sense);

}  // namespace nnv
