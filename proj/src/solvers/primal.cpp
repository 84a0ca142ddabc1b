#include "nnv/solvers/primal.hpp"

#include "nnv/bounds.hpp"
#include "nnv/encodings.hpp"
#include "nnv/errors.hpp"
#include "nnv/model_sets.hpp"

namespace nnv {

namespace {

Vec extract(const SolveOutcome& out, const std::vector<VarId>& ids) {
    Vec v(ids.size());
    for (size_t i = 0; i < ids.size(); ++i) v[i] = out.point[ids[i]];
    return v;
}

const Hyperrectangle& require_box_input(const VerificationProblem& p) {
    const auto* box = std::get_if<Hyperrectangle>(&p.input);
    if (!box) throw Unsupported("this solver needs a hyperrectangle input set");
    return *box;
}

}  // namespace

VerificationResult solve_nsverify(const VerificationProblem& p, const NSVerifyConfig& cfg) {
    double big_m = cfg.m.value_or(default_big_m(get_bounds(p)));
    if (big_m <= 0.0) throw InvalidArgument("big-M must be positive");

    LinearModel model;
    EncodingHandles h = encode_network(model, p.network, EncodingSpec::naive_mip(big_m));
    add_set_constraint(model, p.input, h.input());
    add_complement_constraint(model, p.output, h.output());
    model.set_feasibility_objective();

    SolveOutcome out = solve_milp(model);
    if (out.optimal()) return VerificationResult::with_counter_example(extract(out, h.input()));
    if (out.status == SolveStatus::Infeasible) return VerificationResult::basic(Status::Holds);
    return VerificationResult::basic(Status::Unknown);
}

VerificationResult solve_mipverify(const VerificationProblem& p) {
    const Hyperrectangle& input = require_box_input(p);
    LayerBounds bounds = get_bounds(p);

    LinearModel model;
    EncodingHandles h = encode_network(model, p.network, EncodingSpec::bounded_mip(bounds));
    add_complement_constraint(model, p.output, h.output());
    objective_max_disturbance(model, h.input(), input.center);

    SolveOutcome out = solve_milp(model);
    if (out.status == SolveStatus::Infeasible)
        return VerificationResult::basic(Status::Holds);
    if (!out.optimal()) return VerificationResult::basic(Status::Unknown);
    if (out.value >= input.max_radius())
        return VerificationResult::adversarial(Status::Holds, out.value);
    return VerificationResult::adversarial(Status::Violated, out.value);
}

namespace {

VerificationResult interpret_disturbance(double o, const Hyperrectangle& input) {
    if (o >= input.max_radius()) return VerificationResult::adversarial(Status::Holds, o);
    return VerificationResult::adversarial(Status::Violated, o);
}

// Node values along the pattern-linearized network: active nodes copy the
// affine value, inactive nodes emit zero.
std::vector<Vec> segment_trace(const Network& net, const ActivationPattern& pattern,
                               const Vec& x) {
    std::vector<Vec> zs{x};
    for (int i = 0; i < net.num_layers(); ++i) {
        Vec zhat = net.layers[i].affine(zs.back());
        if (net.layers[i].is_relu())
            for (int j = 0; j < zhat.size(); ++j)
                if (!pattern.at(i, j)) zhat[j] = 0.0;
        zs.push_back(std::move(zhat));
    }
    return zs;
}

}  // namespace

VerificationResult solve_ilp(const VerificationProblem& p, const ILPConfig& cfg) {
    const Hyperrectangle& input = require_box_input(p);
    ActivationPattern pattern = get_activation(p.network, input.center);

    if (!cfg.iterative) {
        LinearModel model;
        EncodingHandles h =
            encode_network(model, p.network, EncodingSpec::standard_lp(pattern));
        add_complement_constraint(model, p.output, h.output());
        objective_max_disturbance(model, h.input(), input.center);
        SolveOutcome out = solve_lp(model);
        if (!out.optimal()) return VerificationResult::basic(Status::Unknown);
        return interpret_disturbance(out.value, input);
    }

    LinearModel model;
    EncodingHandles h =
        encode_network(model, p.network, EncodingSpec::linear_relaxed(pattern));
    add_complement_constraint(model, p.output, h.output());
    objective_max_disturbance(model, h.input(), input.center);

    std::vector<std::vector<bool>> constrained(pattern.on.size());
    for (size_t i = 0; i < pattern.on.size(); ++i)
        constrained[i].assign(pattern.on[i].size(), false);

    // Each pass adds one violated sign constraint; at most one per node.
    const int max_rounds = p.network.num_relu_nodes() + 1;
    for (int round = 0; round < max_rounds; ++round) {
        SolveOutcome out = solve_lp(model);
        if (!out.optimal()) return VerificationResult::basic(Status::Unknown);
        Vec x = extract(out, h.input());
        std::vector<Vec> trace = segment_trace(p.network, pattern, x);

        int bad_layer = -1, bad_node = -1;
        for (int i = 0; i < p.network.num_layers() && bad_layer < 0; ++i) {
            if (!p.network.layers[i].is_relu()) continue;
            Vec zhat = p.network.layers[i].affine(trace[i]);
            for (int j = 0; j < zhat.size(); ++j) {
                if (constrained[i][j]) continue;
                double signed_value = (pattern.at(i, j) ? 1.0 : -1.0) * zhat[j];
                if (signed_value < -1e-9) {
                    bad_layer = i;
                    bad_node = j;
                    break;
                }
            }
        }
        if (bad_layer < 0) return interpret_disturbance(out.value, input);

        const Layer& layer = p.network.layers[bad_layer];
        LinExpr zhat_expr(layer.bias[bad_node]);
        for (int k = 0; k < layer.in_dim(); ++k)
            if (layer.weights(bad_node, k) != 0.0)
                zhat_expr += LinExpr::var(h.z[bad_layer][k], layer.weights(bad_node, k));
        if (pattern.at(bad_layer, bad_node)) model.add_ge(zhat_expr, 0.0);
        else model.add_le(zhat_expr, 0.0);
        constrained[bad_layer][bad_node] = true;
    }
    throw Error("iterative constraint loop exceeded the node budget");
}

}  // namespace nnv
