#include "nnv/encodings.hpp"

#include <algorithm>
#include <cmath>

#include "nnv/errors.hpp"

namespace nnv {

namespace {

LinExpr affine_expr(const Layer& layer, int node, const std::vector<VarId>& z_prev) {
    LinExpr e(layer.bias[node]);
    for (int k = 0; k < layer.in_dim(); ++k)
        if (layer.weights(node, k) != 0.0) e += LinExpr::var(z_prev[k], layer.weights(node, k));
    return e;
}

void check_spec(const Network& net, const EncodingSpec& spec) {
    const bool needs_pattern = spec.kind == EncodingKind::StandardLP ||
                               spec.kind == EncodingKind::LinearRelaxedLP ||
                               spec.kind == EncodingKind::SlackLP;
    const bool needs_bounds = spec.kind == EncodingKind::TriangularRelaxedLP ||
                              spec.kind == EncodingKind::BoundedMIP;
    if (needs_pattern) {
        if (!spec.pattern || static_cast<int>(spec.pattern->on.size()) != net.num_layers())
            throw InvalidArgument("encoding needs a full activation pattern");
    }
    if (needs_bounds) {
        if (!spec.bounds || static_cast<int>(spec.bounds->pre.size()) != net.num_layers())
            throw InvalidArgument("encoding needs bounds for every layer");
        for (const Hyperrectangle& r : spec.bounds->pre)
            if (!all_finite(r.center) || !all_finite(r.radius))
                throw InvalidArgument("encoding needs finite bounds");
    }
}

}  // namespace

double default_big_m(const LayerBounds& bounds) {
    double peak = 0.0;
    for (const Hyperrectangle& r : bounds.pre)
        peak = std::max({peak, r.low().cwiseAbs().maxCoeff(), r.high().cwiseAbs().maxCoeff()});
    return std::max(1e4, 10.0 * peak);
}

EncodingHandles encode_network(LinearModel& m, const Network& net, const EncodingSpec& spec) {
    check_spec(net, spec);
    EncodingHandles h;
    h.z.resize(net.num_layers() + 1);
    h.delta.resize(net.num_layers());
    h.slack.resize(net.num_layers());

    for (int k = 0; k < net.input_dim(); ++k) h.z[0].push_back(m.add_var());

    if (spec.kind == EncodingKind::NaiveMIP && !(spec.big_m > 0.0))
        throw InvalidArgument("big-M encoding needs a positive m");
    const double big_m = spec.big_m;

    for (int i = 0; i < net.num_layers(); ++i) {
        const Layer& layer = net.layers[i];
        for (int j = 0; j < layer.out_dim(); ++j) h.z[i + 1].push_back(m.add_var());

        NodeClasses cls;
        if (spec.bounds) {
            const Hyperrectangle& pre = spec.bounds->pre_activation(i);
            cls = classify_nodes(pre.low(), pre.high());
        }

        for (int j = 0; j < layer.out_dim(); ++j) {
            LinExpr zhat = affine_expr(layer, j, h.z[i]);
            LinExpr zv = LinExpr::var(h.z[i + 1][j]);
            if (!layer.is_relu()) {
                m.add_eq(zv - zhat, 0.0);
                continue;
            }
            switch (spec.kind) {
                case EncodingKind::StandardLP: {
                    if (spec.pattern->at(i, j)) {
                        m.add_ge(zhat, 0.0);
                        m.add_eq(zv - zhat, 0.0);
                    } else {
                        m.add_le(zhat, 0.0);
                        m.add_eq(zv, 0.0);
                    }
                    break;
                }
                case EncodingKind::LinearRelaxedLP: {
                    if (spec.pattern->at(i, j)) m.add_eq(zv - zhat, 0.0);
                    else m.add_eq(zv, 0.0);
                    break;
                }
                case EncodingKind::SlackLP: {
                    VarId s = m.add_var();
                    h.slack[i].push_back(s);
                    LinExpr sv = LinExpr::var(s);
                    if (spec.pattern->at(i, j)) {
                        m.add_eq(zv - zhat - sv, 0.0);
                        m.add_ge(zhat + sv, 0.0);
                    } else {
                        m.add_eq(zv - sv, 0.0);
                        m.add_le(zhat - sv, 0.0);
                    }
                    break;
                }
                case EncodingKind::TriangularRelaxedLP: {
                    if (cls.active(j)) {
                        m.add_eq(zv - zhat, 0.0);
                    } else if (cls.inactive(j)) {
                        m.add_eq(zv, 0.0);
                    } else {
                        const Hyperrectangle& pre = spec.bounds->pre_activation(i);
                        double lo = pre.low()[j], hi = pre.high()[j];
                        double slope = hi / (hi - lo);
                        m.add_ge(zv - zhat, 0.0);
                        m.add_ge(zv, 0.0);
                        m.add_le(zv - slope * zhat, -slope * lo);
                    }
                    break;
                }
                case EncodingKind::NaiveMIP: {
                    VarId delta = m.add_binary();
                    h.delta[i].push_back(delta);
                    LinExpr dv = LinExpr::var(delta);
                    m.add_ge(zv - zhat, 0.0);
                    m.add_ge(zv, 0.0);
                    m.add_le(zv - zhat + big_m * dv, big_m);
                    m.add_le(zv - big_m * dv, 0.0);
                    break;
                }
                case EncodingKind::BoundedMIP: {
                    if (cls.active(j)) {
                        m.add_eq(zv - zhat, 0.0);
                    } else if (cls.inactive(j)) {
                        m.add_eq(zv, 0.0);
                    } else {
                        const Hyperrectangle& pre = spec.bounds->pre_activation(i);
                        double lo = pre.low()[j], hi = pre.high()[j];
                        VarId delta = m.add_binary();
                        h.delta[i].push_back(delta);
                        LinExpr dv = LinExpr::var(delta);
                        m.add_ge(zv - zhat, 0.0);
                        m.add_ge(zv, 0.0);
                        m.add_le(zv - hi * dv, 0.0);
                        m.add_le(zv - zhat - lo * dv, -lo);
                    }
                    break;
                }
            }
        }
    }
    return h;
}

ParallelRelaxation parallel_relaxation(double pre_low, double pre_high) {
    if (!(pre_low < 0.0 && 0.0 < pre_high))
        throw InvalidArgument("parallel relaxation needs an undetermined node");
    return {pre_high / (pre_high - pre_low)};
}

double relaxed_relu_slope(double l, double u) {
    if (u <= 0.0) return 0.0;
    if (l >= 0.0) return 1.0;
    return u / (u - l);
}

void objective_linear(LinearModel& m, const std::vector<VarId>& vars, const Vec& c, double d,
                      Sense sense) {
    if (static_cast<int>(vars.size()) != c.size())
        throw InvalidArgument("linear objective size mismatch");
    LinExpr obj(-d);
    for (size_t i = 0; i < vars.size(); ++i)
        if (c[i] != 0.0) obj += LinExpr::var(vars[i], c[i]);
    m.set_objective(sense, obj);
}

VarId objective_max_disturbance(LinearModel& m, const std::vector<VarId>& vars,
                                const Vec& center) {
    if (static_cast<int>(vars.size()) != center.size())
        throw InvalidArgument("disturbance objective size mismatch");
    VarId t = m.add_var(0.0, kInf);
    for (size_t j = 0; j < vars.size(); ++j) {
        m.add_ge(LinExpr::var(t) - LinExpr::var(vars[j]), -center[j]);
        m.add_ge(LinExpr::var(t) + LinExpr::var(vars[j]), center[j]);
    }
    m.set_objective(Sense::Minimize, LinExpr::var(t));
    return t;
}

void objective_sum(LinearModel& m, const std::vector<std::vector<VarId>>& groups, Sense sense) {
    LinExpr obj;
    for (const auto& group : groups)
        for (VarId id : group) obj += LinExpr::var(id);
    m.set_objective(sense, obj);
}

}  // namespace nnv
