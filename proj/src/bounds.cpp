#include "nnv/bounds.hpp"

#include "nnv/errors.hpp"

namespace nnv {

std::pair<Mat, Mat> interval_map(const Mat& W, const Mat& l, const Mat& u) {
    if (W.cols() != l.rows() || l.rows() != u.rows() || l.cols() != u.cols())
        throw InvalidArgument("interval_map shape mismatch");
    Mat wp = pos_part(W), wn = neg_part(W);
    return {wp * l + wn * u, wp * u + wn * l};
}

std::pair<Vec, Vec> interval_map(const Mat& W, const Vec& l, const Vec& u) {
    auto [lo, hi] = interval_map(W, Mat(l), Mat(u));
    return {Vec(lo.col(0)), Vec(hi.col(0))};
}

namespace {

Vec apply_activation(const Layer& layer, const Vec& v) {
    return layer.is_relu() ? relu(v) : v;
}

}  // namespace

LayerBounds get_bounds(const Network& net, const Hyperrectangle& input) {
    if (input.dim() != net.input_dim())
        throw InvalidArgument("bounds input dimension mismatch");
    LayerBounds out;
    out.post.push_back(input);
    for (const Layer& layer : net.layers) {
        const Hyperrectangle& prev = out.post.back();
        auto [lo, hi] = interval_map(layer.weights, prev.low(), prev.high());
        lo += layer.bias;
        hi += layer.bias;
        out.pre.push_back(Hyperrectangle::from_bounds(lo, hi));
        out.post.push_back(Hyperrectangle::from_bounds(apply_activation(layer, lo),
                                                       apply_activation(layer, hi)));
    }
    return out;
}

LayerBounds get_bounds(const VerificationProblem& p) {
    return get_bounds(p.network, bounding_box(p.input));
}

NodeClasses classify_nodes(const Vec& pre_low, const Vec& pre_high) {
    NodeClasses out;
    out.phase.reserve(pre_low.size());
    for (int j = 0; j < pre_low.size(); ++j) {
        if (pre_high[j] <= 0.0) out.phase.push_back(NodePhase::Inactive);
        else if (pre_low[j] >= 0.0) out.phase.push_back(NodePhase::Active);
        else out.phase.push_back(NodePhase::Undetermined);
    }
    return out;
}

NodeClasses classify_nodes(const LayerBounds& bounds, int layer) {
    const Hyperrectangle& pre = bounds.pre_activation(layer);
    return classify_nodes(pre.low(), pre.high());
}

Mat get_gradient(const Network& net, const Vec& x) {
    if (x.size() != net.input_dim()) throw InvalidArgument("gradient input size mismatch");
    Vec z = x;
    Mat gradient = Mat::Identity(x.size(), x.size());
    for (const Layer& layer : net.layers) {
        Vec zhat = layer.affine(z);
        Mat g = layer.weights * gradient;
        if (layer.is_relu()) {
            for (int j = 0; j < zhat.size(); ++j)
                if (zhat[j] <= 0.0) g.row(j).setZero();
        }
        gradient = std::move(g);
        z = apply_activation(layer, zhat);
    }
    return gradient;
}

GradientBounds gradient_bounds_from_masks(const Network& net, const std::vector<Vec>& mask_low,
                                          const std::vector<Vec>& mask_up) {
    const int n_in = net.input_dim();
    Mat lg = Mat::Identity(n_in, n_in);
    Mat ug = Mat::Identity(n_in, n_in);
    for (int i = 0; i < net.num_layers(); ++i) {
        auto [lg_hat, ug_hat] = interval_map(net.layers[i].weights, lg, ug);
        const Vec& la = mask_low[i];
        const Vec& ua = mask_up[i];
        lg = la.asDiagonal() * pos_part(lg_hat) + ua.asDiagonal() * neg_part(lg_hat);
        ug = la.asDiagonal() * neg_part(ug_hat) + ua.asDiagonal() * pos_part(ug_hat);
    }
    GradientBounds out;
    out.lower = std::move(lg);
    out.upper = std::move(ug);
    out.mask_low = mask_low;
    out.mask_up = mask_up;
    return out;
}

GradientBounds get_gradient_bounds(const Network& net, const GeometricSet& input) {
    LayerBounds bounds = get_bounds(net, bounding_box(input));
    std::vector<Vec> mask_low, mask_up;
    for (int i = 0; i < net.num_layers(); ++i) {
        const Layer& layer = net.layers[i];
        Vec la = Vec::Ones(layer.out_dim()), ua = Vec::Ones(layer.out_dim());
        if (layer.is_relu()) {
            NodeClasses cls = classify_nodes(bounds, i);
            for (int j = 0; j < layer.out_dim(); ++j) {
                la[j] = cls.active(j) ? 1.0 : 0.0;
                ua[j] = cls.inactive(j) ? 0.0 : 1.0;
            }
        }
        mask_low.push_back(std::move(la));
        mask_up.push_back(std::move(ua));
    }
    return gradient_bounds_from_masks(net, mask_low, mask_up);
}

}  // namespace nnv
