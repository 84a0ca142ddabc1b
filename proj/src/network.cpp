#include "nnv/network.hpp"

#include "nnv/errors.hpp"

namespace nnv {

Layer::Layer(Mat w, Vec b, Activation act)
    : weights(std::move(w)), bias(std::move(b)), activation(act) {
    if (weights.rows() != bias.size())
        throw InvalidArgument("layer weight rows do not match bias length");
    if (!all_finite(weights) || !all_finite(bias))
        throw InvalidArgument("layer parameters must be finite");
}

Network::Network(std::vector<Layer> ls) : layers(std::move(ls)) {
    if (layers.empty()) throw InvalidArgument("network needs at least one layer");
    for (size_t i = 1; i < layers.size(); ++i) {
        if (layers[i].in_dim() != layers[i - 1].out_dim())
            throw InvalidArgument("layer " + std::to_string(i) +
                                  " input width does not match previous layer output");
    }
}

int Network::num_relu_nodes() const {
    int n = 0;
    for (const Layer& l : layers)
        if (l.is_relu()) n += l.out_dim();
    return n;
}

Network Network::slice(int first, int last) const {
    if (first < 0 || last >= num_layers() || first > last)
        throw InvalidArgument("bad layer slice");
    return Network(std::vector<Layer>(layers.begin() + first, layers.begin() + last + 1));
}

Vec relu(const Vec& v) { return v.cwiseMax(0.0); }

Vec forward(const Network& net, const Vec& x) {
    if (x.size() != net.input_dim())
        throw InvalidArgument("input size " + std::to_string(x.size()) +
                              " does not match network input width " +
                              std::to_string(net.input_dim()));
    Vec z = x;
    for (const Layer& layer : net.layers) {
        Vec zhat = layer.affine(z);
        z = layer.is_relu() ? relu(zhat) : zhat;
    }
    return z;
}

ActivationPattern get_activation(const Network& net, const Vec& x) {
    if (x.size() != net.input_dim())
        throw InvalidArgument("input size does not match network input width");
    ActivationPattern pattern;
    pattern.on.reserve(net.layers.size());
    Vec z = x;
    for (const Layer& layer : net.layers) {
        Vec zhat = layer.affine(z);
        std::vector<bool> status(zhat.size());
        for (int j = 0; j < zhat.size(); ++j)
            status[j] = layer.is_relu() ? (zhat[j] > 0.0) : true;
        pattern.on.push_back(std::move(status));
        z = layer.is_relu() ? relu(zhat) : zhat;
    }
    return pattern;
}

}  // namespace nnv
