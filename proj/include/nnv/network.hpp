#pragma once

#include <vector>

#include "nnv/linalg.hpp"

namespace nnv {

enum class Activation { ReLU, Id };

// One fully-connected layer: z = act(W * z_prev + b).
struct Layer {
    Mat weights;
    Vec bias;
    Activation activation = Activation::ReLU;

    Layer() = default;
    Layer(Mat w, Vec b, Activation act);

    int out_dim() const { return static_cast<int>(weights.rows()); }
    int in_dim() const { return static_cast<int>(weights.cols()); }
    bool is_relu() const { return activation == Activation::ReLU; }

    Vec affine(const Vec& z) const { return weights * z + bias; }
};

struct Network {
    std::vector<Layer> layers;

    Network() = default;
    explicit Network(std::vector<Layer> ls);

    int input_dim() const { return layers.front().in_dim(); }
    int output_dim() const { return layers.back().out_dim(); }
    int num_layers() const { return static_cast<int>(layers.size()); }
    // Total ReLU node count across all layers.
    int num_relu_nodes() const;

    // Sub-network formed by layers [first, last] (inclusive, 0-based).
    Network slice(int first, int last) const;
};

// Per-layer on/off status of every node. Id layers report all-true.
struct ActivationPattern {
    std::vector<std::vector<bool>> on;

    bool at(int layer, int node) const { return on[layer][node]; }
};

Vec relu(const Vec& v);

// Forward pass through the whole network.
Vec forward(const Network& net, const Vec& x);

// Activation status along the forward trace. A node is on iff its
// pre-activation value is strictly positive; ties at zero are off.
ActivationPattern get_activation(const Network& net, const Vec& x);

}  // namespace nnv
