#pragma once

#include <cstdint>
#include <vector>

#include "nnv/geometry.hpp"
#include "nnv/network.hpp"
#include "nnv/problem.hpp"

namespace nnv::testutil {

// Deterministic 64-bit generator (splitmix64). Distributions below are
// hand-rolled so streams are stable across platforms and library versions.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (next() >> 11) * 0x1.0p-53;
    }

    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
    }

    Vec uniform_vec(int n, double lo, double hi) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
        return v;
    }

private:
    uint64_t state_;
};

inline Network net_id() {
    Mat w(1, 1);
    w << 1.0;
    return Network({Layer(w, Vec::Zero(1), Activation::Id)});
}

// f(x) = |x| as relu(x) + relu(-x).
inline Network net_abs() {
    Mat w1(2, 1);
    w1 << 1.0, -1.0;
    Mat w2(1, 2);
    w2 << 1.0, 1.0;
    return Network({Layer(w1, Vec::Zero(2), Activation::ReLU),
                    Layer(w2, Vec::Zero(1), Activation::Id)});
}

inline Hyperrectangle unit_interval() {
    return Hyperrectangle(Vec::Zero(1), Vec::Ones(1));
}

inline VerificationProblem prob_hold() {
    return VerificationProblem(net_abs(), unit_interval(), Halfspace(Vec::Ones(1), 1.5));
}

inline VerificationProblem prob_viol() {
    return VerificationProblem(net_abs(), unit_interval(), Halfspace(Vec::Ones(1), 0.5));
}

// Random fully-connected network: widths in [2,4], depth 1-3 hidden ReLU
// layers plus an Id output layer, parameters uniform in [-2,2].
inline Network random_network(Rng& rng, int in_dim, int out_dim, int max_width = 4,
                              int max_hidden = 3) {
    int hidden = rng.uniform_int(1, max_hidden);
    std::vector<int> widths{in_dim};
    for (int i = 0; i < hidden; ++i) widths.push_back(rng.uniform_int(2, max_width));
    widths.push_back(out_dim);
    std::vector<Layer> layers;
    for (size_t i = 1; i < widths.size(); ++i) {
        Mat w(widths[i], widths[i - 1]);
        for (int r = 0; r < w.rows(); ++r)
            for (int c = 0; c < w.cols(); ++c) w(r, c) = rng.uniform(-2.0, 2.0);
        Vec b = rng.uniform_vec(widths[i], -2.0, 2.0);
        bool last = i + 1 == widths.size();
        layers.emplace_back(std::move(w), std::move(b),
                            last ? Activation::Id : Activation::ReLU);
    }
    return Network(std::move(layers));
}

inline Hyperrectangle random_box(Rng& rng, int dim, bool uniform_radius = false) {
    Vec center = rng.uniform_vec(dim, -1.0, 1.0);
    Vec radius(dim);
    if (uniform_radius) {
        radius.setConstant(rng.uniform(0.2, 1.0));
    } else {
        for (int i = 0; i < dim; ++i) radius[i] = rng.uniform(0.2, 1.0);
    }
    return Hyperrectangle(std::move(center), std::move(radius));
}

// Dense grid / random samples inside a box.
inline std::vector<Vec> sample_box(Rng& rng, const Hyperrectangle& box, int count) {
    std::vector<Vec> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        Vec x(box.dim());
        for (int j = 0; j < box.dim(); ++j)
            x[j] = rng.uniform(box.center[j] - box.radius[j], box.center[j] + box.radius[j]);
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace nnv::testutil
