#include "nnv/solvers/reach.hpp"

#include <cmath>

#include "nnv/errors.hpp"

namespace nnv {

namespace {

std::vector<Vec> input_vertices(const GeometricSet& s) {
    if (std::holds_alternative<Halfspace>(s) || std::holds_alternative<PolytopeComplement>(s))
        throw Unsupported("reachability needs a bounded input set");
    return set_vertices(s);
}

// Orthant pieces of a pre-activation set, each already mapped through the
// ReLU of its own pattern. Pattern bit j of h selects node j active.
std::vector<VPolytope> forward_partition(const VPolytope& zhat_set) {
    const int k = zhat_set.dim();
    if (k > kPartitionWidthCap)
        throw Unsupported("layer width " + std::to_string(k) +
                          " exceeds the exact-partition cap of " +
                          std::to_string(kPartitionWidthCap));
    HPolytope h = v_to_h(zhat_set);
    std::vector<VPolytope> out;
    for (std::size_t pattern = 0; pattern < (std::size_t{1} << k); ++pattern) {
        Mat C(h.num_rows() + k, k);
        Vec d(h.num_rows() + k);
        C.topRows(h.num_rows()) = h.C;
        d.head(h.num_rows()) = h.d;
        C.bottomRows(k).setZero();
        for (int j = 0; j < k; ++j) {
            C(h.num_rows() + j, j) = (pattern >> j) & 1 ? -1.0 : 1.0;
            d[h.num_rows() + j] = 0.0;
        }
        HPolytope piece(std::move(C), std::move(d));
        if (is_empty(piece)) continue;
        std::vector<Vec> verts = h_to_v(piece).vertices;
        for (Vec& v : verts)
            for (int j = 0; j < k; ++j)
                if (!((pattern >> j) & 1)) v[j] = 0.0;
        out.emplace_back(std::move(verts));
    }
    return out;
}

VPolytope map_vertices(const VPolytope& p, const Layer& layer) {
    std::vector<Vec> verts;
    verts.reserve(p.vertices.size());
    for (const Vec& v : p.vertices) verts.push_back(layer.affine(v));
    return VPolytope(std::move(verts));
}

VerificationResult check_inclusion(std::vector<GeometricSet> reach, const GeometricSet& output) {
    Status status = Status::Holds;
    for (const GeometricSet& piece : reach) {
        if (!subset(piece, output)) {
            status = Status::Violated;
            break;
        }
    }
    return VerificationResult::reachability(status, std::move(reach));
}

}  // namespace

std::vector<Hyperrectangle> partition_box(const Hyperrectangle& box, double resolution) {
    if (resolution <= 0.0) throw InvalidArgument("partition resolution must be positive");
    const int n = box.dim();
    std::vector<int> cells(n);
    Vec lo = box.low(), hi = box.high();
    for (int i = 0; i < n; ++i) {
        double width = hi[i] - lo[i];
        cells[i] = width <= resolution ? 1 : static_cast<int>(std::ceil(width / resolution - 1e-12));
    }
    std::vector<Hyperrectangle> out;
    std::vector<int> idx(n, 0);
    while (true) {
        Vec cell_lo(n), cell_hi(n);
        for (int i = 0; i < n; ++i) {
            cell_lo[i] = lo[i] + idx[i] * resolution;
            cell_hi[i] = std::min(hi[i], cell_lo[i] + resolution);
            if (cells[i] == 1) {
                cell_lo[i] = lo[i];
                cell_hi[i] = hi[i];
            }
        }
        out.push_back(Hyperrectangle::from_bounds(cell_lo, cell_hi));
        int pos = n - 1;
        while (pos >= 0 && idx[pos] + 1 >= cells[pos]) idx[pos--] = 0;
        if (pos < 0) break;
        ++idx[pos];
    }
    return out;
}

Hyperrectangle maxsens_forward_layer(const Layer& layer, const Hyperrectangle& input, bool tight) {
    auto act = [&](double v) { return layer.is_relu() ? std::max(v, 0.0) : v; };
    Vec center(layer.out_dim()), radius(layer.out_dim());
    for (int j = 0; j < layer.out_dim(); ++j) {
        double out = layer.weights.row(j).dot(input.center) + layer.bias[j];
        double dev = layer.weights.row(j).cwiseAbs().dot(input.radius);
        double beta = act(out);
        double beta_max = act(out + dev);
        double beta_min = act(out - dev);
        if (tight) {
            center[j] = (beta_max + beta_min) / 2.0;
            radius[j] = (beta_max - beta_min) / 2.0;
        } else {
            center[j] = beta;
            radius[j] = std::max(std::abs(beta_max - beta), std::abs(beta_min - beta));
        }
    }
    return Hyperrectangle(std::move(center), std::move(radius));
}

VerificationResult solve_exactreach(const VerificationProblem& p) {
    std::vector<VPolytope> pieces{VPolytope(input_vertices(p.input))};
    for (const Layer& layer : p.network.layers) {
        std::vector<VPolytope> next;
        for (const VPolytope& piece : pieces) {
            VPolytope zhat = map_vertices(piece, layer);
            if (!layer.is_relu()) {
                next.push_back(std::move(zhat));
                continue;
            }
            for (VPolytope& mapped : forward_partition(zhat)) next.push_back(std::move(mapped));
        }
        pieces = std::move(next);
    }
    std::vector<GeometricSet> reach(pieces.begin(), pieces.end());
    return check_inclusion(std::move(reach), p.output);
}

VerificationResult solve_ai2(const VerificationProblem& p) {
    VPolytope flow(input_vertices(p.input));
    for (const Layer& layer : p.network.layers) {
        VPolytope zhat = map_vertices(flow, layer);
        if (!layer.is_relu()) {
            flow = std::move(zhat);
            continue;
        }
        // Join: the hull of the union is spanned by the pieces' vertices.
        std::vector<Vec> hull_vertices;
        for (const VPolytope& piece : forward_partition(zhat))
            for (const Vec& v : piece.vertices) hull_vertices.push_back(v);
        flow = VPolytope(std::move(hull_vertices));
    }
    return check_inclusion({GeometricSet(std::move(flow))}, p.output);
}

VerificationResult solve_maxsens(const VerificationProblem& p, const MaxSensConfig& cfg) {
    if (cfg.resolution <= 0.0) throw InvalidArgument("resolution must be positive");
    Hyperrectangle box = bounding_box(p.input);
    std::vector<GeometricSet> reach;
    for (const Hyperrectangle& cell : partition_box(box, cfg.resolution)) {
        Hyperrectangle flow = cell;
        for (const Layer& layer : p.network.layers)
            flow = maxsens_forward_layer(layer, flow, cfg.tight);
        reach.emplace_back(std::move(flow));
    }
    return check_inclusion(std::move(reach), p.output);
}

}  // namespace nnv
