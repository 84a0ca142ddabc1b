#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "nnv/linalg.hpp"

namespace nnv {

// Absolute slack applied to every set-membership inequality. Shields
// vertex-enumeration round-off.
constexpr double kSetTol = 1e-8;

// Axis-aligned box |x - center| <= radius.
struct Hyperrectangle {
    Vec center;
    Vec radius;

    Hyperrectangle() = default;
    Hyperrectangle(Vec c, Vec r);
    static Hyperrectangle from_bounds(const Vec& low, const Vec& high);

    int dim() const { return static_cast<int>(center.size()); }
    Vec low() const { return center - radius; }
    Vec high() const { return center + radius; }
    double max_radius() const { return radius.size() ? radius.maxCoeff() : 0.0; }
    std::vector<Vec> vertices() const;
};

// Intersection of halfspaces C x <= d.
struct HPolytope {
    Mat C;
    Vec d;

    HPolytope() = default;
    HPolytope(Mat c, Vec dd);

    int dim() const { return static_cast<int>(C.cols()); }
    int num_rows() const { return static_cast<int>(C.rows()); }
};

// Convex hull of a finite vertex list.
struct VPolytope {
    std::vector<Vec> vertices;

    VPolytope() = default;
    explicit VPolytope(std::vector<Vec> vs);

    int dim() const { return static_cast<int>(vertices.front().size()); }
};

// Single inequality c^T x <= d.
struct Halfspace {
    Vec c;
    double d = 0.0;

    Halfspace() = default;
    Halfspace(Vec cc, double dd);

    int dim() const { return static_cast<int>(c.size()); }
};

// Complement of a closed polytope; encodes unbounded output constraints.
struct PolytopeComplement {
    HPolytope inner;

    PolytopeComplement() = default;
    explicit PolytopeComplement(HPolytope p) : inner(std::move(p)) {}

    int dim() const { return inner.dim(); }
};

using GeometricSet =
    std::variant<Hyperrectangle, HPolytope, VPolytope, Halfspace, PolytopeComplement>;

int set_dim(const GeometricSet& s);

bool member(const GeometricSet& s, const Vec& x);

// True iff every point of `a` lies in `b`. `a` must be bounded.
bool subset(const GeometricSet& a, const GeometricSet& b);

// Exact image {W x + b : x in s} as a VPolytope.
VPolytope affine_image(const GeometricSet& s, const Mat& W, const Vec& b);

// Vertex enumeration of a bounded polytope: intersections of dim-subsets
// of active constraints, filtered by feasibility.
VPolytope h_to_v(const HPolytope& p);

// Facets of the convex hull of the vertex set. Degenerate (lower
// dimensional) inputs produce pairs of opposing inequalities for the
// directions orthogonal to the affine hull.
HPolytope v_to_h(const VPolytope& p);

// LP feasibility of {C x <= d}.
bool is_empty(const HPolytope& p);

HPolytope convex_hull(const std::vector<GeometricSet>& sets);

// Bisects edge `index` at the center. Both halves share the cut plane.
std::pair<Hyperrectangle, Hyperrectangle> split_interval(const Hyperrectangle& dom, int index);

// Conversion helpers.
HPolytope to_hpolytope(const Hyperrectangle& box);
HPolytope to_hpolytope(const Halfspace& h);
// H-representation of any convex set in the family; PolytopeComplement is rejected.
HPolytope as_hrep(const GeometricSet& s);
// Vertex list of a bounded set (box corners, polytope vertices).
std::vector<Vec> set_vertices(const GeometricSet& s);
// Tight axis-aligned bounding box (solves 2*dim LPs for H-polytopes).
Hyperrectangle bounding_box(const GeometricSet& s);

}  // namespace nnv
