#include "nnv/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "nnv/errors.hpp"
#include "nnv/linear_model.hpp"

namespace nnv {

namespace {

constexpr double kRankTol = 1e-9;
constexpr double kDedupTol = 1e-9;

bool close(const Vec& a, const Vec& b, double tol) {
    return (a - b).lpNorm<Eigen::Infinity>() <= tol;
}

void append_unique(std::vector<Vec>& out, const Vec& v) {
    for (const Vec& w : out)
        if (close(w, v, kDedupTol)) return;
    out.push_back(v);
}

}  // namespace

Hyperrectangle::Hyperrectangle(Vec c, Vec r) : center(std::move(c)), radius(std::move(r)) {
    if (center.size() != radius.size())
        throw InvalidArgument("hyperrectangle center/radius size mismatch");
    if ((radius.array() < 0.0).any())
        throw InvalidArgument("hyperrectangle radius must be nonnegative");
}

Hyperrectangle Hyperrectangle::from_bounds(const Vec& low, const Vec& high) {
    if (low.size() != high.size() || (high - low).minCoeff() < 0.0)
        throw InvalidArgument("invalid bounds for hyperrectangle");
    return Hyperrectangle((low + high) / 2.0, (high - low) / 2.0);
}

std::vector<Vec> Hyperrectangle::vertices() const {
    if (dim() > 24) throw Unsupported("hyperrectangle vertex enumeration beyond 24 dims");
    std::vector<Vec> out;
    out.reserve(std::size_t{1} << dim());
    Vec lo = low(), hi = high();
    for (std::size_t mask = 0; mask < (std::size_t{1} << dim()); ++mask) {
        Vec v(dim());
        for (int i = 0; i < dim(); ++i) v[i] = (mask >> i) & 1 ? hi[i] : lo[i];
        append_unique(out, v);
    }
    return out;
}

HPolytope::HPolytope(Mat c, Vec dd) : C(std::move(c)), d(std::move(dd)) {
    if (C.rows() != d.size()) throw InvalidArgument("HPolytope row count mismatch");
    if (C.rows() < 1) throw InvalidArgument("HPolytope needs at least one row");
}

VPolytope::VPolytope(std::vector<Vec> vs) : vertices(std::move(vs)) {
    if (vertices.empty()) throw InvalidArgument("VPolytope needs at least one vertex");
    for (const Vec& v : vertices)
        if (v.size() != vertices.front().size())
            throw InvalidArgument("VPolytope vertices have mixed dimensions");
}

Halfspace::Halfspace(Vec cc, double dd) : c(std::move(cc)), d(dd) {
    if (c.size() == 0 || c.lpNorm<Eigen::Infinity>() == 0.0)
        throw InvalidArgument("halfspace normal must be nonzero");
}

int set_dim(const GeometricSet& s) {
    return std::visit([](const auto& v) { return v.dim(); }, s);
}

HPolytope to_hpolytope(const Hyperrectangle& box) {
    const int n = box.dim();
    Mat C(2 * n, n);
    Vec d(2 * n);
    C.topRows(n) = Mat::Identity(n, n);
    C.bottomRows(n) = -Mat::Identity(n, n);
    d.head(n) = box.high();
    d.tail(n) = -box.low();
    return HPolytope(std::move(C), std::move(d));
}

HPolytope to_hpolytope(const Halfspace& h) {
    Mat C(1, h.dim());
    C.row(0) = h.c.transpose();
    Vec d(1);
    d[0] = h.d;
    return HPolytope(std::move(C), std::move(d));
}

HPolytope as_hrep(const GeometricSet& s) {
    return std::visit(
        [](const auto& v) -> HPolytope {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Hyperrectangle>) return to_hpolytope(v);
            else if constexpr (std::is_same_v<T, HPolytope>) return v;
            else if constexpr (std::is_same_v<T, Halfspace>) return to_hpolytope(v);
            else if constexpr (std::is_same_v<T, VPolytope>) return v_to_h(v);
            else throw Unsupported("polytope complement has no convex H-representation");
        },
        s);
}

bool member(const GeometricSet& s, const Vec& x) {
    if (x.size() != set_dim(s)) throw InvalidArgument("membership query dimension mismatch");
    return std::visit(
        [&](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Hyperrectangle>) {
                return ((x - v.center).cwiseAbs() - v.radius).maxCoeff() <= kSetTol;
            } else if constexpr (std::is_same_v<T, HPolytope>) {
                return (v.C * x - v.d).maxCoeff() <= kSetTol;
            } else if constexpr (std::is_same_v<T, Halfspace>) {
                return v.c.dot(x) <= v.d + kSetTol;
            } else if constexpr (std::is_same_v<T, PolytopeComplement>) {
                return !member(GeometricSet(v.inner), x);
            } else {  // VPolytope: x in hull <=> feasible convex combination
                LinearModel m;
                std::vector<VarId> lambda;
                lambda.reserve(v.vertices.size());
                for (size_t k = 0; k < v.vertices.size(); ++k)
                    lambda.push_back(m.add_var(0.0, 1.0));
                LinExpr sum;
                for (VarId id : lambda) sum += LinExpr::var(id);
                m.add_eq(sum, 1.0);
                for (int i = 0; i < x.size(); ++i) {
                    LinExpr coord;
                    for (size_t k = 0; k < v.vertices.size(); ++k)
                        coord += LinExpr::var(lambda[k], v.vertices[k][i]);
                    m.add_le(coord, x[i] + kSetTol);
                    m.add_ge(coord, x[i] - kSetTol);
                }
                m.set_feasibility_objective();
                return solve_lp(m).optimal();
            }
        },
        s);
}

bool is_empty(const HPolytope& p) {
    LinearModel m;
    std::vector<VarId> x;
    for (int i = 0; i < p.dim(); ++i) x.push_back(m.add_var());
    for (int r = 0; r < p.num_rows(); ++r) {
        LinExpr row;
        for (int i = 0; i < p.dim(); ++i)
            if (p.C(r, i) != 0.0) row += LinExpr::var(x[i], p.C(r, i));
        m.add_le(row, p.d[r]);
    }
    m.set_feasibility_objective();
    return !solve_lp(m).optimal();
}

namespace {

// Supremum of c^T x over the polytope rows; -inf on empty, +inf on unbounded.
double support_value(const HPolytope& p, const Vec& dir) {
    LinearModel m;
    std::vector<VarId> x;
    for (int i = 0; i < p.dim(); ++i) x.push_back(m.add_var());
    for (int r = 0; r < p.num_rows(); ++r) {
        LinExpr row;
        for (int i = 0; i < p.dim(); ++i)
            if (p.C(r, i) != 0.0) row += LinExpr::var(x[i], p.C(r, i));
        m.add_le(row, p.d[r]);
    }
    LinExpr obj;
    for (int i = 0; i < p.dim(); ++i)
        if (dir[i] != 0.0) obj += LinExpr::var(x[i], dir[i]);
    m.set_objective(Sense::Maximize, obj);
    SolveOutcome out = solve_lp(m);
    if (out.status == SolveStatus::Infeasible) return -kInf;
    if (out.status == SolveStatus::Unbounded) return kInf;
    return out.value;
}

std::vector<Vec> enumerate_vertices(const HPolytope& p) {
    const int n = p.dim();
    const int m = p.num_rows();

    // Bounded check doubles as an empty check.
    for (int i = 0; i < n; ++i) {
        Vec dir = Vec::Zero(n);
        for (double sign : {1.0, -1.0}) {
            dir[i] = sign;
            double s = support_value(p, dir);
            if (s == -kInf) return {};
            if (s == kInf) throw Unsupported("vertex enumeration of an unbounded polytope");
        }
    }
    if (m < n) throw Unsupported("vertex enumeration of an unbounded polytope");

    std::vector<Vec> verts;
    std::vector<int> idx(n);
    // Enumerate all n-subsets of the rows.
    std::vector<int> comb(n);
    for (int i = 0; i < n; ++i) comb[i] = i;
    while (true) {
        Mat sub(n, n);
        Vec rhs(n);
        for (int i = 0; i < n; ++i) {
            sub.row(i) = p.C.row(comb[i]);
            rhs[i] = p.d[comb[i]];
        }
        Eigen::FullPivLU<Mat> lu(sub);
        lu.setThreshold(kRankTol);
        if (lu.isInvertible()) {
            Vec v = lu.solve(rhs);
            if (v.allFinite() && (p.C * v - p.d).maxCoeff() <= kSetTol) append_unique(verts, v);
        }
        // next combination
        int pos = n - 1;
        while (pos >= 0 && comb[pos] == m - n + pos) --pos;
        if (pos < 0) break;
        ++comb[pos];
        for (int k = pos + 1; k < n; ++k) comb[k] = comb[k - 1] + 1;
    }
    return verts;
}

void facets_full_dim(const std::vector<Vec>& pts, int r, std::vector<Vec>& normals,
                     std::vector<double>& offsets) {
    auto add_facet = [&](Vec n, double c) {
        double norm = n.norm();
        if (norm < kRankTol) return;
        n /= norm;
        c /= norm;
        for (size_t i = 0; i < normals.size(); ++i)
            if (close(normals[i], n, 1e-7) && std::abs(offsets[i] - c) <= 1e-7) return;
        normals.push_back(std::move(n));
        offsets.push_back(c);
    };

    const int k = static_cast<int>(pts.size());
    if (r == 1) {
        double lo = pts[0][0], hi = pts[0][0];
        for (const Vec& p : pts) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        add_facet(Vec::Ones(1), hi);
        add_facet(-Vec::Ones(1), -lo);
        return;
    }

    std::vector<int> comb(r);
    for (int i = 0; i < r; ++i) comb[i] = i;
    while (true) {
        Mat diffs(r - 1, r);
        for (int i = 1; i < r; ++i) diffs.row(i - 1) = (pts[comb[i]] - pts[comb[0]]).transpose();
        Eigen::FullPivLU<Mat> lu(diffs);
        lu.setThreshold(kRankTol);
        if (lu.rank() == r - 1) {
            Vec normal = lu.kernel().col(0);
            double c = normal.dot(pts[comb[0]]);
            double max_dev = -kInf, min_dev = kInf;
            for (const Vec& p : pts) {
                double dev = normal.dot(p) - c;
                max_dev = std::max(max_dev, dev);
                min_dev = std::min(min_dev, dev);
            }
            double tol = 1e-9 * std::max(1.0, std::abs(c));
            if (max_dev <= tol) add_facet(normal, c);
            if (min_dev >= -tol) add_facet(-normal, -c);
        }
        int pos = r - 1;
        while (pos >= 0 && comb[pos] == k - r + pos) --pos;
        if (pos < 0) break;
        ++comb[pos];
        for (int j = pos + 1; j < r; ++j) comb[j] = comb[j - 1] + 1;
    }
}

}  // namespace

VPolytope h_to_v(const HPolytope& p) {
    std::vector<Vec> verts = enumerate_vertices(p);
    if (verts.empty()) throw InvalidArgument("vertex enumeration of an empty polytope");
    return VPolytope(std::move(verts));
}

HPolytope v_to_h(const VPolytope& p) {
    const int n = p.dim();
    std::vector<Vec> pts;
    for (const Vec& v : p.vertices) append_unique(pts, v);

    const Vec& origin = pts.front();
    std::vector<Vec> normals;
    std::vector<double> offsets;

    if (pts.size() == 1) {
        // Single point: opposing inequality pairs pin every coordinate.
        for (int i = 0; i < n; ++i) {
            Vec e = Vec::Zero(n);
            e[i] = 1.0;
            normals.push_back(e);
            offsets.push_back(origin[i]);
            normals.push_back(-e);
            offsets.push_back(-origin[i]);
        }
    } else {
        // Affine hull via SVD of the difference matrix.
        Mat diffs(pts.size() - 1, n);
        for (size_t i = 1; i < pts.size(); ++i) diffs.row(i - 1) = (pts[i] - origin).transpose();
        Eigen::JacobiSVD<Mat> svd(diffs, Eigen::ComputeFullV);
        svd.setThreshold(kRankTol);
        const int r = static_cast<int>(svd.rank());
        Mat basis = svd.matrixV().leftCols(r);

        std::vector<Vec> proj;
        proj.reserve(pts.size());
        for (const Vec& v : pts) proj.push_back(basis.transpose() * (v - origin));

        std::vector<Vec> sub_normals;
        std::vector<double> sub_offsets;
        facets_full_dim(proj, r, sub_normals, sub_offsets);
        for (size_t f = 0; f < sub_normals.size(); ++f) {
            Vec a = basis * sub_normals[f];
            normals.push_back(a);
            offsets.push_back(sub_offsets[f] + a.dot(origin));
        }
        // Opposing pairs for the directions orthogonal to the affine hull.
        for (int q = r; q < n; ++q) {
            Vec a = svd.matrixV().col(q);
            normals.push_back(a);
            offsets.push_back(a.dot(origin));
            normals.push_back(-a);
            offsets.push_back(-a.dot(origin));
        }
    }

    Mat C(normals.size(), n);
    Vec d(normals.size());
    for (size_t i = 0; i < normals.size(); ++i) {
        C.row(i) = normals[i].transpose();
        d[i] = offsets[i];
    }
    return HPolytope(std::move(C), std::move(d));
}

std::vector<Vec> set_vertices(const GeometricSet& s) {
    return std::visit(
        [](const auto& v) -> std::vector<Vec> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Hyperrectangle>) return v.vertices();
            else if constexpr (std::is_same_v<T, HPolytope>) return h_to_v(v).vertices;
            else if constexpr (std::is_same_v<T, VPolytope>) return v.vertices;
            else throw Unsupported("vertex enumeration of an unbounded set");
        },
        s);
}

VPolytope affine_image(const GeometricSet& s, const Mat& W, const Vec& b) {
    if (W.cols() != set_dim(s)) throw InvalidArgument("affine map dimension mismatch");
    if (W.rows() != b.size()) throw InvalidArgument("affine map bias size mismatch");
    std::vector<Vec> mapped;
    for (const Vec& v : set_vertices(s)) append_unique(mapped, W * v + b);
    return VPolytope(std::move(mapped));
}

namespace {

bool subset_against_hrep(const GeometricSet& a, const HPolytope& b) {
    if (const auto* box = std::get_if<Hyperrectangle>(&a)) {
        // Per-row support bound: max over the box is c^T center + |c|^T radius.
        for (int r = 0; r < b.num_rows(); ++r) {
            double sup = b.C.row(r).dot(box->center) +
                         b.C.row(r).cwiseAbs().dot(box->radius);
            if (sup > b.d[r] + kSetTol) return false;
        }
        return true;
    }
    for (const Vec& v : set_vertices(a))
        if ((b.C * v - b.d).maxCoeff() > kSetTol) return false;
    return true;
}

bool intersection_empty(const GeometricSet& a, const HPolytope& inner) {
    LinearModel m;
    std::vector<VarId> x;
    for (int i = 0; i < set_dim(a); ++i) x.push_back(m.add_var());
    auto add_rows = [&](const HPolytope& p) {
        for (int r = 0; r < p.num_rows(); ++r) {
            LinExpr row;
            for (int i = 0; i < p.dim(); ++i)
                if (p.C(r, i) != 0.0) row += LinExpr::var(x[i], p.C(r, i));
            m.add_le(row, p.d[r]);
        }
    };
    if (const auto* vp = std::get_if<VPolytope>(&a)) {
        std::vector<VarId> lambda;
        for (size_t k = 0; k < vp->vertices.size(); ++k) lambda.push_back(m.add_var(0.0, 1.0));
        LinExpr sum;
        for (VarId id : lambda) sum += LinExpr::var(id);
        m.add_eq(sum, 1.0);
        for (int i = 0; i < vp->dim(); ++i) {
            LinExpr coord = LinExpr::var(x[i], -1.0);
            for (size_t k = 0; k < vp->vertices.size(); ++k)
                coord += LinExpr::var(lambda[k], vp->vertices[k][i]);
            m.add_eq(coord, 0.0);
        }
    } else {
        add_rows(as_hrep(a));
    }
    add_rows(inner);
    m.set_feasibility_objective();
    return !solve_lp(m).optimal();
}

}  // namespace

bool subset(const GeometricSet& a, const GeometricSet& b) {
    if (set_dim(a) != set_dim(b)) throw InvalidArgument("subset dimension mismatch");
    if (std::holds_alternative<Halfspace>(a) || std::holds_alternative<PolytopeComplement>(a))
        throw Unsupported("subset check requires a bounded left-hand set");

    return std::visit(
        [&](const auto& rhs) -> bool {
            using T = std::decay_t<decltype(rhs)>;
            if constexpr (std::is_same_v<T, Hyperrectangle>) {
                if (const auto* box = std::get_if<Hyperrectangle>(&a)) {
                    Vec lo_gap = box->low() - rhs.low();
                    Vec hi_gap = rhs.high() - box->high();
                    return lo_gap.minCoeff() >= -kSetTol && hi_gap.minCoeff() >= -kSetTol;
                }
                return subset_against_hrep(a, to_hpolytope(rhs));
            } else if constexpr (std::is_same_v<T, Halfspace>) {
                return subset_against_hrep(a, to_hpolytope(rhs));
            } else if constexpr (std::is_same_v<T, HPolytope>) {
                return subset_against_hrep(a, rhs);
            } else if constexpr (std::is_same_v<T, VPolytope>) {
                for (const Vec& v : set_vertices(a))
                    if (!member(GeometricSet(rhs), v)) return false;
                return true;
            } else {  // PolytopeComplement: no vertex inside, intersection empty
                for (const Vec& v : set_vertices(a))
                    if (member(GeometricSet(rhs.inner), v)) return false;
                return intersection_empty(a, rhs.inner);
            }
        },
        b);
}

HPolytope convex_hull(const std::vector<GeometricSet>& sets) {
    if (sets.empty()) throw InvalidArgument("convex hull of an empty collection");
    std::vector<Vec> all;
    for (const GeometricSet& s : sets)
        for (const Vec& v : set_vertices(s)) append_unique(all, v);
    return v_to_h(VPolytope(std::move(all)));
}

std::pair<Hyperrectangle, Hyperrectangle> split_interval(const Hyperrectangle& dom, int index) {
    if (index < 0 || index >= dom.dim()) throw InvalidArgument("split index out of range");
    if (dom.radius[index] <= 0.0) throw InvalidArgument("cannot split a zero-width dimension");
    Vec lo = dom.low(), hi = dom.high();
    Vec hi_left = hi, lo_right = lo;
    hi_left[index] = dom.center[index];
    lo_right[index] = dom.center[index];
    return {Hyperrectangle::from_bounds(lo, hi_left), Hyperrectangle::from_bounds(lo_right, hi)};
}

Hyperrectangle bounding_box(const GeometricSet& s) {
    return std::visit(
        [&](const auto& v) -> Hyperrectangle {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Hyperrectangle>) {
                return v;
            } else if constexpr (std::is_same_v<T, VPolytope>) {
                Vec lo = v.vertices.front(), hi = v.vertices.front();
                for (const Vec& p : v.vertices) {
                    lo = lo.cwiseMin(p);
                    hi = hi.cwiseMax(p);
                }
                return Hyperrectangle::from_bounds(lo, hi);
            } else if constexpr (std::is_same_v<T, HPolytope>) {
                const int n = v.dim();
                Vec lo(n), hi(n);
                for (int i = 0; i < n; ++i) {
                    Vec dir = Vec::Zero(n);
                    dir[i] = 1.0;
                    hi[i] = support_value(v, dir);
                    lo[i] = -support_value(v, -dir);
                    if (!std::isfinite(hi[i]) || !std::isfinite(lo[i]))
                        throw Unsupported("bounding box of an empty or unbounded polytope");
                }
                return Hyperrectangle::from_bounds(lo, hi);
            } else {
                throw Unsupported("bounding box of an unbounded set");
            }
        },
        s);
}

}  // namespace nnv
