#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nnv/bounds.hpp"
#include "nnv/encodings.hpp"
#include "nnv/errors.hpp"
#include "nnv/model_sets.hpp"
#include "test_util.hpp"

using namespace nnv;
using namespace nnv::testutil;

TEST_CASE("interval_map matches corner enumeration") {
    Mat w(1, 2);
    w << 1.0, -1.0;
    auto [lo, hi] = interval_map(w, Vec(Vec::Zero(2)), Vec(Vec::Ones(2)));
    CHECK(lo[0] == doctest::Approx(-1.0));
    CHECK(hi[0] == doctest::Approx(1.0));

    Mat id = Mat::Identity(3, 3);
    Vec l = Vec::Constant(3, -0.5), u = Vec::Constant(3, 2.0);
    auto [l2, u2] = interval_map(id, l, u);
    CHECK((l2 - l).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK((u2 - u).lpNorm<Eigen::Infinity>() == 0.0);
    auto [l3, u3] = interval_map(-id, l, u);
    CHECK((l3 + u).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK((u3 + l).lpNorm<Eigen::Infinity>() == 0.0);

    Rng rng(31);
    for (int inst = 0; inst < 50; ++inst) {
        int n = rng.uniform_int(1, 4);
        int m = rng.uniform_int(1, 3);
        Mat W(m, n);
        for (int i = 0; i < m * n; ++i) W(i / n, i % n) = rng.uniform(-2.0, 2.0);
        Vec a = rng.uniform_vec(n, -2.0, 0.5);
        Vec b = a + rng.uniform_vec(n, 0.0, 2.0).cwiseAbs();
        auto [lo_r, hi_r] = interval_map(W, a, b);
        Vec corner_lo = Vec::Constant(m, kInf), corner_hi = Vec::Constant(m, -kInf);
        for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
            Vec x(n);
            for (int i = 0; i < n; ++i) x[i] = (mask >> i) & 1 ? b[i] : a[i];
            Vec y = W * x;
            corner_lo = corner_lo.cwiseMin(y);
            corner_hi = corner_hi.cwiseMax(y);
        }
        CHECK((lo_r - corner_lo).lpNorm<Eigen::Infinity>() <= 1e-9);
        CHECK((hi_r - corner_hi).lpNorm<Eigen::Infinity>() <= 1e-9);
    }
}

TEST_CASE("get_bounds on the fixtures") {
    LayerBounds b = get_bounds(prob_hold());
    CHECK(b.pre[0].low()[0] == doctest::Approx(-1.0));
    CHECK(b.pre[0].high()[0] == doctest::Approx(1.0));
    CHECK(b.post[1].low()[0] == doctest::Approx(0.0));
    CHECK(b.post[1].high()[0] == doctest::Approx(1.0));
    CHECK(b.output().low()[0] == doctest::Approx(0.0));
    CHECK(b.output().high()[0] == doctest::Approx(2.0));

    LayerBounds ident = get_bounds(net_id(), unit_interval());
    CHECK(ident.output().low()[0] == doctest::Approx(-1.0));
    CHECK(ident.output().high()[0] == doctest::Approx(1.0));

    // Point input propagates the forward trace exactly.
    Vec c(1);
    c << 0.3;
    LayerBounds pt = get_bounds(net_abs(), Hyperrectangle(c, Vec::Zero(1)));
    CHECK(pt.output().low()[0] == doctest::Approx(0.3));
    CHECK(pt.output().high()[0] == doctest::Approx(0.3));
    CHECK(pt.output().radius[0] == doctest::Approx(0.0));
}

TEST_CASE("interval soundness on random networks") {
    Rng rng(32);
    int checked = 0;
    while (checked < 1000) {
        Network net = random_network(rng, 2, 2);
        Hyperrectangle box = random_box(rng, 2);
        LayerBounds bounds = get_bounds(net, box);
        for (const Vec& x : sample_box(rng, box, 10)) {
            Vec z = x;
            for (int i = 0; i < net.num_layers(); ++i) {
                Vec zhat = net.layers[i].affine(z);
                CHECK((zhat - bounds.pre[i].low()).minCoeff() >= -1e-9);
                CHECK((bounds.pre[i].high() - zhat).minCoeff() >= -1e-9);
                z = net.layers[i].is_relu() ? relu(zhat) : zhat;
                CHECK((z - bounds.post[i + 1].low()).minCoeff() >= -1e-9);
                CHECK((bounds.post[i + 1].high() - z).minCoeff() >= -1e-9);
            }
            ++checked;
        }
    }
}

TEST_CASE("classify_nodes boundary rules") {
    Vec lo(2), hi(2);
    lo << -1.0, -1.0;
    hi << 1.0, 1.0;
    NodeClasses c = classify_nodes(lo, hi);
    CHECK(c.undetermined(0));
    CHECK(c.undetermined(1));

    Vec lo2(1), hi2(1);
    lo2 << 0.1;
    hi2 << 0.5;
    CHECK(classify_nodes(lo2, hi2).active(0));
    lo2 << -0.5;
    hi2 << 0.0;
    CHECK(classify_nodes(lo2, hi2).inactive(0));
    lo2 << 0.0;
    hi2 << 0.0;  // doubly-degenerate boundary resolves inactive
    CHECK(classify_nodes(lo2, hi2).inactive(0));
    lo2 << 0.0;
    hi2 << 1.0;
    CHECK(classify_nodes(lo2, hi2).active(0));
}

TEST_CASE("get_gradient on the fixtures") {
    Vec x(1);
    x << 0.5;
    CHECK(get_gradient(net_abs(), x)(0, 0) == doctest::Approx(1.0));
    x << -0.5;
    CHECK(get_gradient(net_abs(), x)(0, 0) == doctest::Approx(-1.0));
    x << 7.0;
    CHECK(get_gradient(net_id(), x)(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("gradient matches central differences away from kinks") {
    Rng rng(33);
    const double h = 1e-6;
    int done = 0;
    while (done < 100) {
        Network net = random_network(rng, 2, 1);
        Vec x = rng.uniform_vec(2, -1.0, 1.0);
        // Keep away from activation boundaries along the trace.
        bool near_kink = false;
        Vec z = x;
        for (const Layer& layer : net.layers) {
            Vec zhat = layer.affine(z);
            if (layer.is_relu() && zhat.cwiseAbs().minCoeff() < 1e-3) near_kink = true;
            z = layer.is_relu() ? relu(zhat) : zhat;
        }
        if (near_kink) continue;
        Mat g = get_gradient(net, x);
        for (int j = 0; j < 2; ++j) {
            Vec e = Vec::Zero(2);
            e[j] = h;
            double fd = (forward(net, x + e)[0] - forward(net, x - e)[0]) / (2.0 * h);
            CHECK(g(0, j) == doctest::Approx(fd).epsilon(0).scale(1).epsilon(1e-4));
        }
        ++done;
    }
}

TEST_CASE("gradient bounds on the fixtures") {
    GradientBounds gb = get_gradient_bounds(net_abs(), GeometricSet(unit_interval()));
    CHECK(gb.lower(0, 0) == doctest::Approx(-1.0));
    CHECK(gb.upper(0, 0) == doctest::Approx(1.0));

    Vec c(1), r(1);
    c << 0.55;
    r << 0.45;  // [0.1, 1]: node 1 active, node 2 off
    GradientBounds act = get_gradient_bounds(net_abs(), GeometricSet(Hyperrectangle(c, r)));
    CHECK(act.lower(0, 0) == doctest::Approx(1.0));
    CHECK(act.upper(0, 0) == doctest::Approx(1.0));

    GradientBounds ident = get_gradient_bounds(net_id(), GeometricSet(unit_interval()));
    CHECK(ident.lower(0, 0) == doctest::Approx(1.0));
    CHECK(ident.upper(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("pointwise gradients lie inside gradient bounds") {
    Rng rng(34);
    for (int inst = 0; inst < 100; ++inst) {
        Network net = random_network(rng, 2, 2);
        Hyperrectangle box = random_box(rng, 2);
        GradientBounds gb = get_gradient_bounds(net, GeometricSet(box));
        for (const Vec& x : sample_box(rng, box, 5)) {
            Mat g = get_gradient(net, x);
            CHECK(((g - gb.lower).minCoeff()) >= -1e-9);
            CHECK(((gb.upper - g).minCoeff()) >= -1e-9);
        }
    }
}

TEST_CASE("encodings: activation-pattern consistency of StandardLP") {
    Rng rng(35);
    for (int inst = 0; inst < 50; ++inst) {
        Network net = random_network(rng, 2, 1);
        Vec x = rng.uniform_vec(2, -1.0, 1.0);
        ActivationPattern pattern = get_activation(net, x);
        LinearModel m;
        EncodingHandles h = encode_network(m, net, EncodingSpec::standard_lp(pattern));
        for (int k = 0; k < 2; ++k) m.add_eq(LinExpr::var(h.input()[k]), x[k]);
        m.set_feasibility_objective();
        SolveOutcome out = solve_lp(m);
        REQUIRE(out.optimal());
        Vec y = forward(net, x);
        CHECK(out.point[h.output()[0]] == doctest::Approx(y[0]).epsilon(1e-7));
    }
}

TEST_CASE("encodings: triangular region shape on one node") {
    // Single undetermined node with bounds [-1, 1].
    Mat w(1, 1);
    w << 1.0;
    Network net({Layer(w, Vec::Zero(1), Activation::ReLU)});
    LayerBounds bounds = get_bounds(net, unit_interval());
    auto feasible = [&](double zhat, double z) {
        LinearModel m;
        EncodingHandles h = encode_network(m, net, EncodingSpec::triangular(bounds));
        m.add_eq(LinExpr::var(h.input()[0]), zhat);
        m.add_eq(LinExpr::var(h.output()[0]), z);
        m.set_feasibility_objective();
        return solve_lp(m).optimal();
    };
    CHECK(feasible(0.5, 0.5));
    CHECK(feasible(-1.0, 0.0));
    CHECK(!feasible(0.0, 0.9));
}

TEST_CASE("encodings: containment chain standard within triangle within band") {
    Rng rng(36);
    const double lo = -1.0, hi = 1.0;
    ParallelRelaxation band = parallel_relaxation(lo, hi);
    double slope = band.slope;
    auto in_triangle = [&](double zhat, double z) {
        return z >= zhat - 1e-12 && z >= -1e-12 && z <= slope * (zhat - lo) + 1e-12;
    };
    auto in_band = [&](double zhat, double z) {
        return slope * zhat - 1e-12 <= z && z <= slope * (zhat - lo) + 1e-12;
    };
    for (int i = 0; i < 1000; ++i) {
        double zhat = rng.uniform(lo, hi);
        // Points on both exact segments lie in the triangle, and triangle
        // samples lie in the band.
        double z_active = std::max(zhat, 0.0);
        CHECK(in_triangle(zhat, z_active));
        CHECK(in_band(zhat, z_active));
        double z_tri = rng.uniform(std::max(zhat, 0.0), slope * (zhat - lo));
        if (in_triangle(zhat, z_tri)) CHECK(in_band(zhat, z_tri));
    }
    CHECK(parallel_relaxation(-1.0, 1.0).slope == doctest::Approx(0.5));
    CHECK(parallel_relaxation(-3.0, 1.0).slope == doctest::Approx(0.25));
    CHECK(parallel_relaxation(-1e-9, 1.0).slope == doctest::Approx(1.0));
    CHECK_THROWS_AS(parallel_relaxation(0.5, 1.0), InvalidArgument);
}

TEST_CASE("encodings: MIP kinds reproduce the graph of f") {
    Rng rng(37);
    for (int inst = 0; inst < 12; ++inst) {
        Network net = random_network(rng, 2, 1, 3, 2);
        if (net.num_relu_nodes() > 8) continue;
        Hyperrectangle box = random_box(rng, 2);
        LayerBounds bounds = get_bounds(net, box);
        for (bool naive : {true, false}) {
            LinearModel m;
            EncodingSpec spec = naive ? EncodingSpec::naive_mip(default_big_m(bounds))
                                      : EncodingSpec::bounded_mip(bounds);
            EncodingHandles h = encode_network(m, net, spec);
            add_set_constraint(m, GeometricSet(box), h.input());
            objective_linear(m, h.output(), Vec::Ones(1), 0.0, Sense::Maximize);
            SolveOutcome out = solve_milp(m);
            REQUIRE(out.optimal());
            // The optimum must be achieved by an actual input.
            Vec x(2);
            x << out.point[h.input()[0]], out.point[h.input()[1]];
            CHECK(forward(net, x)[0] == doctest::Approx(out.value).epsilon(1e-6));
        }
    }
}

TEST_CASE("encodings: bounded MIP maximum of |x| on the fixture") {
    VerificationProblem p = prob_hold();
    LayerBounds bounds = get_bounds(p);
    LinearModel m;
    EncodingHandles h = encode_network(m, p.network, EncodingSpec::bounded_mip(bounds));
    add_set_constraint(m, p.input, h.input());
    objective_linear(m, h.output(), Vec::Ones(1), 0.0, Sense::Maximize);
    SolveOutcome out = solve_milp(m);
    REQUIRE(out.optimal());
    CHECK(out.value == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("encodings: slack LP with zero slacks equals standard LP") {
    Rng rng(38);
    for (int inst = 0; inst < 20; ++inst) {
        Network net = random_network(rng, 2, 1, 3, 2);
        Vec x = rng.uniform_vec(2, -1.0, 1.0);
        ActivationPattern pattern = get_activation(net, x);
        LinearModel m;
        EncodingHandles h = encode_network(m, net, EncodingSpec::slack_lp(pattern));
        for (int k = 0; k < 2; ++k) m.add_eq(LinExpr::var(h.input()[k]), x[k]);
        for (const auto& layer_slack : h.slack)
            for (VarId s : layer_slack) m.add_eq(LinExpr::var(s), 0.0);
        m.set_feasibility_objective();
        SolveOutcome out = solve_lp(m);
        REQUIRE(out.optimal());
        CHECK(out.point[h.output()[0]] == doctest::Approx(forward(net, x)[0]).epsilon(1e-7));
    }
}

TEST_CASE("objectives: disturbance epigraph and linear value") {
    LinearModel m;
    VarId y = m.add_var();
    m.add_ge(LinExpr::var(y), 0.5);
    VarId t = objective_max_disturbance(m, {y}, Vec::Zero(1));
    SolveOutcome out = solve_lp(m);
    REQUIRE(out.optimal());
    CHECK(out.point[t] == doctest::Approx(0.5));

    LinearModel m2;
    VarId y2 = m2.add_var();
    m2.add_eq(LinExpr::var(y2), 1.0);
    objective_linear(m2, {y2}, Vec::Ones(1), 1.5, Sense::Minimize);
    SolveOutcome out2 = solve_lp(m2);
    REQUIRE(out2.optimal());
    CHECK(out2.value == doctest::Approx(-0.5));
}

TEST_CASE("set constraints: emitted rows") {
    SUBCASE("hyperrectangle rows") {
        LinearModel m;
        VarId x = m.add_var();
        add_set_constraint(m, GeometricSet(unit_interval()), {x});
        m.set_objective(Sense::Maximize, LinExpr::var(x));
        CHECK(solve_lp(m).value == doctest::Approx(1.0));
        m.set_objective(Sense::Minimize, LinExpr::var(x));
        CHECK(solve_lp(m).value == doctest::Approx(-1.0));
    }
    SUBCASE("halfspace row") {
        LinearModel m;
        VarId x = m.add_var(), y = m.add_var(-10.0, 10.0);
        Vec c(2);
        c << 1.0, -1.0;
        add_set_constraint(m, GeometricSet(Halfspace(c, 0.0)), {x, y});
        m.set_objective(Sense::Maximize, LinExpr::var(x) - LinExpr::var(y));
        CHECK(solve_lp(m).value == doctest::Approx(0.0));
    }
    SUBCASE("complement of a halfspace reverses the inequality") {
        LinearModel m;
        VarId y = m.add_var();
        add_complement_constraint(m, GeometricSet(Halfspace(Vec::Ones(1), 0.5)), {y});
        m.set_objective(Sense::Minimize, LinExpr::var(y));
        SolveOutcome out = solve_lp(m);
        REQUIRE(out.optimal());
        CHECK(out.value >= 0.5);
    }
    SUBCASE("complement of a complement is the inner polytope") {
        Mat c(1, 1);
        c << 1.0;
        Vec d(1);
        d << 0.5;
        PolytopeComplement pc{HPolytope(c, d)};
        LinearModel m;
        VarId y = m.add_var();
        add_complement_constraint(m, GeometricSet(pc), {y});
        m.set_objective(Sense::Maximize, LinExpr::var(y));
        SolveOutcome out = solve_lp(m);
        REQUIRE(out.optimal());
        CHECK(out.value == doctest::Approx(0.5));
    }
    SUBCASE("nonconvex cases are rejected") {
        LinearModel m;
        VarId y = m.add_var();
        Mat c(1, 1);
        c << 1.0;
        Vec d(1);
        d << 0.5;
        CHECK_THROWS_AS(add_set_constraint(m, GeometricSet(PolytopeComplement{HPolytope(c, d)}), {y}),
                        Unsupported);
        CHECK_THROWS_AS(add_complement_constraint(m, GeometricSet(HPolytope(c, d)), {y}),
                        Unsupported);
    }
}
