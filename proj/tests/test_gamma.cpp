#include "doctest.h"

#include <cmath>
#include <random>

#include "psicalc/gamma.hpp"

using namespace psicalc;
using doctest::Approx;

namespace {

std::mt19937_64 rng_for(int k) { return std::mt19937_64(0x9E3779B9ULL + 1000 * k); }

double uniform(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

VertexFunction random_f(std::mt19937_64& rng, int n) {
    VertexFunction f(n);
    for (int v = 0; v < n; ++v) f[v] = 2.0 * uniform(rng) - 1.0;
    return f;
}

}  // namespace

TEST_CASE("laplacian closed forms") {
    Graph c4 = builtin_graph("cycle4");
    VertexFunction f{1.0, 2.0, 3.0, 4.0};
    VertexFunction lf = laplacian(c4, f);
    CHECK(lf[0] == Approx((2.0 - 1.0) + (4.0 - 1.0)));
    CHECK(lf[1] == Approx((1.0 - 2.0) + (3.0 - 2.0)));
    CHECK(laplacian_at(c4, f, 3) == Approx(lf[3]));

    VertexFunction ones(4, 5.5);
    for (double x : laplacian(c4, ones)) CHECK(x == Approx(0.0));
}

TEST_CASE("gamma on an edge and the local difference identity") {
    Graph k2 = from_edge_list(2, {{0, 1}});
    VertexFunction f{0.0, 1.0};
    VertexFunction gf = gamma(k2, f);
    CHECK(gf[0] == Approx(0.5));
    CHECK(gf[1] == Approx(0.5));

    Graph t = builtin_graph("torus3x3");
    auto rng = rng_for(1);
    VertexFunction a = random_f(rng, t.n), b = random_f(rng, t.n);
    VertexFunction gab = gamma(t, a, b);
    for (int x = 0; x < t.n; ++x) {
        double s = 0.0;
        for (int w : t.adj[x]) s += (a[w] - a[x]) * (b[w] - b[x]);
        CHECK(gab[x] == Approx(0.5 * s).epsilon(1e-12));
    }
}

TEST_CASE("gamma2 bilinearity, symmetry, and the local evaluation") {
    Graph q3 = builtin_graph("hypercube3");
    auto rng = rng_for(2);
    VertexFunction a = random_f(rng, q3.n), b = random_f(rng, q3.n);
    VertexFunction g_ab = gamma2(q3, a, b);
    VertexFunction g_ba = gamma2(q3, b, a);
    for (int x = 0; x < q3.n; ++x) CHECK(g_ab[x] == Approx(g_ba[x]).epsilon(1e-12));

    VertexFunction g_a = gamma2(q3, a);
    for (int x = 0; x < q3.n; ++x) CHECK(gamma2_at(q3, a, x) == Approx(g_a[x]).epsilon(1e-12));

    // K2 with f = (0,1): Gamma2 = 1 at both vertices
    Graph k2 = from_edge_list(2, {{0, 1}});
    VertexFunction f{0.0, 1.0};
    VertexFunction g2 = gamma2(k2, f);
    CHECK(g2[0] == Approx(1.0));
    CHECK(g2[1] == Approx(1.0));
}

TEST_CASE("quadratic form reproduces gamma2 and the laplacian") {
    Graph c6 = builtin_graph("cycle6");
    LocalQuadraticForm form = gamma2_form(c6, 0);
    auto rng = rng_for(3);
    for (int trial = 0; trial < 20; ++trial) {
        VertexFunction f = random_f(rng, c6.n);
        Eigen::VectorXd coord(form.coords.size());
        for (std::size_t i = 0; i < form.coords.size(); ++i) coord[i] = f[form.coords[i]];
        CHECK(coord.dot(form.Q * coord) == Approx(gamma2_at(c6, f, 0)).epsilon(1e-10));
        CHECK(form.lin.dot(coord) == Approx(laplacian_at(c6, f, 0)).epsilon(1e-10));
    }
}

TEST_CASE("optimal CD dimensions on reference graphs") {
    CHECK(cd_dimension(from_edge_list(2, {{0, 1}}), 0).d_min == Approx(1.0).epsilon(1e-9));
    for (const char* name : {"cycle4", "cycle5", "cycle6", "cycle12"}) {
        Graph g = builtin_graph(name);
        for (int v = 0; v < g.n; ++v) {
            CdDimension d = cd_dimension(g, v);
            CHECK_FALSE(d.fails);
            CHECK(d.d_min == Approx(2.0).epsilon(1e-9));
        }
    }
    CHECK(cd_dimension(builtin_graph("complete3"), 0).d_min == Approx(1.6).epsilon(1e-9));
}

TEST_CASE("no sampled function beats the reported dimension, and the bound is tight") {
    Graph c6 = builtin_graph("cycle6");
    const double d_min = cd_dimension(c6, 0).d_min;
    auto rng = rng_for(4);
    std::vector<int> support = ball(c6, 0, 2);

    double best = 0.0;
    VertexFunction best_f;
    for (int trial = 0; trial < 2000; ++trial) {
        VertexFunction f(c6.n, 0.0);
        for (int v : support) f[v] = 2.0 * uniform(rng) - 1.0;
        const double den = gamma2_at(c6, f, 0);
        if (den < 1e-12) continue;
        const double lap = laplacian_at(c6, f, 0);
        const double ratio = lap * lap / den;
        CHECK(ratio <= d_min + 1e-6);
        if (ratio > best) {
            best = ratio;
            best_f = f;
        }
    }
    // coordinate-ascent refinement of the best sample approaches d_min
    double step = 0.25;
    while (step > 1e-7) {
        bool improved = false;
        for (int v : support) {
            for (double dir : {step, -step}) {
                VertexFunction f = best_f;
                f[v] += dir;
                const double den = gamma2_at(c6, f, 0);
                if (den < 1e-12) continue;
                const double lap = laplacian_at(c6, f, 0);
                const double ratio = lap * lap / den;
                CHECK(ratio <= d_min + 1e-6);
                if (ratio > best) {
                    best = ratio;
                    best_f = f;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    CHECK(best == Approx(d_min).epsilon(1e-3));
}

TEST_CASE("cd_dimension only depends on the radius-2 ball") {
    Graph p6 = builtin_graph("path6");
    Graph p6_tail = from_edge_list(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}});
    CdDimension a = cd_dimension(p6, 0);
    CdDimension b = cd_dimension(p6_tail, 0);
    CHECK(a.d_min == Approx(b.d_min).epsilon(1e-12));
}
