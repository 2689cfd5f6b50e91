#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "psicalc/constants.hpp"
#include "psicalc/harnack.hpp"

using namespace psicalc;
using doctest::Approx;

namespace {

VertexFunction random_positive(std::mt19937_64& rng, int n, double spread = 1.0) {
    VertexFunction f(n);
    for (int v = 0; v < n; ++v) {
        double u1 = (rng() >> 11) * 0x1.0p-53, u2 = (rng() >> 11) * 0x1.0p-53;
        if (u1 < 1e-300) u1 = 1e-300;
        f[v] = std::exp(spread * std::sqrt(-2.0 * std::log(u1)) *
                        std::cos(6.283185307179586 * u2));
    }
    return f;
}

}  // namespace

TEST_CASE("bound closed forms and validation") {
    HarnackParams p;
    p.D1 = 1.0;
    p.D2 = 1.5;
    p.D3 = 0.0;
    p.H_psi = 2.0;
    p.dist = 0.0;
    p.T1 = 0.5;
    p.T2 = 2.0;
    CHECK(harnack_bound(p) == Approx(1.5 * std::log(4.0)));

    p.D3 = 0.25;
    CHECK(harnack_bound(p) == Approx(1.5 * std::log(4.0) + 0.25 * 1.5));

    // the distance enters squared
    p.D3 = 0.0;
    p.dist = 3.0;
    CHECK(harnack_bound(p) == Approx(1.5 * std::log(4.0) + 2.0 * 9.0 / 1.5));

    // collapsing time interval with positive distance diverges
    p.T2 = 0.5 + 1e-12;
    CHECK(harnack_bound(p) > 1e10);

    p.T2 = 2.0;
    p.T1 = -1.0;
    CHECK_THROWS_AS(harnack_bound(p), std::invalid_argument);
    p.T1 = 3.0;
    CHECK_THROWS_AS(harnack_bound(p), std::invalid_argument);
    p.T1 = 0.5;
    p.D1 = 0.0;
    CHECK_THROWS_AS(harnack_bound(p), std::invalid_argument);
    p.D1 = 1.0;
    p.dist = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(harnack_bound(p), std::invalid_argument);
}

TEST_CASE("with D2 = D3 = 0 the bound shrinks as the time gap grows") {
    double prev = std::numeric_limits<double>::infinity();
    for (double t2 : {1.1, 1.5, 2.0, 4.0, 16.0}) {
        HarnackParams p;
        p.D1 = 1.0;
        p.D2 = 0.0;
        p.D3 = 0.0;
        p.H_psi = 2.0;
        p.dist = 2.0;
        p.T1 = 1.0;
        p.T2 = t2;
        const double b = harnack_bound(p);
        CHECK(b < prev);
        prev = b;
    }
}

TEST_CASE("gradient estimate agrees with the li-yau rewrite for log") {
    // for psi = log, psi'(1) = 1, the hypothesis with D1=1, D2=d/2, D3=0 is
    // exactly -psi_laplacian(u) <= d/(2t)
    Graph c6 = builtin_graph("cycle6");
    std::mt19937_64 rng(31);
    VertexFunction f0 = random_positive(rng, c6.n);
    std::vector<double> times = log_spaced_times(5e-2, 5.0, 12);
    std::vector<double> grid{0.0};
    grid.insert(grid.end(), times.begin(), times.end());
    HeatSolution u = solve_heat(c6, f0, grid);

    const double d = 2.0 / 0.795;
    GradientEstimateReport grad = gradient_estimate_check(psi_log(), u, 1.0, d / 2.0, 0.0);
    LiYauReport ly = liyau_check(c6, psi_log(), f0, d, times);
    CHECK(grad.worst_margin == Approx(ly.worst_margin).epsilon(1e-10));
    CHECK(grad.holds == ly.holds);
    CHECK(grad.holds);
}

TEST_CASE("gradient estimate implies the two-point bound end to end") {
    std::mt19937_64 rng(32);
    const double C = c_psi(psi_log(), 1e-9).value;
    const double H = harnack_constant(psi_log(), 1e-9).value;
    struct Case {
        const char* name;
        int D;
    };
    for (const auto& [name, D] : {Case{"cycle6", 2}, Case{"torus3x3", 4}}) {
        Graph g = builtin_graph(name);
        const double d = D / C;
        for (int rep = 0; rep < 3; ++rep) {
            VertexFunction f0 = random_positive(rng, g.n);
            std::vector<double> times = log_spaced_times(5e-2, 5.0, 8);
            std::vector<double> grid{0.0};
            grid.insert(grid.end(), times.begin(), times.end());
            HeatSolution u = solve_heat(g, f0, grid);
            HarnackReport h = harnack_check(psi_log(), u, 1.0, d / 2.0, 0.0, H);
            CHECK(h.hypothesis.holds);
            CHECK(h.pairs_violated == 0);
            CHECK(h.holds);
            CHECK(h.tightest_slack >= -1e-9);
            CHECK(h.pairs_checked == static_cast<long long>(g.n) * g.n * 8 * 7 / 2);
        }
    }
    Graph two = from_edge_list(4, {{0, 1}, {2, 3}});
    HeatSolution u2 = solve_heat(two, VertexFunction(4, 1.0), {0.0, 1.0});
    CHECK_THROWS_AS(harnack_check(psi_log(), u2, 1.0, 1.0, 0.0, 2.0), std::invalid_argument);
}

TEST_CASE("edge estimate holds for arbitrary positive functions") {
    std::mt19937_64 rng(33);
    for (const char* name : {"cycle6", "torus3x3", "hypercube3"}) {
        Graph g = builtin_graph(name);
        for (const PsiSpec& psi : {psi_log(), psi_sqrt()}) {
            for (int rep = 0; rep < 10; ++rep) {
                VertexFunction f = random_positive(rng, g.n);
                EdgeEstimateReport e = gamma_psi_edge_estimate(g, psi, f);
                CHECK(e.holds);
                CHECK(e.worst_margin <= 1e-9);
            }
        }
    }
}

TEST_CASE("ricci-flat bound beats the prior-work form") {
    const double C = c_psi(psi_log(), 1e-9).value;
    const double H = harnack_constant(psi_log(), 1e-9).value;
    CHECK(std::fabs(1.0 / (2.0 * C) - 0.629) <= 4e-3);
    CHECK(std::fabs(2.0 * C - 1.59) <= 1e-2);

    // rigorous constants C >= 1/2, H = 2 give D log(T2/T1) + 2 d^2/(T2-T1)
    const double rigorous = ricci_flat_harnack_bound(3, 0.5, 2.0, 2.0, 0.5, 2.0);
    CHECK(rigorous == Approx(3.0 * std::log(4.0) + 2.0 * 4.0 / 1.5));

    for (double ratio : {1.5, 4.0, 100.0}) {
        const double ours = ricci_flat_harnack_bound(2, C, H, 1.0, 1.0, ratio);
        const double prior = 2.0 * std::log(ratio) + 4.0 * 1.0 / (ratio - 1.0);
        CHECK(ours < prior);
    }
    CHECK_THROWS_AS(ricci_flat_harnack_bound(2, 0.0, 2.0, 1.0, 0.5, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(ricci_flat_harnack_bound(2, psi_sqrt(), 1.0, 0.5, 2.0),
                    std::invalid_argument);
}
