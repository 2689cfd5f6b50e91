#include "doctest.h"

#include <cmath>
#include <random>

#include "psicalc/heat.hpp"

using namespace psicalc;
using doctest::Approx;

namespace {

VertexFunction random_positive(std::mt19937_64& rng, int n, double spread = 0.8) {
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

TEST_CASE("closed form on a single edge") {
    Graph k2 = from_edge_list(2, {{0, 1}});
    VertexFunction f{0.0, 1.0};
    for (double t : {0.0, 0.1, 0.5, 2.0}) {
        VertexFunction u = heat_semigroup(k2, f, t);
        CHECK(u[0] == Approx(0.5 * (1.0 - std::exp(-2.0 * t))).epsilon(1e-12));
        CHECK(u[1] == Approx(0.5 * (1.0 + std::exp(-2.0 * t))).epsilon(1e-12));
    }
}

TEST_CASE("semigroup property, mass conservation, positivity") {
    Graph t9 = builtin_graph("torus3x3");
    std::mt19937_64 rng(21);
    VertexFunction f = random_positive(rng, t9.n);
    SpectralDecomposition spec = spectral_decomposition(t9);

    VertexFunction ab = heat_semigroup(spec, heat_semigroup(spec, f, 0.3), 0.7);
    VertexFunction whole = heat_semigroup(spec, f, 1.0);
    double mass0 = 0.0, mass1 = 0.0;
    for (int v = 0; v < t9.n; ++v) {
        CHECK(ab[v] == Approx(whole[v]).epsilon(1e-12));
        CHECK(whole[v] > 0.0);
        mass0 += f[v];
        mass1 += whole[v];
    }
    CHECK(mass1 == Approx(mass0).epsilon(1e-12));
}

TEST_CASE("spectral evolution agrees with the power series") {
    Graph c6 = builtin_graph("cycle6");
    std::mt19937_64 rng(22);
    VertexFunction f = random_positive(rng, c6.n);
    VertexFunction a = heat_semigroup(c6, f, 0.7);
    VertexFunction b = heat_semigroup_series(c6, f, 0.7, 60);
    for (int v = 0; v < c6.n; ++v) CHECK(a[v] == Approx(b[v]).epsilon(1e-9));
}

TEST_CASE("solve_heat validates its inputs") {
    Graph c4 = builtin_graph("cycle4");
    VertexFunction f(4, 1.0);
    CHECK_THROWS_AS(solve_heat(c4, f, {0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(solve_heat(c4, f, {0.0, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(solve_heat(c4, {1.0, 1.0, 0.0, 1.0}, {0.0, 1.0}), std::invalid_argument);
    HeatSolution u = solve_heat(c4, f, {0.0, 0.5});
    CHECK(u.values.size() == 2);
    CHECK(u.values[0][2] == Approx(1.0));
}

TEST_CASE("heat identity for the psi operators holds to roundoff") {
    std::mt19937_64 rng(23);
    for (const char* name : {"cycle6", "torus3x3", "hypercube3"}) {
        Graph g = builtin_graph(name);
        VertexFunction f = random_positive(rng, g.n);
        HeatSolution u = solve_heat(g, f, {0.0, 0.05, 0.4, 2.0});
        for (const PsiSpec& psi : {psi_log(), psi_sqrt(), psi_power(0.5)}) {
            for (int k = 1; k < 4; ++k) {
                CHECK(key_identity_residual(psi, u, k) <= 1e-8);
                CHECK(key_identity_residual_gradient_form(psi, u, k) <= 1e-8);
            }
        }
    }
}

TEST_CASE("li-yau bound: passes at the certified dimension, fails below it") {
    Graph c6 = builtin_graph("cycle6");
    std::mt19937_64 rng(24);
    VertexFunction f0 = random_positive(rng, c6.n, 1.0);
    std::vector<double> times = log_spaced_times(1e-2, 10.0, 30);

    LiYauReport good = liyau_check(c6, psi_log(), f0, 2.0 / 0.795, times);
    CHECK(good.holds);
    CHECK(good.worst_margin <= 1e-9);

    // initial data concentrated at one vertex breaks an undersized d
    VertexFunction spike{1.0, 1e-3, 1e-3, 1e-3, 1e-3, 1e-3};
    LiYauReport bad = liyau_check(c6, psi_log(), spike, 0.5, times);
    CHECK_FALSE(bad.holds);
    CHECK(bad.worst_margin > 0.0);
    CHECK(bad.worst_vertex >= 0);

    // margins are monotone in d: larger d only loosens the bound
    LiYauReport mid = liyau_check(c6, psi_log(), f0, 3.0, times);
    LiYauReport big = liyau_check(c6, psi_log(), f0, 6.0, times);
    CHECK(big.worst_margin <= mid.worst_margin);

    CHECK_THROWS_AS(liyau_check(c6, psi_log(), f0, 0.0, times), std::invalid_argument);
    CHECK_THROWS_AS(liyau_check(c6, psi_log(), f0, 2.0, {0.0, 1.0}), std::invalid_argument);
    Graph two = from_edge_list(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(liyau_check(two, psi_log(), VertexFunction(4, 1.0), 2.0, times),
                    std::invalid_argument);
}

TEST_CASE("semigroup inequality and its short-time derivative") {
    Graph c6 = builtin_graph("cycle6");
    std::mt19937_64 rng(25);
    VertexFunction f = random_positive(rng, c6.n);
    const double n = 2.0 / 0.795;
    for (double t : {0.01, 0.1, 1.0, 5.0}) {
        SemigroupReport rep = semigroup_inequality_check(c6, psi_log(), f, t, n);
        CHECK(rep.holds);
        CHECK(rep.worst_margin >= -1e-9);
    }

    // (LHS - RHS)/(2t) converges to f (Gamma2^psi f - (1/n)(Delta^psi f)^2) at
    // first order in t
    VertexFunction g2 = gamma2_psi(c6, psi_log(), f);
    VertexFunction dp = psi_laplacian(c6, psi_log(), f);
    VertexFunction target(c6.n);
    for (int v = 0; v < c6.n; ++v)
        target[v] = f[v] * (g2[v] - dp[v] * dp[v] / n);
    double err_prev = 0.0;
    for (double t : {1e-3, 5e-4}) {
        VertexFunction probe = semigroup_derivative_probe(c6, psi_log(), f, n, t);
        double err = 0.0;
        for (int v = 0; v < c6.n; ++v) err = std::max(err, std::fabs(probe[v] - target[v]));
        if (err_prev > 0.0) CHECK(err_prev / err == Approx(2.0).epsilon(0.25));
        err_prev = err;
    }
}

TEST_CASE("log-spaced grids") {
    std::vector<double> ts = log_spaced_times(1e-2, 10.0, 40);
    CHECK(ts.size() == 40);
    CHECK(ts.front() == Approx(1e-2));
    CHECK(ts.back() == Approx(10.0));
    for (std::size_t i = 1; i < ts.size(); ++i) {
        CHECK(ts[i] > ts[i - 1]);
        if (i >= 2) CHECK(ts[i] / ts[i - 1] == Approx(ts[i - 1] / ts[i - 2]).epsilon(1e-9));
    }
    CHECK_THROWS_AS(log_spaced_times(-1.0, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(log_spaced_times(1.0, 0.5, 5), std::invalid_argument);
    CHECK_THROWS_AS(log_spaced_times(0.1, 1.0, 1), std::invalid_argument);
}
