#include "psicalc/harnack.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "psicalc/constants.hpp"
#include "psicalc/gamma.hpp"
#include "psicalc/psi_ops.hpp"

namespace psicalc {

double harnack_bound(const HarnackParams& p) {
    if (!(p.T1 > 0.0) || !(p.T2 > p.T1))
        throw std::invalid_argument("harnack_bound: require 0 < T1 < T2");
    if (!(p.D1 > 0.0)) throw std::invalid_argument("harnack_bound: D1 must be positive");
    if (!std::isfinite(p.dist) || p.dist < 0.0)
        throw std::invalid_argument("harnack_bound: distance must be finite and nonnegative");
    double bound = p.D2 * std::log(p.T2 / p.T1) + p.D3 * (p.T2 - p.T1);
    if (p.dist > 0.0) bound += p.H_psi * p.dist * p.dist / (p.D1 * (p.T2 - p.T1));
    return bound;
}

GradientEstimateReport gradient_estimate_check(const PsiSpec& psi, const HeatSolution& u,
                                               double D1, double D2, double D3) {
    GradientEstimateReport rep;
    rep.worst_margin = -std::numeric_limits<double>::infinity();
    const Graph& g = u.graph;
    for (std::size_t k = 0; k < u.times.size(); ++k) {
        const double t = u.times[k];
        if (!(t > 0.0)) continue;
        const VertexFunction& ut = u.values[k];
        VertexFunction gpsi = gamma_psi(g, psi, ut);
        VertexFunction lap = laplacian(g, ut);
        for (int x = 0; x < g.n; ++x) {
            const double margin = D1 * gpsi[x] - lap[x] / ut[x] - D2 / t - D3;
            if (margin > rep.worst_margin) {
                rep.worst_margin = margin;
                rep.worst_vertex = x;
                rep.worst_time = t;
            }
        }
    }
    rep.holds = rep.worst_margin <= 1e-9;
    return rep;
}

HarnackReport harnack_check(const PsiSpec& psi, const HeatSolution& u, double D1, double D2,
                            double D3, double H_psi, double tol) {
    const Graph& g = u.graph;
    if (!is_connected(g)) throw std::invalid_argument("harnack_check: graph must be connected");

    HarnackReport rep;
    rep.hypothesis = gradient_estimate_check(psi, u, D1, D2, D3);
    rep.tightest_slack = std::numeric_limits<double>::infinity();

    std::vector<std::vector<int>> dist(g.n, std::vector<int>(g.n, 0));
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) dist[a][b] = distance(g, a, b);

    for (std::size_t k1 = 0; k1 < u.times.size(); ++k1) {
        const double T1 = u.times[k1];
        if (!(T1 > 0.0)) continue;
        for (std::size_t k2 = k1 + 1; k2 < u.times.size(); ++k2) {
            const double T2 = u.times[k2];
            for (int x1 = 0; x1 < g.n; ++x1) {
                for (int x2 = 0; x2 < g.n; ++x2) {
                    HarnackParams p;
                    p.D1 = D1;
                    p.D2 = D2;
                    p.D3 = D3;
                    p.H_psi = H_psi;
                    p.dist = dist[x1][x2];
                    p.T1 = T1;
                    p.T2 = T2;
                    const double lhs = std::log(u.values[k1][x1]) - std::log(u.values[k2][x2]);
                    const double slack = harnack_bound(p) - lhs;
                    ++rep.pairs_checked;
                    if (slack < -tol) ++rep.pairs_violated;
                    if (slack < rep.tightest_slack) {
                        rep.tightest_slack = slack;
                        rep.tight_x1 = x1;
                        rep.tight_x2 = x2;
                        rep.tight_T1 = T1;
                        rep.tight_T2 = T2;
                    }
                }
            }
        }
    }
    rep.holds = rep.pairs_violated == 0;
    return rep;
}

double ricci_flat_harnack_bound(int D, double c_psi_value, double h_psi_value, double dist,
                                double T1, double T2) {
    if (D <= 0) throw std::invalid_argument("ricci_flat_harnack_bound: D must be positive");
    if (c_psi_value <= kCPsiDegenerate)
        throw std::invalid_argument("ricci_flat_harnack_bound: C_psi must be positive");
    HarnackParams p;
    p.D1 = 1.0;
    p.D2 = static_cast<double>(D) / (2.0 * c_psi_value);
    p.D3 = 0.0;
    p.H_psi = h_psi_value;
    p.dist = dist;
    p.T1 = T1;
    p.T2 = T2;
    return harnack_bound(p);
}

double ricci_flat_harnack_bound(int D, const PsiSpec& psi, double dist, double T1, double T2) {
    const double c = c_psi(psi, 1e-9).value;
    const double h = harnack_constant(psi, 1e-9).value;
    return ricci_flat_harnack_bound(D, c, h, dist, T1, T2);
}

EdgeEstimateReport gamma_psi_edge_estimate(const Graph& g, const PsiSpec& psi,
                                           const VertexFunction& f, double tol) {
    EdgeEstimateReport rep;
    rep.worst_margin = -std::numeric_limits<double>::infinity();
    const double h = harnack_constant(psi, 1e-9).value;
    VertexFunction gpsi = gamma_psi(g, psi, f);
    for (int v = 0; v < g.n; ++v) {
        for (int w : g.adj[v]) {
            const double margin =
                std::log(f[w] / f[v]) - std::sqrt(std::max(0.0, h * gpsi[v]));
            if (margin > rep.worst_margin) {
                rep.worst_margin = margin;
                rep.worst_v = v;
                rep.worst_w = w;
            }
        }
    }
    rep.holds = rep.worst_margin <= tol;
    return rep;
}

}  // namespace psicalc
