#include "psicalc/cd_verifier.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "psicalc/gamma.hpp"

namespace psicalc {

namespace {

constexpr double kSampleClampLo = 1e-4;  // keeps all ratios inside the psi window
constexpr double kSampleClampHi = 1e4;
constexpr double kGamma2Floor = 1e-12;   // ratio undefined below this
constexpr double kViolationTol = 1e-9;

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct NormalSource {
    std::mt19937_64 rng;
    explicit NormalSource(std::uint64_t seed) : rng(seed) {}
    double uniform() { return (rng() >> 11) * 0x1.0p-53; }
    // Box-Muller, one deviate per call (fixed two draws, portable and
    // prefix-stable across budgets)
    double normal() {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793238462643 * u2);
    }
};

struct VertexSearch {
    const Graph& g;
    const PsiSpec& psi;
    int x;
    std::vector<int> support;  // ball(g,x,2) minus x
    VertexFunction f;          // scratch, 1 outside the support

    VertexSearch(const Graph& graph, const PsiSpec& p, int center)
        : g(graph), psi(p), x(center), f(graph.n, 1.0) {
        for (int v : ball(graph, center, 2))
            if (v != center) support.push_back(v);
    }

    void ratio_parts(double& num, double& den) const {
        const double dl = psi_laplacian_at(g, psi, f, x);
        num = dl * dl;
        den = gamma2_psi_at(g, psi, f, x);
    }
};

struct BestState {
    double ratio = -std::numeric_limits<double>::infinity();
    double margin = std::numeric_limits<double>::infinity();
    VertexFunction ratio_witness;
    VertexFunction margin_witness;
};

void absorb(BestState& best, const VertexSearch& vs, double num, double den, double d) {
    if (den > kGamma2Floor && num / den > best.ratio) {
        best.ratio = num / den;
        best.ratio_witness = vs.f;
    }
    if (d > 0.0) {
        const double margin = den - num / d;
        if (margin < best.margin) {
            best.margin = margin;
            best.margin_witness = vs.f;
        }
    }
}

// coordinate descent on the ratio: multiplicative steps e^{+-h}, h halving
// from 0.5 to 1e-4, ties broken by coordinate order
void refine(VertexSearch& vs, BestState& best, double d) {
    if (best.ratio_witness.empty()) return;
    VertexFunction saved = vs.f;
    vs.f = best.ratio_witness;
    double num, den;
    vs.ratio_parts(num, den);
    double cur = (den > kGamma2Floor) ? num / den : -std::numeric_limits<double>::infinity();
    long long evals = 0;
    for (double h = 0.5; h >= 1e-4 && evals < 50000;) {
        bool improved = false;
        for (int w : vs.support) {
            for (double sign : {1.0, -1.0}) {
                const double old = vs.f[w];
                const double cand = std::clamp(old * std::exp(sign * h), kSampleClampLo,
                                               kSampleClampHi);
                if (cand == old) continue;
                vs.f[w] = cand;
                vs.ratio_parts(num, den);
                ++evals;
                absorb(best, vs, num, den, d);
                const double val =
                    (den > kGamma2Floor) ? num / den : -std::numeric_limits<double>::infinity();
                if (val > cur) {
                    cur = val;
                    improved = true;
                    break;  // first improving coordinate move wins
                }
                vs.f[w] = old;
            }
            if (improved) break;
        }
        if (!improved) h *= 0.5;
    }
    if (cur > best.ratio) {
        best.ratio = cur;
        best.ratio_witness = vs.f;
    }
    vs.f = saved;
}

CdPsiVertexReport search_vertex(const Graph& g, const PsiSpec& psi, int x, double d,
                                long long budget, std::uint64_t seed) {
    VertexSearch vs(g, psi, x);
    NormalSource noise(splitmix64(seed ^ splitmix64(0x5C17ED00ULL + static_cast<std::uint64_t>(x))));
    BestState best;

    static const double kSigmas[3] = {0.25, 1.0, 3.0};
    long long next_checkpoint = 100;
    for (long long k = 0; k < budget; ++k) {
        const double sigma = kSigmas[k % 3];
        for (int w : vs.support)
            vs.f[w] = std::clamp(std::exp(sigma * noise.normal()), kSampleClampLo, kSampleClampHi);
        double num, den;
        vs.ratio_parts(num, den);
        absorb(best, vs, num, den, d);
        if (k + 1 == next_checkpoint) {
            refine(vs, best, d);
            next_checkpoint *= 4;
        }
    }
    refine(vs, best, d);
    for (int w : vs.support) vs.f[w] = 1.0;

    CdPsiVertexReport rep;
    rep.vertex = x;
    rep.best_ratio = (best.ratio > 0.0) ? best.ratio : 0.0;
    rep.worst_margin = best.margin;
    rep.best_witness = std::move(best.ratio_witness);
    rep.margin_witness = std::move(best.margin_witness);
    if (rep.best_witness.empty()) rep.best_witness.assign(g.n, 1.0);
    if (rep.margin_witness.empty()) rep.margin_witness.assign(g.n, 1.0);
    return rep;
}

}  // namespace

CdPsiReport cdpsi_check(const Graph& g, const PsiSpec& psi, double d, long long budget,
                        std::uint64_t seed) {
    if (budget <= 0) throw std::invalid_argument("cdpsi_check: budget must be positive");
    if (!(d > 0.0)) throw std::invalid_argument("cdpsi_check: d must be positive");
    if (!psi.claims_concave)
        throw std::invalid_argument("cdpsi_check: psi '" + psi.name + "' is not marked concave");

    CdPsiReport rep;
    rep.d = d;
    rep.budget = budget;
    rep.seed = seed;
    double worst = std::numeric_limits<double>::infinity();
    for (int x = 0; x < g.n; ++x) {
        rep.per_vertex.push_back(search_vertex(g, psi, x, d, budget, seed));
        const auto& vr = rep.per_vertex.back();
        if (vr.worst_margin < worst) {
            worst = vr.worst_margin;
            rep.witness_vertex = x;
        }
    }
    rep.violated = worst < -kViolationTol;
    rep.verdict = rep.violated ? "violated"
                               : "no counterexample found (budget " + std::to_string(budget) + ")";
    return rep;
}

std::vector<double> cdpsi_best_dimension(const Graph& g, const PsiSpec& psi, long long budget,
                                         std::uint64_t seed) {
    if (budget <= 0) throw std::invalid_argument("cdpsi_best_dimension: budget must be positive");
    std::vector<double> out;
    out.reserve(g.n);
    for (int x = 0; x < g.n; ++x)
        out.push_back(search_vertex(g, psi, x, 0.0, budget, seed).best_ratio);
    return out;
}

double cdpsi_best_dimension_graph(const Graph& g, const PsiSpec& psi, long long budget,
                                  std::uint64_t seed) {
    double best = 0.0;
    for (double v : cdpsi_best_dimension(g, psi, budget, seed)) best = std::max(best, v);
    return best;
}

CdCorollaryReport cd_corollary_check(const Graph& g, const PsiSpec& psi, long long budget,
                                     std::uint64_t seed, double slack) {
    if (!psi.has_d2()) throw std::invalid_argument("cd_corollary_check: psi needs d2");
    CdCorollaryReport rep;
    const double slope = psi.d1(1.0);
    rep.factor = -psi.d2(1.0) / (slope * slope);
    std::vector<double> emp = cdpsi_best_dimension(g, psi, budget, seed);
    rep.consistent = true;
    rep.worst_gap = -std::numeric_limits<double>::infinity();
    for (int x = 0; x < g.n; ++x) {
        CdDimension exact = cd_dimension(g, x);
        const double mapped = rep.factor * emp[x];
        rep.empirical_d.push_back(mapped);
        if (exact.fails) {
            rep.exact_d.push_back(std::numeric_limits<double>::infinity());
            rep.consistent = false;
            continue;
        }
        rep.exact_d.push_back(exact.d_min);
        rep.worst_gap = std::max(rep.worst_gap, exact.d_min - mapped);
        if (exact.d_min > mapped + slack) rep.consistent = false;
    }
    return rep;
}

}  // namespace psicalc
