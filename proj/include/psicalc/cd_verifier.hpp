#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psicalc/psi_ops.hpp"

namespace psicalc {

struct CdPsiVertexReport {
    int vertex = -1;
    double best_ratio = 0.0;    // largest (Delta^psi f)^2 / Gamma2^psi(f) found
    double worst_margin = 0.0;  // smallest Gamma2^psi(f) - (1/d)(Delta^psi f)^2 found
    VertexFunction best_witness;
    VertexFunction margin_witness;
};

struct CdPsiReport {
    double d = 0.0;
    bool violated = false;
    std::string verdict;
    long long budget = 0;
    std::uint64_t seed = 0;
    int witness_vertex = -1;
    std::vector<CdPsiVertexReport> per_vertex;
};

// Budgeted falsifier for Gamma2^psi(f) >= (1/d)(Delta^psi f)^2 over all
// positive f. Samples are supported on ball(g,x,2) with f(x)=1 (lossless by
// locality and scaling invariance) and refined by coordinate descent.
// Deterministic given seed; per-vertex RNG streams are independent.
CdPsiReport cdpsi_check(const Graph& g, const PsiSpec& psi, double d, long long budget,
                        std::uint64_t seed);

// Per-vertex empirical supremum of the ratio; monotone in budget for aligned
// checkpoint budgets with the same seed.
std::vector<double> cdpsi_best_dimension(const Graph& g, const PsiSpec& psi, long long budget,
                                         std::uint64_t seed);
double cdpsi_best_dimension_graph(const Graph& g, const PsiSpec& psi, long long budget,
                                  std::uint64_t seed);

struct CdCorollaryReport {
    bool consistent = false;
    double factor = 0.0;  // -psi''(1)/psi'(1)^2
    std::vector<double> exact_d;      // classical cd_dimension per vertex
    std::vector<double> empirical_d;  // factor * empirical best psi-dimension
    double worst_gap = 0.0;           // max over vertices of exact - empirical
};
// Checks that the exact classical dimension is consistent with the empirical
// psi-dimension mapped through CD(-psi''(1)/psi'(1)^2 * d, 0).
CdCorollaryReport cd_corollary_check(const Graph& g, const PsiSpec& psi, long long budget,
                                     std::uint64_t seed, double slack);

}  // namespace psicalc
