#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psicalc/graph.hpp"
#include "psicalc/psi.hpp"

namespace psicalc {

// Maps eta_1..eta_D on N(v) = {v} union neighbors(v). domain is sorted
// ascending; eta[i][j] = eta_{i+1}(domain[j]).
struct EtaMaps {
    int center = -1;
    std::vector<int> domain;
    std::vector<std::vector<int>> eta;
};

struct RfViolation {
    std::string condition;  // "degree", "r1", "r2", "r3"
    std::vector<int> witness;
};

struct RfVerdict {
    bool valid = false;
    std::vector<RfViolation> violations;
};
// Exhaustive check of the local Ricci-flat conditions at v:
//   r1: eta_i(w) ~ w;  r2: eta_i(w) != eta_j(w) for i != j;
//   r3: union_k eta_k(eta_i(v)) = union_k eta_i(eta_k(v)) as sets.
RfVerdict verify_ricci_flat(const Graph& g, int v, const EtaMaps& maps);

enum class RfSearchStatus { Found, NoneFound, Exhausted };

struct RfSearchResult {
    RfSearchStatus status = RfSearchStatus::NoneFound;
    EtaMaps maps;
    long long nodes = 0;
};
// Lexicographic backtracking over bijections index -> neighbors(w) per
// w in N(v), with the r3 constraints applied incrementally.
RfSearchResult find_ricci_flat_structure(const Graph& g, int v, long long node_limit);

struct RicciFlatCertificate {
    bool ricci_flat = false;
    int D = -1;
    std::vector<RfSearchResult> per_vertex;
    std::string failure_reason;
};
RicciFlatCertificate is_ricci_flat(const Graph& g, long long node_limit = 10'000'000);

struct EtaPermutationCheck {
    bool ok = false;
    std::vector<int> j_of_i;  // eta_i(eta_{j(i)}(v)) = v
    std::string detail;
};
// For valid maps: each i has a unique j with eta_i(eta_j(v)) = v and i -> j is
// a permutation; also sum_k f(eta_k eta_i(v)) = sum_k f(eta_i eta_k(v)) for
// random f.
EtaPermutationCheck eta_permutation_check(const Graph& g, const EtaMaps& maps,
                                          std::uint64_t seed = 0);

// d = D / C_psi from the degree and the psi constant; throws when C_psi is
// degenerate (<= kCPsiDegenerate).
double ricci_flat_cdpsi_dimension(int D, const PsiSpec& psi);
double ricci_flat_cdpsi_dimension(int D, double c_psi_value);

}  // namespace psicalc
