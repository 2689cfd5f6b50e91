#include "psicalc/ricci_flat.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "psicalc/constants.hpp"

namespace psicalc {

namespace {

int index_in(const std::vector<int>& sorted, int w) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), w);
    if (it == sorted.end() || *it != w) return -1;
    return static_cast<int>(it - sorted.begin());
}

bool adjacent(const Graph& g, int a, int b) {
    if (a < 0 || a >= g.n || b < 0 || b >= g.n) return false;
    return std::binary_search(g.adj[a].begin(), g.adj[a].end(), b);
}

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

RfVerdict verify_ricci_flat(const Graph& g, int v, const EtaMaps& maps) {
    RfVerdict verdict;
    const int D = static_cast<int>(maps.eta.size());
    std::vector<int> nv = ball(g, v, 1);
    if (maps.center != v || maps.domain != nv) {
        verdict.violations.push_back({"degree", {v}});
        return verdict;
    }
    for (int w : nv)
        if (degree(g, w) != D) verdict.violations.push_back({"degree", {w}});
    if (!verdict.violations.empty()) return verdict;

    const int m = static_cast<int>(nv.size());
    for (int i = 0; i < D; ++i) {
        if (static_cast<int>(maps.eta[i].size()) != m) {
            verdict.violations.push_back({"degree", {v, i + 1}});
            return verdict;
        }
        for (int j = 0; j < m; ++j)
            if (!adjacent(g, maps.eta[i][j], nv[j]))
                verdict.violations.push_back({"r1", {i + 1, nv[j], maps.eta[i][j]}});
    }
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < D; ++i)
            for (int k = i + 1; k < D; ++k)
                if (maps.eta[i][j] == maps.eta[k][j])
                    verdict.violations.push_back({"r2", {i + 1, k + 1, nv[j]}});
    if (!verdict.violations.empty()) return verdict;

    const int vi = index_in(maps.domain, v);
    for (int i = 0; i < D; ++i) {
        const int ui_idx = index_in(maps.domain, maps.eta[i][vi]);
        std::set<int> lhs, rhs;
        for (int k = 0; k < D; ++k) {
            lhs.insert(maps.eta[k][ui_idx]);                                   // eta_k(eta_i(v))
            rhs.insert(maps.eta[i][index_in(maps.domain, maps.eta[k][vi])]);   // eta_i(eta_k(v))
        }
        // the unions must agree and each family must be disjoint (D values)
        if (static_cast<int>(lhs.size()) != D || static_cast<int>(rhs.size()) != D || lhs != rhs)
            verdict.violations.push_back({"r3", {i + 1}});
    }
    verdict.valid = verdict.violations.empty();
    return verdict;
}

RfSearchResult find_ricci_flat_structure(const Graph& g, int v, long long node_limit) {
    RfSearchResult res;
    const int D = degree(g, v);
    std::vector<int> nv = ball(g, v, 1);
    for (int w : nv)
        if (degree(g, w) != D) return res;  // NoneFound: degree precondition fails
    if (D == 0) {  // isolated vertex: the empty family works
        res.status = RfSearchStatus::Found;
        res.maps = {v, nv, {}};
        return res;
    }

    const int m = static_cast<int>(nv.size());
    const int vi = index_in(nv, v);

    // slot order: the row of v first, then neighbor rows in domain order;
    // within a row, map index i ascending; candidates ascending. The first
    // valid assignment in this order is returned.
    std::vector<int> row_order{vi};
    for (int j = 0; j < m; ++j)
        if (j != vi) row_order.push_back(j);

    std::vector<std::vector<int>> eta(D, std::vector<int>(m, -1));
    std::vector<std::set<int>> row_used(m);  // r2 within a row
    std::vector<std::set<int>> col_used(D);  // r3: injectivity of k -> eta_i(u_k)
    const int total_slots = D * m;
    std::vector<int> slot_cand(total_slots, -1);
    long long nodes = 0;
    bool out_of_budget = false;

    int slot = 0;
    while (slot >= 0 && !out_of_budget) {
        if (slot == total_slots) {
            res.status = RfSearchStatus::Found;
            res.maps.center = v;
            res.maps.domain = nv;
            res.maps.eta = eta;
            res.nodes = nodes;
            return res;
        }
        const int r = slot / D;
        const int i = slot % D;
        const int j = row_order[r];
        const int w = nv[j];

        int chosen = -1;
        for (int c = slot_cand[slot] + 1; c < D; ++c) {
            if (++nodes > node_limit) {
                out_of_budget = true;
                break;
            }
            const int cand = g.adj[w][c];
            if (row_used[j].count(cand)) continue;
            if (j != vi) {
                // r3 under r1/r2 saturation: eta_i on neighbor rows must build
                // a bijection onto neighbors(eta_i(v))
                const int ui = eta[i][vi];
                if (!adjacent(g, ui, cand)) continue;
                if (col_used[i].count(cand)) continue;
            }
            chosen = c;
            break;
        }
        if (out_of_budget) break;

        if (chosen < 0) {
            slot_cand[slot] = -1;
            --slot;
            if (slot >= 0) {
                const int pj = row_order[slot / D], pi = slot % D;
                const int prev = eta[pi][pj];
                row_used[pj].erase(prev);
                if (pj != vi) col_used[pi].erase(prev);
                eta[pi][pj] = -1;
            }
            continue;
        }
        slot_cand[slot] = chosen;
        const int cand = g.adj[w][chosen];
        eta[i][j] = cand;
        row_used[j].insert(cand);
        if (j != vi) col_used[i].insert(cand);
        ++slot;
        if (slot < total_slots) slot_cand[slot] = -1;
    }
    res.status = out_of_budget ? RfSearchStatus::Exhausted : RfSearchStatus::NoneFound;
    res.nodes = nodes;
    return res;
}

RicciFlatCertificate is_ricci_flat(const Graph& g, long long node_limit) {
    if (g.n < 1) throw std::invalid_argument("is_ricci_flat: empty graph");
    RicciFlatCertificate cert;
    cert.ricci_flat = true;
    cert.D = degree(g, 0);
    for (int v = 0; v < g.n; ++v) {
        if (degree(g, v) != cert.D && cert.failure_reason.empty()) {
            cert.ricci_flat = false;
            cert.failure_reason = "degree mismatch at vertex " + std::to_string(v);
        }
        cert.per_vertex.push_back(find_ricci_flat_structure(g, v, node_limit));
        const auto& r = cert.per_vertex.back();
        if (r.status != RfSearchStatus::Found) {
            cert.ricci_flat = false;
            if (cert.failure_reason.empty())
                cert.failure_reason =
                    (r.status == RfSearchStatus::Exhausted ? "search budget exhausted at vertex "
                                                           : "no structure exists at vertex ") +
                    std::to_string(v);
        }
    }
    return cert;
}

EtaPermutationCheck eta_permutation_check(const Graph& g, const EtaMaps& maps, std::uint64_t seed) {
    EtaPermutationCheck check;
    const int D = static_cast<int>(maps.eta.size());
    const int vi = index_in(maps.domain, maps.center);
    if (vi < 0) {
        check.detail = "center missing from domain";
        return check;
    }
    check.j_of_i.assign(D, -1);
    for (int i = 0; i < D; ++i) {
        int found = -1;
        for (int j = 0; j < D; ++j) {
            const int uj_idx = index_in(maps.domain, maps.eta[j][vi]);
            if (uj_idx < 0) continue;
            if (maps.eta[i][uj_idx] == maps.center) {
                if (found >= 0) {
                    check.detail = "eta_" + std::to_string(i + 1) + " returns to v twice";
                    return check;
                }
                found = j;
            }
        }
        if (found < 0) {
            check.detail = "eta_" + std::to_string(i + 1) + " never returns to v";
            return check;
        }
        check.j_of_i[i] = found;
    }
    std::vector<int> sorted = check.j_of_i;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < D; ++i)
        if (sorted[i] != i) {
            check.detail = "i -> j(i) is not a permutation";
            return check;
        }

    // random-function sums over both composition orders must agree
    std::uint64_t state = splitmix64(seed ^ 0xABCDEF12345ULL);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> f(g.n);
        for (int u = 0; u < g.n; ++u) {
            state = splitmix64(state);
            f[u] = (state >> 11) * 0x1.0p-53;
        }
        for (int i = 0; i < D; ++i) {
            const int ui_idx = index_in(maps.domain, maps.eta[i][vi]);
            double lhs = 0.0, rhs = 0.0;
            for (int k = 0; k < D; ++k) {
                lhs += f[maps.eta[k][ui_idx]];
                rhs += f[maps.eta[i][index_in(maps.domain, maps.eta[k][vi])]];
            }
            if (std::fabs(lhs - rhs) > 1e-12) {
                check.detail = "composition sums differ for i = " + std::to_string(i + 1);
                return check;
            }
        }
    }
    check.ok = true;
    return check;
}

double ricci_flat_cdpsi_dimension(int D, double c_psi_value) {
    if (D <= 0) throw std::invalid_argument("ricci_flat_cdpsi_dimension: D must be positive");
    if (c_psi_value <= kCPsiDegenerate)
        throw std::invalid_argument(
            "ricci_flat_cdpsi_dimension: CD-psi degenerate for this psi (C_psi <= 0)");
    return static_cast<double>(D) / c_psi_value;
}

double ricci_flat_cdpsi_dimension(int D, const PsiSpec& psi) {
    return ricci_flat_cdpsi_dimension(D, c_psi(psi, 1e-9).value);
}

}  // namespace psicalc
