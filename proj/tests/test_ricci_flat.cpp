#include "doctest.h"

#include <stdexcept>

#include "psicalc/constants.hpp"
#include "psicalc/ricci_flat.hpp"

using namespace psicalc;
using doctest::Approx;

namespace {

// shift maps on a cycle: eta_1 = +1, eta_2 = -1 (mod n)
EtaMaps cycle_shift_maps(int n, int v) {
    EtaMaps m;
    m.center = v;
    m.domain = {(v + n - 1) % n, v, (v + 1) % n};
    std::sort(m.domain.begin(), m.domain.end());
    m.eta.assign(2, std::vector<int>(3, -1));
    for (int j = 0; j < 3; ++j) {
        m.eta[0][j] = (m.domain[j] + 1) % n;
        m.eta[1][j] = (m.domain[j] + n - 1) % n;
    }
    return m;
}

}  // namespace

TEST_CASE("shift maps on the 5-cycle verify") {
    Graph c5 = builtin_graph("cycle5");
    for (int v = 0; v < 5; ++v) {
        RfVerdict verdict = verify_ricci_flat(c5, v, cycle_shift_maps(5, v));
        CHECK(verdict.valid);
        CHECK(verdict.violations.empty());
    }
}

TEST_CASE("corrupted maps report the failing condition") {
    Graph c5 = builtin_graph("cycle5");
    EtaMaps m = cycle_shift_maps(5, 0);

    EtaMaps not_adjacent = m;
    not_adjacent.eta[0][1] = 3;  // eta_1(1) = 3, but 3 is not a neighbor of 1
    RfVerdict v1 = verify_ricci_flat(c5, 0, not_adjacent);
    CHECK_FALSE(v1.valid);
    REQUIRE(!v1.violations.empty());
    CHECK(v1.violations[0].condition == "r1");

    EtaMaps collide = m;
    collide.eta[1] = collide.eta[0];  // both maps equal: r2 breaks everywhere
    RfVerdict v2 = verify_ricci_flat(c5, 0, collide);
    CHECK_FALSE(v2.valid);
    REQUIRE(!v2.violations.empty());
    CHECK(v2.violations[0].condition == "r2");

    // keep r1 and r2 but break the commuting-union condition on the 4-cycle
    Graph c4 = builtin_graph("cycle4");
    EtaMaps r3break;
    r3break.center = 0;
    r3break.domain = {0, 1, 3};
    r3break.eta = {{1, 0, 0}, {3, 2, 2}};
    RfVerdict v3 = verify_ricci_flat(c4, 0, r3break);
    CHECK_FALSE(v3.valid);
    REQUIRE(!v3.violations.empty());
    CHECK(v3.violations[0].condition == "r3");
}

TEST_CASE("whole-graph certification") {
    for (const char* name : {"cycle4", "cycle6", "cycle12", "torus3x3", "hypercube3",
                             "complete2"}) {
        Graph g = builtin_graph(name);
        RicciFlatCertificate cert = is_ricci_flat(g);
        CHECK(cert.ricci_flat);
        for (int v = 0; v < g.n; ++v) {
            REQUIRE(cert.per_vertex[v].status == RfSearchStatus::Found);
            CHECK(verify_ricci_flat(g, v, cert.per_vertex[v].maps).valid);
            CHECK(eta_permutation_check(g, cert.per_vertex[v].maps).ok);
        }
    }
    CHECK(is_ricci_flat(builtin_graph("cycle6")).D == 2);
    CHECK(is_ricci_flat(builtin_graph("torus3x3")).D == 4);
    CHECK(is_ricci_flat(builtin_graph("hypercube3")).D == 3);
}

TEST_CASE("paths and stars are rejected") {
    RicciFlatCertificate p3 = is_ricci_flat(builtin_graph("path3"));
    CHECK_FALSE(p3.ricci_flat);
    CHECK(!p3.failure_reason.empty());

    RicciFlatCertificate s3 = is_ricci_flat(builtin_graph("star3"));
    CHECK_FALSE(s3.ricci_flat);
}

TEST_CASE("abelian Cayley graphs are certified") {
    // the triangular prism Z3 x Z2 and the 8-cycle as Z8 with generator 3
    Graph prism = cayley_abelian({3, 2}, {{1, 0}, {0, 1}});
    CHECK(is_ricci_flat(prism).ricci_flat);
    Graph c8_skip = cayley_abelian({8}, {{3}});
    RicciFlatCertificate cert = is_ricci_flat(c8_skip);
    CHECK(cert.ricci_flat);
    CHECK(cert.D == 2);
}

TEST_CASE("the search is deterministic") {
    Graph t = builtin_graph("torus3x3");
    RfSearchResult a = find_ricci_flat_structure(t, 4, 10'000'000);
    RfSearchResult b = find_ricci_flat_structure(t, 4, 10'000'000);
    REQUIRE(a.status == RfSearchStatus::Found);
    CHECK(a.maps.eta == b.maps.eta);
    CHECK(a.nodes == b.nodes);
}

TEST_CASE("a tiny node budget reports exhaustion, not absence") {
    Graph t = builtin_graph("torus3x3");
    RfSearchResult r = find_ricci_flat_structure(t, 0, 3);
    CHECK(r.status == RfSearchStatus::Exhausted);
}

TEST_CASE("permutation check rejects tampered maps") {
    Graph c6 = builtin_graph("cycle6");
    EtaMaps m = cycle_shift_maps(6, 0);
    EtaPermutationCheck good = eta_permutation_check(c6, m);
    CHECK(good.ok);
    // eta_1 inverts eta_2 and vice versa on a cycle
    CHECK(good.j_of_i == std::vector<int>{1, 0});
}

TEST_CASE("certified dimension from the degree and C_psi") {
    const double C = c_psi(psi_log(), 1e-9).value;
    CHECK(ricci_flat_cdpsi_dimension(2, C) == Approx(2.5153342104).epsilon(1e-6));
    CHECK(ricci_flat_cdpsi_dimension(2, psi_log()) == Approx(2.0 / C).epsilon(1e-12));
    CHECK(ricci_flat_cdpsi_dimension(4, C) == Approx(2.0 * (2.0 / C)).epsilon(1e-12));
    CHECK_THROWS_AS(ricci_flat_cdpsi_dimension(2, psi_sqrt()), std::invalid_argument);
    CHECK_THROWS_AS(ricci_flat_cdpsi_dimension(0, C), std::invalid_argument);
}
