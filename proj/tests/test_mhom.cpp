#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <bit>
#include <set>
#include <vector>

#include "homtop/mhom.hpp"
#include "homtop/polysearch.hpp"
#include "homtop/topology.hpp"

#include "support.hpp"

using namespace homtop;
using testsupport::complete;
using testsupport::cycle;
using testsupport::path;

namespace {

Graph k2() { return Graph(2, {{0, 1}}); }

Graph single_loop() { return Graph(1, {{0, 0}}); }

// every pair of vertex sets with a complete edge product, by brute force
std::set<std::vector<std::uint64_t>> brute_mhom_pairs(const Graph& h) {
    std::set<std::vector<std::uint64_t>> out;
    const std::uint64_t full = (std::uint64_t{1} << h.n()) - 1;
    for (std::uint64_t a = 1; a <= full; ++a)
        for (std::uint64_t b = 1; b <= full; ++b) {
            bool ok = true;
            for (int x = 0; x < h.n() && ok; ++x)
                for (int y = 0; y < h.n() && ok; ++y)
                    if ((a >> x & 1) && (b >> y & 1) && !h.adjacent(x, y)) ok = false;
            if (ok) out.insert({a, b});
        }
    return out;
}

bool valid_witness_path(const MhomPoset& mp, const EdgeFlipWitness& w) {
    const auto& [u, v] = w.edge;
    if (w.path.empty()) return false;
    const Multihom front{{std::uint64_t{1} << u, std::uint64_t{1} << v}};
    const Multihom back{{std::uint64_t{1} << v, std::uint64_t{1} << u}};
    if (!(mp.elements[w.path.front()] == front)) return false;
    if (!(mp.elements[w.path.back()] == back)) return false;
    for (std::size_t i = 0; i + 1 < w.path.size(); ++i)
        if (!mp.poset.comparable(w.path[i], w.path[i + 1]) || w.path[i] == w.path[i + 1])
            return false;
    return true;
}

}  // namespace

TEST_CASE("triangle multihoms: the twelve-element bundle") {
    const MhomPoset mp = build_mhom(k2(), complete(3));
    REQUIRE(mp.elements.size() == 12);

    const std::vector<std::vector<std::uint64_t>> expected{
        {1, 2}, {1, 4}, {1, 6}, {2, 1}, {2, 4}, {2, 5},
        {3, 4}, {4, 1}, {4, 2}, {4, 3}, {5, 2}, {6, 1}};
    for (std::size_t i = 0; i < expected.size(); ++i)
        REQUIRE(mp.elements[i].sets == expected[i]);

    // matches the brute-force pair enumeration
    const auto brute = brute_mhom_pairs(complete(3));
    REQUIRE(brute.size() == 12);
    for (const auto& m : mp.elements) REQUIRE(brute.count(m.sets) == 1);

    // a single circular bundle: every element comparable to exactly two
    // others, one comparability component
    for (int i = 0; i < 12; ++i) {
        int deg = 0;
        for (int j = 0; j < 12; ++j)
            if (i != j && mp.poset.comparable(i, j)) ++deg;
        REQUIRE(deg == 2);
    }
    REQUIRE(connected_components(mp.poset).size() == 1);

    const SimplicialComplex cx = order_complex(mp.poset);
    REQUIRE(cx.face_counts() == std::vector<std::size_t>{12, 12});
    const auto groups = homology(cx, 1);
    REQUIRE(groups[0].betti == 1);
    REQUIRE(groups[1].betti == 1);
    REQUIRE(groups[0].torsion.empty());
    REQUIRE(groups[1].torsion.empty());
    REQUIRE(euler_characteristic(cx) == 0);
}

TEST_CASE("small multihom families") {
    const MhomPoset k2k2 = build_mhom(k2(), k2());
    const std::vector<std::vector<std::uint64_t>> expected{{1, 2}, {2, 1}};
    REQUIRE(k2k2.elements.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) REQUIRE(k2k2.elements[i].sets == expected[i]);
    REQUIRE(connected_components(k2k2.poset).size() == 2);

    const MhomPoset looped = build_mhom(k2(), single_loop());
    REQUIRE(looped.elements.size() == 1);
    REQUIRE(looped.elements[0].sets == std::vector<std::uint64_t>{1, 1});

    // brute-force agreement across assorted small targets
    for (const Graph& h : {complete(3), cycle(4), cycle(5), path(3), single_loop()}) {
        const auto got = build_mhom(k2(), h);
        const auto brute = brute_mhom_pairs(h);
        REQUIRE(got.elements.size() == brute.size());
        for (const auto& m : got.elements) REQUIRE(brute.count(m.sets) == 1);
    }
}

TEST_CASE("multihoms from larger sources") {
    // path on three vertices into the triangle; middle set must be
    // jointly adjacent to both end sets
    const MhomPoset mp = build_mhom(path(3), complete(3));
    for (const auto& m : mp.elements)
        for (auto [u, v] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}}) {
            std::uint64_t a = m.sets[u];
            while (a) {
                const int x = std::countr_zero(a);
                a &= a - 1;
                REQUIRE((m.sets[v] & ~complete(3).neighbours_mask(x)) == 0);
            }
        }
    // looped source vertex forces cliques of looped vertices; the
    // triangle has none, so a triangle with a loop admits sets only at
    // the looped vertex
    Graph loop_tri(3, {{0, 1}, {0, 2}, {1, 2}, {0, 0}});
    const MhomPoset lmp = build_mhom(Graph(1, {{0, 0}}), loop_tri);
    REQUIRE(lmp.elements.size() == 1);
    REQUIRE(lmp.elements[0].sets == std::vector<std::uint64_t>{1});

    REQUIRE_THROWS_AS(build_mhom(Graph(2, {}), complete(3)), std::invalid_argument);
    REQUIRE_THROWS_AS(build_mhom(k2(), Graph(0, {})), std::invalid_argument);
    REQUIRE_THROWS_AS(build_mhom(k2(), complete(3), 5), BudgetError);
}

TEST_CASE("flip is an order involution fixed exactly on the loops") {
    for (const Graph& h : {complete(3), cycle(4), cycle(5), single_loop(),
                           Graph(3, {{0, 1}, {1, 2}, {1, 1}})}) {
        const MhomPoset mp = build_mhom(k2(), h);
        const FlipReport fl = flip(mp);
        const int n = static_cast<int>(mp.elements.size());
        for (int i = 0; i < n; ++i) {
            REQUIRE(fl.map.values[fl.map.values[i]] == i);
            const bool symmetric = mp.elements[i].sets[0] == mp.elements[i].sets[1];
            REQUIRE((fl.map.values[i] == i) == symmetric);
        }
        REQUIRE(is_monotone(mp.poset, mp.poset, fl.map.values));
        const bool any_fixed = !fl.fixed_elements.empty();
        REQUIRE(any_fixed == has_loop(h).has_value());
    }
}

TEST_CASE("edge flip witnesses") {
    REQUIRE_FALSE(edge_flip_witness(build_mhom(k2(), k2())).has_value());
    REQUIRE_FALSE(edge_flip_witness(build_mhom(k2(), cycle(4))).has_value());
    REQUIRE_FALSE(edge_flip_witness(build_mhom(k2(), path(3))).has_value());

    const MhomPoset k3 = build_mhom(k2(), complete(3));
    const auto wk3 = edge_flip_witness(k3);
    REQUIRE(wk3.has_value());
    REQUIRE(valid_witness_path(k3, *wk3));

    const MhomPoset c5 = build_mhom(k2(), cycle(5));
    const auto wc5 = edge_flip_witness(c5);
    REQUIRE(wc5.has_value());
    REQUIRE(valid_witness_path(c5, *wc5));

    const MhomPoset lp = build_mhom(k2(), single_loop());
    const auto wlp = edge_flip_witness(lp);
    REQUIRE(wlp.has_value());
    REQUIRE(wlp->edge == std::pair<int, int>{0, 0});
    REQUIRE(wlp->path.size() == 1);
}

TEST_CASE("induced setwise operations") {
    // majority folded through the retraction of the four-cycle onto an
    // edge: edge-preserving and fully symmetric, though not idempotent
    const Graph c4 = cycle(4);
    const int fold[4] = {0, 1, 0, 1};
    PolymorphismTable maj;
    maj.h = c4;
    maj.arity = 3;
    maj.table.resize(64);
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            for (int z = 0; z < 4; ++z)
                maj.table[(x * 4 + y) * 4 + z] =
                    (fold[x] + fold[y] + fold[z] >= 2) ? 1 : 0;
    REQUIRE(verify_polymorphism(maj, make_identity_system("majority", 3, {"x", "y"},
                                                          {{{"x", "x", "y"}, {"x", "y", "x"}},
                                                           {{"x", "y", "x"}, {"y", "x", "x"}}},
                                                          false))
                .ok);

    const MhomPoset mp = build_mhom(k2(), c4);
    REQUIRE(mp.elements.size() == 18);
    const InducedOperation op = induce_on_mhom(maj, mp);
    const int n = static_cast<int>(mp.elements.size());

    // closure and monotonicity in every coordinate, exhaustively
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const auto base = op.apply({a, b, c});
                REQUIRE(base.has_value());
                for (int bigger = 0; bigger < n; ++bigger) {
                    if (!mp.poset.less(a, bigger)) continue;
                    const auto up = op.apply({bigger, b, c});
                    REQUIRE(up.has_value());
                    REQUIRE(mp.poset.leq(*base, *up));
                }
            }

    // the flip commutes with the induced operation (both act pointwise)
    const FlipReport fl = flip(mp);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const auto img = op.apply({a, b, a});
            const auto flipped =
                op.apply({fl.map.values[a], fl.map.values[b], fl.map.values[a]});
            REQUIRE(fl.map.values[*img] == *flipped);
        }

    // a non-polymorphism is rejected: the constant map sends edges to
    // the missing loop at 0
    PolymorphismTable bad;
    bad.h = c4;
    bad.arity = 1;
    bad.table = {0, 0, 0, 0};
    REQUIRE_THROWS_AS(induce_on_mhom(bad, mp), std::invalid_argument);
}

TEST_CASE("sub-taylor verification on the two-element poset is exhaustive and clean") {
    const auto k2s4 = search_polymorphism(complete(2), siggers4());
    REQUIRE(k2s4.status == SearchStatus::Sat);
    const auto derivation = derive_taylor_witness(siggers4(), *k2s4.table);
    REQUIRE(derivation.witness.has_value());

    const MhomPoset mp = build_mhom(k2(), complete(2));
    const auto report = verify_sub_taylor(*derivation.witness, mp);
    REQUIRE(report.exhaustive);
    REQUIRE(report.tuples_checked == 16);
    REQUIRE(report.pairs_checked == 4);
    REQUIRE(report.diagonals_checked == 2);
    REQUIRE(report.violations.empty());
}

TEST_CASE("sub-taylor verification flags a transported non-idempotent witness") {
    const auto k2s4 = search_polymorphism(complete(2), siggers4());
    const Graph c6 = cycle(6);
    std::vector<int> to_k2(6), to_c6{0, 1};
    for (int v = 0; v < 6; ++v) to_k2[v] = v % 2;
    const auto moved = transport_polymorphism(*k2s4.table, c6, to_k2, to_c6);
    const auto derivation = derive_taylor_witness(siggers4(), moved);
    REQUIRE(derivation.witness.has_value());

    const MhomPoset mp = build_mhom(k2(), c6);
    REQUIRE(mp.elements.size() == 24);
    const auto report = verify_sub_taylor(*derivation.witness, mp, 2000, 20260816);
    REQUIRE_FALSE(report.exhaustive);
    REQUIRE_FALSE(report.violations.empty());
    bool diagonal_found = false;
    for (const auto& v : report.violations) {
        if (v.kind == SubTaylorViolation::Kind::Diagonal) {
            diagonal_found = true;
            REQUIRE(v.elements.size() == 1);
            REQUIRE(v.elements[0] >= 0);
            REQUIRE(v.elements[0] < 24);
        }
        REQUIRE(v.kind != SubTaylorViolation::Kind::Closure);
    }
    REQUIRE(diagonal_found);
}

TEST_CASE("the twelve-element bundle is ramified") {
    const MhomPoset mp = build_mhom(k2(), complete(3));
    const auto cert = is_ramified_certified(mp.poset, 12);
    REQUIRE(cert.ramified);
    REQUIRE(cert.irreducibles.empty());
    REQUIRE(cert.lemma_agreement);
}
