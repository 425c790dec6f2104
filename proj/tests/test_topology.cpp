#include <catch2/catch_amalgamated.hpp>

#include "homtop/topology.hpp"
#include "support.hpp"

using namespace homtop;

namespace {

Poset chain(int k) {
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i + 1 < k; ++i) rel.emplace_back(i, i + 1);
    return Poset::from_relation(k, rel);
}

Poset crown2() { return Poset::from_relation(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}); }

// hemi-icosahedron: 6 vertices, all 15 edges, 10 triangles
std::vector<std::vector<int>> projective_plane_faces() {
    return {{0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {0, 3, 5}, {0, 4, 5},
            {1, 2, 5}, {1, 3, 4}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}};
}

// elements ordered by (dimension, lex); relation is proper inclusion
Poset face_poset(const SimplicialComplex& c) {
    std::vector<std::vector<int>> all;
    for (int d = 0; d <= c.max_dim(); ++d)
        for (const auto& f : c.faces(d)) all.push_back(f);
    std::vector<std::pair<int, int>> rel;
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = 0; j < all.size(); ++j)
            if (i != j && std::includes(all[j].begin(), all[j].end(), all[i].begin(), all[i].end()) &&
                all[i].size() < all[j].size())
                rel.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return Poset::from_relation(static_cast<int>(all.size()), rel);
}

std::vector<long long> betti_vector(const std::vector<HomologyGroup>& h) {
    std::vector<long long> out;
    for (const auto& g : h) out.push_back(g.betti);
    return out;
}

}  // namespace

TEST_CASE("from_faces closes downward and sorts canonically") {
    auto c = SimplicialComplex::from_faces(3, {{2, 1, 0}});
    REQUIRE(c.face_counts() == std::vector<std::size_t>{3, 3, 1});
    REQUIRE(c.faces(0) == std::vector<std::vector<int>>{{0}, {1}, {2}});
    REQUIRE(c.faces(1) == std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}});
    REQUIRE_THROWS_AS(SimplicialComplex::from_faces(2, {{0, 5}}), std::invalid_argument);
    REQUIRE_THROWS_AS(SimplicialComplex::from_faces(2, {{0, 0}}), std::invalid_argument);
}

TEST_CASE("order complex of a chain is a full simplex") {
    auto c = order_complex(chain(3));
    REQUIRE(c.face_counts() == std::vector<std::size_t>{3, 3, 1});
}

TEST_CASE("order complex of the V poset") {
    Poset v = Poset::from_relation(3, {{0, 2}, {1, 2}});
    auto c = order_complex(v);
    REQUIRE(c.face_counts() == std::vector<std::size_t>{3, 2});
    REQUIRE(c.faces(1) == std::vector<std::vector<int>>{{0, 2}, {1, 2}});
}

TEST_CASE("order complex dimension cap and face budget") {
    auto c = order_complex(chain(5), 1);
    REQUIRE(c.max_dim() == 1);
    REQUIRE(c.face_counts() == std::vector<std::size_t>{5, 10});
    REQUIRE_THROWS_AS(order_complex(chain(20), -1, 100), BudgetError);
}

TEST_CASE("euler characteristics of the basics") {
    auto hollow = SimplicialComplex::from_faces(3, {{0, 1}, {1, 2}, {0, 2}});
    auto filled = SimplicialComplex::from_faces(3, {{0, 1, 2}});
    REQUIRE(euler_characteristic(hollow) == 0);
    REQUIRE(euler_characteristic(filled) == 1);
    REQUIRE(euler_characteristic(SimplicialComplex::from_faces(1, {{0}})) == 1);
}

TEST_CASE("homology of a point, circle, disc and sphere") {
    auto point = SimplicialComplex::from_faces(1, {{0}});
    REQUIRE(betti_vector(homology(point, 1)) == std::vector<long long>{1, 0});

    auto hollow = SimplicialComplex::from_faces(3, {{0, 1}, {1, 2}, {0, 2}});
    auto h1 = homology(hollow, 1);
    REQUIRE(betti_vector(h1) == std::vector<long long>{1, 1});
    REQUIRE(h1[1].torsion.empty());

    auto filled = SimplicialComplex::from_faces(3, {{0, 1, 2}});
    REQUIRE(betti_vector(homology(filled, 2)) == std::vector<long long>{1, 0, 0});

    auto sphere = SimplicialComplex::from_faces(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    REQUIRE(betti_vector(homology(sphere, 2)) == std::vector<long long>{1, 0, 1});

    auto two_points = SimplicialComplex::from_faces(2, {{0}, {1}});
    REQUIRE(betti_vector(homology(two_points, 0)) == std::vector<long long>{2});
}

TEST_CASE("projective plane carries 2-torsion") {
    auto faces = projective_plane_faces();
    auto c = SimplicialComplex::from_faces(6, faces);
    REQUIRE(c.face_counts() == std::vector<std::size_t>{6, 15, 10});
    // closed surface: every edge lies in exactly two triangles
    for (const auto& e : c.faces(1)) {
        int count = 0;
        for (const auto& t : faces)
            if (std::includes(t.begin(), t.end(), e.begin(), e.end())) ++count;
        REQUIRE(count == 2);
    }
    REQUIRE(euler_characteristic(c) == 1);
    auto h = homology(c, 2);
    REQUIRE(betti_vector(h) == std::vector<long long>{1, 0, 0});
    REQUIRE(h[1].torsion == std::vector<bigint>{2});
    REQUIRE(h[2].torsion.empty());
}

TEST_CASE("lefschetz numbers on the circle") {
    auto hollow = SimplicialComplex::from_faces(3, {{0, 1}, {1, 2}, {0, 2}});
    REQUIRE(lefschetz_number(hollow, {0, 1, 2}) == 0);  // identity, equals chi
    REQUIRE(lefschetz_number(hollow, {1, 2, 0}) == 0);  // rotation
    REQUIRE(lefschetz_number(hollow, {0, 2, 1}) == 2);  // reflection
}

TEST_CASE("lefschetz of the identity on a point is one") {
    auto point = SimplicialComplex::from_faces(1, {{0}});
    REQUIRE(lefschetz_number(point, {0}) == 1);
}

TEST_CASE("degenerate images contribute zero") {
    auto filled = SimplicialComplex::from_faces(3, {{0, 1, 2}});
    // collapse everything to vertex 0: only {0} is fixed
    REQUIRE(lefschetz_number(filled, {0, 0, 0}) == 1);
}

TEST_CASE("non-simplicial maps are rejected with the violating face") {
    auto two_edges = SimplicialComplex::from_faces(4, {{0, 1}, {2, 3}});
    REQUIRE_THROWS_WITH(lefschetz_number(two_edges, {0, 2, 1, 3}),
                        Catch::Matchers::ContainsSubstring("{0,1}"));
    REQUIRE_THROWS_AS(lefschetz_number(two_edges, {0, 1}), std::invalid_argument);
    REQUIRE_THROWS_AS(lefschetz_number(two_edges, {0, 1, 2, 9}), std::invalid_argument);
}

TEST_CASE("lefschetz of the identity equals the euler characteristic") {
    std::mt19937_64 rng(20260816);
    int done = 0;
    for (int rep = 0; done < 20; ++rep) {
        Poset p = testsupport::random_poset(6, 0.35, rng);
        auto c = order_complex(p);
        std::vector<int> id(c.vertex_count());
        std::iota(id.begin(), id.end(), 0);
        REQUIRE(lefschetz_number(c, id) == euler_characteristic(c));
        ++done;
    }
}

TEST_CASE("contractibility verdicts for the standard posets") {
    auto v = contractibility_verdicts(Poset::from_relation(3, {{0, 2}, {1, 2}}));
    REQUIRE(v.size() == 1);
    REQUIRE(v[0].verdict == Verdict::Contractible);
    REQUIRE(v[0].dismantle_steps == 2);
    REQUIRE(v[0].residual_size == 1);

    auto cr = contractibility_verdicts(crown2());
    REQUIRE(cr.size() == 1);
    REQUIRE(cr[0].verdict == Verdict::NotContractible);
    REQUIRE(cr[0].witness_dimension == 1);
    REQUIRE(cr[0].dismantle_steps == 0);

    Poset two = Poset::from_relation(3, {{0, 1}});  // chain plus isolated point
    auto both = contractibility_verdicts(two);
    REQUIRE(both.size() == 2);
    REQUIRE(both[0].elements == std::vector<int>{0, 1});
    REQUIRE(both[0].verdict == Verdict::Contractible);
    REQUIRE(both[1].elements == std::vector<int>{2});
    REQUIRE(both[1].verdict == Verdict::Contractible);
}

TEST_CASE("torsion alone refutes contractibility") {
    auto c = SimplicialComplex::from_faces(6, projective_plane_faces());
    Poset fp = face_poset(c);
    REQUIRE(fp.size() == 31);
    auto verdicts = contractibility_verdicts(fp);
    REQUIRE(verdicts.size() == 1);
    REQUIRE(verdicts[0].verdict == Verdict::NotContractible);
    REQUIRE(verdicts[0].witness_dimension == 1);
    REQUIRE(verdicts[0].residual_homology[1].betti == 0);
    REQUIRE(verdicts[0].residual_homology[1].torsion == std::vector<bigint>{2});
}

TEST_CASE("budget exhaustion degrades the verdict to unknown") {
    ContractibilityOptions opts;
    opts.max_faces = 6;
    auto v = contractibility_verdicts(crown2(), opts);
    REQUIRE(v.size() == 1);
    REQUIRE(v[0].verdict == Verdict::Unknown);
    REQUIRE_FALSE(v[0].reason.empty());
}

TEST_CASE("betti numbers are invariant under dismantling") {
    std::mt19937_64 rng(424242);
    for (int rep = 0; rep < 60; ++rep) {
        Poset p = testsupport::random_poset(7, 0.35, rng);
        auto tr = dismantle(p);
        auto before = homology(order_complex(p), 2);
        auto after = homology(order_complex(tr.residual), 2);
        for (int d = 0; d <= 2; ++d) {
            REQUIRE(before[d].betti == after[d].betti);
            REQUIRE(before[d].torsion == after[d].torsion);
        }
    }
}
