#include <catch2/catch_amalgamated.hpp>

#include "homtop/graph.hpp"
#include "support.hpp"

using namespace homtop;
using testsupport::complete;
using testsupport::cycle;
using testsupport::path;

TEST_CASE("edge list parsing renumbers sorted labels") {
    Graph g = parse_graph("1 2\n2 3\n3 1\n", GraphFormat::EdgeList);
    REQUIRE(g.n() == 3);
    REQUIRE(g.edges() == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("edge list accepts comments, blanks and loops") {
    Graph g = parse_graph("# a loop plus an edge\n\n7 7\n7 9   # trailing comment\n", GraphFormat::EdgeList);
    REQUIRE(g.n() == 2);
    REQUIRE(g.edges() == std::vector<std::pair<int, int>>{{0, 0}, {0, 1}});
}

TEST_CASE("edge list parse errors carry line numbers") {
    using Catch::Matchers::ContainsSubstring;
    REQUIRE_THROWS_MATCHES(parse_edge_list("0 1\nx 2\n"), ParseError,
                           Catch::Matchers::MessageMatches(ContainsSubstring("line 2")));
    REQUIRE_THROWS_MATCHES(parse_edge_list("0 1 2\n"), ParseError,
                           Catch::Matchers::MessageMatches(ContainsSubstring("line 1")));
    REQUIRE_THROWS_MATCHES(parse_edge_list("0\n"), ParseError,
                           Catch::Matchers::MessageMatches(ContainsSubstring("two vertex labels")));
    REQUIRE_THROWS_MATCHES(parse_edge_list("0 99999999999999999999\n"), ParseError,
                           Catch::Matchers::MessageMatches(ContainsSubstring("overflow")));
}

TEST_CASE("empty edge list text gives the empty graph") {
    Graph g = parse_edge_list("");
    REQUIRE(g.n() == 0);
    REQUIRE(g.edges().empty());
    auto cert = is_bipartite(g);
    REQUIRE(cert.bipartite);
    REQUIRE(cert.part0.empty());
    REQUIRE(cert.part1.empty());
}

TEST_CASE("graph6 Bw is the triangle") {
    Graph g = parse_graph("Bw", GraphFormat::Graph6);
    REQUIRE(g == complete(3));
    REQUIRE(serialize_graph6(complete(3)) == "Bw");
}

TEST_CASE("graph6 accepts the optional header") {
    REQUIRE(parse_graph6(">>graph6<<Bw\n") == complete(3));
}

TEST_CASE("graph6 parse errors carry byte offsets") {
    using Catch::Matchers::ContainsSubstring;
    REQUIRE_THROWS_MATCHES(parse_graph6("B"), ParseError,
                           Catch::Matchers::MessageMatches(ContainsSubstring("truncated")));
    REQUIRE_THROWS_MATCHES(parse_graph6("Bww"), ParseError,
                           Catch::Matchers::MessageMatches(ContainsSubstring("trailing garbage")));
    REQUIRE_THROWS_MATCHES(parse_graph6(std::string("B") + char(1)), ParseError,
                           Catch::Matchers::MessageMatches(ContainsSubstring("invalid byte")));
    REQUIRE_THROWS_MATCHES(parse_graph6(""), ParseError,
                           Catch::Matchers::MessageMatches(ContainsSubstring("empty")));
}

TEST_CASE("graph6 cannot serialize loops") {
    Graph g(1, {{0, 0}});
    REQUIRE_THROWS_AS(serialize_graph6(g), std::invalid_argument);
}

TEST_CASE("round trips hold on small graphs") {
    for (int n = 0; n <= 4; ++n)
        for (const auto& g : testsupport::all_loopless_graphs(n)) {
            REQUIRE(parse_graph6(serialize_graph6(g)) == g);
            Graph back = parse_edge_list(serialize_edge_list(g));
            // edge-list drops isolated vertices; compare edge sets modulo that
            REQUIRE(back.edges().size() == g.edges().size());
        }
    std::mt19937_64 rng(20260816);
    for (int rep = 0; rep < 20; ++rep) {
        Graph g = testsupport::random_graph(12, rng);
        REQUIRE(parse_graph6(serialize_graph6(g)) == g);
    }
}

TEST_CASE("long-form graph6 vertex counts round trip") {
    Graph g(70, {{0, 69}, {3, 5}});
    REQUIRE(parse_graph6(serialize_graph6(g)) == g);
}

TEST_CASE("has_loop reports the smallest looped vertex") {
    REQUIRE_FALSE(has_loop(complete(3)).has_value());
    Graph g(4, {{2, 2}, {3, 3}, {0, 1}});
    REQUIRE(has_loop(g) == 2);
}

TEST_CASE("bipartite certificate for C4") {
    auto cert = is_bipartite(cycle(4));
    REQUIRE(cert.bipartite);
    REQUIRE(cert.part0 == std::vector<int>{0, 2});
    REQUIRE(cert.part1 == std::vector<int>{1, 3});
    REQUIRE(validate_bipartite_certificate(cycle(4), cert));
}

TEST_CASE("odd walk certificate for K3") {
    auto cert = is_bipartite(complete(3));
    REQUIRE_FALSE(cert.bipartite);
    REQUIRE(cert.odd_closed_walk == std::vector<int>{0, 1, 2, 0});
    REQUIRE(validate_bipartite_certificate(complete(3), cert));
}

TEST_CASE("loops give a length-one closed walk") {
    Graph g(3, {{0, 1}, {2, 2}});
    auto cert = is_bipartite(g);
    REQUIRE_FALSE(cert.bipartite);
    REQUIRE(cert.odd_closed_walk == std::vector<int>{2, 2});
    REQUIRE(validate_bipartite_certificate(g, cert));
}

TEST_CASE("bipartiteness matches the 2-colouring oracle on all graphs up to 4 vertices") {
    for (int n = 0; n <= 4; ++n)
        for (const auto& base : testsupport::all_loopless_graphs(n))
            for (const auto& g : testsupport::loop_variants(base)) {
                auto cert = is_bipartite(g);
                bool expect = !has_loop(g) && testsupport::oracle_two_colourable(g);
                REQUIRE(cert.bipartite == expect);
                REQUIRE(validate_bipartite_certificate(g, cert));
            }
}

TEST_CASE("find_homomorphism basic directions") {
    REQUIRE(find_homomorphism(complete(2), complete(3)).has_value());
    REQUIRE_FALSE(find_homomorphism(complete(3), complete(2)).has_value());
    REQUIRE(find_homomorphism(cycle(5), cycle(3)).has_value());
    REQUIRE_FALSE(find_homomorphism(cycle(3), cycle(5)).has_value());
    REQUIRE(find_homomorphism(cycle(6), complete(2)).has_value());
}

static void check_core(const Graph& g, int expect_size) {
    auto res = compute_core(g);
    REQUIRE(res.core.n() == expect_size);
    REQUIRE(testsupport::oracle_is_core(res.core));
    // retraction is a homomorphism onto the core fixing it pointwise
    REQUIRE(testsupport::is_hom(g, res.core, res.retraction));
    for (std::size_t i = 0; i < res.core_vertices.size(); ++i)
        REQUIRE(res.retraction[res.core_vertices[i]] == static_cast<int>(i));
}

TEST_CASE("cores of standard small graphs") {
    check_core(path(3), 2);
    check_core(cycle(4), 2);
    check_core(cycle(6), 2);
    check_core(cycle(5), 5);
    check_core(complete(3), 3);
    check_core(complete(4), 4);
    check_core(Graph(2, {}), 1);
    check_core(Graph(0, {}), 0);
    // a loop absorbs everything
    check_core(Graph(2, {{0, 0}, {0, 1}}), 1);
    Graph looped_core = compute_core(Graph(2, {{0, 0}, {0, 1}})).core;
    REQUIRE(has_loop(looped_core).has_value());
}

TEST_CASE("core is idempotent and respects the size guard") {
    auto res = compute_core(cycle(6));
    auto res2 = compute_core(res.core);
    REQUIRE(res2.core == res.core);
    REQUIRE_THROWS_AS(compute_core(testsupport::complete(9)), BudgetError);
}

TEST_CASE("every core up to 5 vertices has only surjective endomorphisms") {
    for (int n = 1; n <= 4; ++n)
        for (const auto& base : testsupport::all_loopless_graphs(n))
            for (const auto& g : testsupport::loop_variants(base)) {
                auto res = compute_core(g);
                REQUIRE(testsupport::oracle_is_core(res.core));
                REQUIRE(testsupport::is_hom(g, res.core, res.retraction));
            }
}
