#include "doctest.h"

#include <set>
#include <sstream>

#include "qtri/graph.hpp"
#include "qtri/oracle.hpp"
#include "qtri/rng.hpp"
#include "test_support.hpp"

using namespace qtri;

TEST_CASE("query_edge answers adjacency and meters every probe") {
    const Graph k4 = gen_graph(GraphFamily::Complete, 4, 0);
    OracleSession session(k4, 1);
    CHECK(session.exact_queries() == 0);
    CHECK(query_edge(session, 1, 2));
    CHECK(session.exact_queries() == 1);

    const Graph empty5(5);
    OracleSession empty_session(empty5, 1);
    CHECK_FALSE(query_edge(empty_session, 2, 3));

    const Graph path = testing::path_graph(3);
    OracleSession path_session(path, 1);
    CHECK_FALSE(query_edge(path_session, 1, 3));

    CHECK_THROWS_AS(query_edge(session, 2, 2), std::domain_error);
    CHECK_THROWS_AS(query_edge(session, 0, 2), std::domain_error);
    CHECK_THROWS_AS(query_edge(session, 1, 5), std::domain_error);
}

TEST_CASE("two_path_count matches the definition") {
    const Graph k4 = gen_graph(GraphFamily::Complete, 4, 0);
    CHECK(two_path_count(k4, 1, 2) == 2);
    CHECK(two_path_count(k4, 3, 4) == 2);

    const Graph path = testing::path_graph(3);
    CHECK(two_path_count(path, 1, 3) == 1);

    const Graph empty(6);
    CHECK(two_path_count(empty, 2, 5) == 0);
    CHECK_THROWS_AS(two_path_count(empty, 3, 3), std::domain_error);
}

TEST_CASE("two_path_count symmetry on random graphs") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const Graph g = gen_graph(GraphFamily::ErdosRenyi, 24, seed, 0.4);
        for (int a = 1; a <= g.n(); ++a) {
            for (int b = a + 1; b <= g.n(); ++b) {
                CHECK(two_path_count(g, a, b) == two_path_count(g, b, a));
            }
        }
    }
}

TEST_CASE("threshold_graph membership and monotonicity") {
    const Graph empty(5);
    CHECK(threshold_graph(empty, 0).size() == 10);  // C(5,2), t == 0 everywhere

    const Graph k4 = gen_graph(GraphFamily::Complete, 4, 0);
    CHECK(threshold_graph(k4, 1).empty());
    CHECK(threshold_graph(k4, 2).size() == 6);

    const Graph g = gen_graph(GraphFamily::ErdosRenyi, 20, 3, 0.5);
    for (int k = 0; k + 1 <= 6; ++k) {
        const auto narrow = threshold_graph(g, k);
        const auto wide = threshold_graph(g, k + 1);
        const std::set<VertexPair> wide_set(wide.begin(), wide.end());
        for (const auto& pair : narrow) CHECK(wide_set.count(pair) == 1);
    }
}

TEST_CASE("triangle counting identity: edge-wise two-path sum is 3 t(G)") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const Graph g = gen_graph(GraphFamily::ErdosRenyi, 32, seed, 0.3);
        std::uint64_t sum = 0;
        for (const auto& [a, b] : g.edges()) sum += static_cast<std::uint64_t>(two_path_count(g, a, b));
        CHECK(sum == 3 * triangle_count(g));
    }
}

TEST_CASE("brute_find_triangle ground truth") {
    const Graph k4 = gen_graph(GraphFamily::Complete, 4, 0);
    CHECK(brute_find_triangle(k4) == Triangle{1, 2, 3});

    const Graph bip = gen_graph(GraphFamily::TriangleFreeBipartite, 12, 5);
    CHECK_FALSE(brute_find_triangle(bip).has_value());

    CHECK_FALSE(brute_find_triangle(testing::cycle_graph(5)).has_value());
}

TEST_CASE("brute_find_triangle agrees with direct triple enumeration") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const Graph g = gen_graph(GraphFamily::ErdosRenyi, 40, seed, 0.12);
        bool any = false;
        for (int a = 1; a <= g.n() && !any; ++a)
            for (int b = a + 1; b <= g.n() && !any; ++b)
                for (int c = b + 1; c <= g.n() && !any; ++c)
                    any = g.adjacent(a, b) && g.adjacent(a, c) && g.adjacent(b, c);
        const auto found = brute_find_triangle(g);
        CHECK(found.has_value() == any);
        if (found) {
            CHECK(g.adjacent((*found)[0], (*found)[1]));
            CHECK(g.adjacent((*found)[0], (*found)[2]));
            CHECK(g.adjacent((*found)[1], (*found)[2]));
        }
    }
}

TEST_CASE("brute_find_copy embeds small patterns") {
    const Graph k4 = gen_graph(GraphFamily::Complete, 4, 0);
    Graph k3(3);
    k3.add_edge(1, 2);
    k3.add_edge(1, 3);
    k3.add_edge(2, 3);
    const auto triangle = brute_find_copy(k4, k3);
    REQUIRE(triangle.has_value());
    CHECK(k4.adjacent((*triangle)[0], (*triangle)[1]));

    CHECK_FALSE(brute_find_copy(testing::cycle_graph(5), k3).has_value());

    const auto path_map = brute_find_copy(k4, testing::path_graph(3));
    REQUIRE(path_map.has_value());
    CHECK(k4.adjacent((*path_map)[0], (*path_map)[1]));
    CHECK(k4.adjacent((*path_map)[1], (*path_map)[2]));

    CHECK_THROWS_AS(brute_find_copy(k4, Graph(9)), std::invalid_argument);
}

TEST_CASE("brute_find_copy preserves every pattern edge") {
    const Graph g = gen_graph(GraphFamily::ErdosRenyi, 16, 9, 0.5);
    const Graph h = gen_graph(GraphFamily::ErdosRenyi, 4, 2, 0.6);
    if (const auto m = brute_find_copy(g, h)) {
        for (const auto& [a, b] : h.edges()) {
            CHECK(g.adjacent((*m)[static_cast<std::size_t>(a - 1)], (*m)[static_cast<std::size_t>(b - 1)]));
        }
        const std::set<int> images(m->begin(), m->end());
        CHECK(images.size() == m->size());  // injective
    }
}

TEST_CASE("gen_graph families") {
    const Graph k4 = gen_graph(GraphFamily::Complete, 4, 0);
    CHECK(k4.edge_count() == 6);

    const Graph bip = gen_graph(GraphFamily::TriangleFreeBipartite, 10, 7);
    CHECK_FALSE(brute_find_triangle(bip).has_value());

    for (std::uint64_t seed = 1; seed <= 16; ++seed) {
        CHECK(brute_find_triangle(gen_graph(GraphFamily::PlantedTriangle, 12, seed, 0.05)).has_value());
    }

    const Graph a = gen_graph(GraphFamily::ErdosRenyi, 64, 7);
    const Graph b = gen_graph(GraphFamily::ErdosRenyi, 64, 7);
    CHECK(a.edges() == b.edges());
    const Graph c = gen_graph(GraphFamily::ErdosRenyi, 64, 8);
    CHECK(a.edges() != c.edges());

    CHECK_THROWS_AS(gen_graph(GraphFamily::Complete, 2, 0), std::invalid_argument);
}

TEST_CASE("edge list round trip and parse errors") {
    const Graph g = gen_graph(GraphFamily::ErdosRenyi, 30, 11, 0.3);
    std::ostringstream out;
    write_edge_list(g, out);
    std::istringstream in(out.str());
    const Graph back = read_edge_list(in);
    CHECK(back.n() == g.n());
    CHECK(back.edges() == g.edges());

    auto expect_parse_error = [](const std::string& text, int line) {
        std::istringstream bad(text);
        try {
            read_edge_list(bad);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == line);
        }
    };
    expect_parse_error("3 1\n2 2\n", 2);       // self-loop
    expect_parse_error("3 2\n1 2\n1 2\n", 3);  // duplicate
    expect_parse_error("3 1\n2 1\n", 2);       // not canonical
    expect_parse_error("3 1\n1 4\n", 2);       // out of range
    expect_parse_error("nope\n", 1);           // bad header
}

TEST_CASE("ledger total equals the sum of its entries") {
    CostLedger ledger;
    ledger.charge("a", 3);
    ledger.charge("b", 4.0);
    ledger.charge("c", 0.0);
    double sum = 0;
    for (const auto& entry : ledger.entries()) sum += entry.amount;
    CHECK(ledger.total() == sum);
    CHECK(ledger.entries().size() == 3);
    CHECK_THROWS_AS(ledger.charge("bad", -1.0), std::invalid_argument);
}
