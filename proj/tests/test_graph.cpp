#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "fderange/bipartite.hpp"
#include "fderange/errors.hpp"
#include "fderange/matching.hpp"
#include "fderange/rng.hpp"

using namespace fderange;

namespace {

std::string k55_edge_list() {
    std::string text = "5 5\n";
    for (int x = 0; x < 5; ++x) {
        for (int y = 0; y < 5; ++y) {
            text += std::to_string(x) + " " + std::to_string(y) + "\n";
        }
    }
    return text;
}

}  // namespace

TEST_CASE("edge list parsing round-trips the complete host") {
    const BipartiteGraph g = parse_edge_list(k55_edge_list());
    CHECK(g.n() == 5);
    CHECK(g.d() == 5);
    CHECK(g.edges().size() == 25);
    CHECK(g.id() == complete_bipartite(5).id());
}

TEST_CASE("edge list parsing accepts comments and the single edge") {
    const BipartiteGraph g = parse_edge_list(
        "# one edge\n1 1\n\n0 0  # trailing comment\n");
    CHECK(g.n() == 1);
    CHECK(g.d() == 1);
    CHECK(g.has_edge(0, 0));
}

TEST_CASE("edge list parsing rejects malformed input") {
    CHECK_THROWS_AS(parse_edge_list(""), ValidationError);
    CHECK_THROWS_AS(parse_edge_list("1 1\n0\n"), MalformedLine);
    CHECK_THROWS_AS(parse_edge_list("1 1\n0 0 0\n"), MalformedLine);
    CHECK_THROWS_AS(parse_edge_list("1 1\nzero 0\n"), MalformedLine);
    CHECK_THROWS_AS(parse_edge_list("2 1\n0 0\n0 0\n"), DuplicateEdge);
    CHECK_THROWS_AS(parse_edge_list("1 1\n0 1\n"), IndexOutOfRange);
    CHECK_THROWS_AS(parse_edge_list("1 1\n-1 0\n"), IndexOutOfRange);

    // 24 lines claiming 5-regularity: one edge short.
    std::string short_list = "5 5\n";
    int emitted = 0;
    for (int x = 0; x < 5; ++x) {
        for (int y = 0; y < 5 && emitted < 24; ++y, ++emitted) {
            short_list += std::to_string(x) + " " + std::to_string(y) + "\n";
        }
    }
    CHECK_THROWS_AS(parse_edge_list(short_list), NotRegular);
}

TEST_CASE("edge list file errors carry the path") {
    CHECK_THROWS_WITH_AS(parse_edge_list_file("/nonexistent/missing.txt"),
                         doctest::Contains("missing.txt"), ValidationError);
}

TEST_CASE("random regular graphs are valid, seeded, and forced when d=n") {
    const BipartiteGraph g = random_regular_bipartite(10, 5, 42);
    CHECK(g.n() == 10);
    CHECK(g.d() == 5);
    for (int x = 0; x < 10; ++x) {
        CHECK(g.neighbors_of_x(x).size() == 5);
        CHECK(g.neighbors_of_y(x).size() == 5);
    }
    CHECK(g.id() == random_regular_bipartite(10, 5, 42).id());

    bool any_difference = false;
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        if (random_regular_bipartite(10, 5, seed).id() != g.id()) {
            any_difference = true;
        }
    }
    CHECK(any_difference);

    CHECK(random_regular_bipartite(5, 5, 9).id() ==
          complete_bipartite(5).id());
    const BipartiteGraph single = random_regular_bipartite(1, 1, 3);
    CHECK(single.edges() == std::vector<Edge>{{0, 0}});

    CHECK_THROWS_AS(random_regular_bipartite(4, 5, 1), ValidationError);
    CHECK_THROWS_AS(random_regular_bipartite(0, 0, 1), ValidationError);
    CHECK_THROWS_AS(random_regular_bipartite(3, 0, 1), ValidationError);
}

TEST_CASE("graph constructor validates regularity") {
    CHECK_THROWS_AS(BipartiteGraph(2, 1, {{0, 0}, {1, 0}}), NotRegular);
    CHECK_THROWS_AS(BipartiteGraph(1, 1, {{0, 0}, {0, 0}}), DuplicateEdge);
    CHECK_THROWS_AS(BipartiteGraph(1, 1, {{0, 2}}), IndexOutOfRange);
}

TEST_CASE("matching on the complete host is the identity") {
    const Matching m = perfect_matching(complete_bipartite(5));
    CHECK(m.pairs() == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(m.as_permutation() == Permutation({0, 1, 2, 3, 4}));
}

TEST_CASE("matching searches cover small and seeded cases") {
    // 4-cycle: x0-y0, x0-y1, x1-y0, x1-y1.
    const BipartiteGraph cycle(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    const Matching m = perfect_matching(cycle);
    CHECK(m.n() == 2);
    CHECK(m.y_of(0) != m.y_of(1));

    const BipartiteGraph g = random_regular_bipartite(8, 5, 4);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const Matching seeded = perfect_matching_seeded(g, seed);
        std::set<int> targets(seeded.pairs().begin(), seeded.pairs().end());
        CHECK(targets.size() == 8);
        CHECK(seeded == perfect_matching_seeded(g, seed));
    }
}

TEST_CASE("matching validation") {
    const BipartiteGraph g = complete_bipartite(3);
    CHECK_THROWS_AS(Matching(g, {0, 1}), SizeMismatch);
    CHECK_THROWS_AS(Matching(g, {0, 1, 3}), IndexOutOfRange);
    CHECK_THROWS_AS(Matching(g, {0, 0, 1}), ValidationError);
    const BipartiteGraph cycle(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK_THROWS_AS(Matching(BipartiteGraph(2, 1, {{0, 1}, {1, 0}}), {0, 1}),
                    ValidationError);  // (0,0) is not an edge there
}

TEST_CASE("removing a matching drops the degree by one") {
    const BipartiteGraph g = complete_bipartite(5);
    const Matching m = perfect_matching(g);
    const BipartiteGraph rest = remove_matching(g, m);
    CHECK(rest.d() == 4);
    CHECK(rest.edges().size() == 20);
    for (int x = 0; x < 5; ++x) CHECK_FALSE(rest.has_edge(x, m.y_of(x)));
}

TEST_CASE("one-factorization partitions the edge set") {
    for (const BipartiteGraph& g :
         {complete_bipartite(5), complete_bipartite(4),
          random_regular_bipartite(9, 5, 17)}) {
        const std::vector<Matching> factors = one_factorization(g);
        REQUIRE(static_cast<int>(factors.size()) == g.d());
        std::set<Edge> seen;
        for (const Matching& m : factors) {
            for (int x = 0; x < g.n(); ++x) {
                const Edge e{x, m.y_of(x)};
                CHECK(g.has_edge(e.x, e.y));
                CHECK(seen.insert(e).second);  // pairwise disjoint
            }
        }
        CHECK(seen.size() == g.edges().size());
    }

    const BipartiteGraph single(2, 1, {{0, 1}, {1, 0}});
    const std::vector<Matching> factors = one_factorization(single);
    REQUIRE(factors.size() == 1);
    CHECK(factors[0].pairs() == std::vector<int>{1, 0});
}
