#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "fderange/bipartite.hpp"
#include "fderange/errors.hpp"
#include "fderange/heuristic.hpp"
#include "fderange/matching.hpp"
#include "fderange/path_decomp.hpp"
#include "fderange/types.hpp"

using namespace fderange;

namespace {

// K_{5,5} minus the identity matching: the 4-regular stage every size-5
// trial works on.
BipartiteGraph k55_minus_identity() {
    const BipartiteGraph host = complete_bipartite(5);
    return remove_matching(host, perfect_matching(host));
}

// A decomposition of K_{5,5} minus the identity whose avoidance function
// [4,5,2,5,4] (1-based) is avoided by the identity matching.
PathDecomposition good_fixture() {
    PathDecomposition pd;
    pd.n = 5;
    pd.paths = {DirectedPath{{0, 1, 2, 3, 4}}, DirectedPath{{4, 2, 0, 3, 1}},
                DirectedPath{{1, 0, 3, 4, 2}}, DirectedPath{{2, 0, 4, 1, 3}},
                DirectedPath{{3, 2, 1, 4, 0}}};
    return pd;
}

// A decomposition of the same graph whose avoidance function [1,1,4,3,2]
// collides with the identity at x0, so the Start attachment repeats y0.
PathDecomposition failing_fixture() {
    PathDecomposition pd;
    pd.n = 5;
    pd.paths = {DirectedPath{{0, 1, 4, 0, 1}}, DirectedPath{{1, 3, 2, 0, 3}},
                DirectedPath{{3, 4, 1, 2, 0}}, DirectedPath{{2, 4, 0, 3, 4}},
                DirectedPath{{4, 2, 3, 1, 2}}};
    return pd;
}

void check_balanced(const BipartiteGraph& g, const EulerianOrientation& o) {
    const int half = g.d() / 2;
    std::vector<int> in_x(static_cast<std::size_t>(g.n()), 0);
    std::vector<int> in_y(static_cast<std::size_t>(g.n()), 0);
    std::set<Edge> covered;
    for (int x = 0; x < g.n(); ++x) {
        CHECK(static_cast<int>(o.out_x[static_cast<std::size_t>(x)].size()) ==
              half);
        for (int y : o.out_x[static_cast<std::size_t>(x)]) {
            CHECK(g.has_edge(x, y));
            CHECK(covered.insert({x, y}).second);
            ++in_y[static_cast<std::size_t>(y)];
        }
    }
    for (int y = 0; y < g.n(); ++y) {
        CHECK(static_cast<int>(o.out_y[static_cast<std::size_t>(y)].size()) ==
              half);
        for (int x : o.out_y[static_cast<std::size_t>(y)]) {
            CHECK(g.has_edge(x, y));
            CHECK(covered.insert({x, y}).second);
            ++in_x[static_cast<std::size_t>(x)];
        }
    }
    CHECK(covered.size() == g.edges().size());
    for (int v = 0; v < g.n(); ++v) {
        CHECK(in_x[static_cast<std::size_t>(v)] == half);
        CHECK(in_y[static_cast<std::size_t>(v)] == half);
    }
}

}  // namespace

TEST_CASE("eulerian orientation balances every even-regular graph") {
    check_balanced(complete_bipartite(4),
                   eulerian_orientation(complete_bipartite(4), 7));
    check_balanced(k55_minus_identity(),
                   eulerian_orientation(k55_minus_identity(), 3));

    // A single 4-cycle.
    const BipartiteGraph cycle(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    check_balanced(cycle, eulerian_orientation(cycle, 1));

    // Two disconnected 4-cycles: both components must be oriented.
    const BipartiteGraph two = parse_edge_list(
        "4 2\n0 0\n0 1\n1 0\n1 1\n2 2\n2 3\n3 2\n3 3\n");
    check_balanced(two, eulerian_orientation(two, 5));

    CHECK_THROWS_AS(eulerian_orientation(complete_bipartite(5), 0), OddDegree);
}

TEST_CASE("p4 decomposition solves 4-regular graphs and is seeded") {
    const BipartiteGraph k44 = complete_bipartite(4);
    const PathDecomposition pd = p4_decompose(k44, 11);
    CHECK(check_path_decomposition(k44, pd).ok);
    CHECK(pd == p4_decompose(k44, 11));

    // budget = 0 forces the exhaustive fallback for small n.
    CHECK(check_path_decomposition(k44, p4_decompose(k44, 2, 0)).ok);

    const BipartiteGraph gstar = k55_minus_identity();
    CHECK(check_path_decomposition(gstar, p4_decompose(gstar, 4)).ok);

    for (int n : {8, 12, 16}) {
        const BipartiteGraph host = random_regular_bipartite(n, 5, 90 + n);
        const BipartiteGraph g4 = remove_matching(host, perfect_matching(host));
        const PathDecomposition big = p4_decompose(g4, 21);
        const DecompositionCheck check = check_path_decomposition(g4, big);
        INFO(check.detail);
        CHECK(check.ok);
    }

    CHECK_THROWS_AS(p4_decompose(complete_bipartite(3), 0), NotFourRegular);
}

TEST_CASE("the decomposition checker rejects tampered inputs") {
    const BipartiteGraph gstar = k55_minus_identity();
    const PathDecomposition good = good_fixture();
    REQUIRE(check_path_decomposition(gstar, good).ok);

    PathDecomposition wrong_count = good;
    wrong_count.paths.pop_back();
    CHECK_FALSE(check_path_decomposition(gstar, wrong_count).ok);

    PathDecomposition repeated = good;
    repeated.paths[0].v[4] = repeated.paths[0].v[0];  // end == start
    CHECK_FALSE(check_path_decomposition(gstar, repeated).ok);

    PathDecomposition non_edge = good;
    non_edge.paths[0].v[1] = non_edge.paths[0].v[0];  // (x0, y0) was removed
    CHECK_FALSE(check_path_decomposition(gstar, non_edge).ok);

    PathDecomposition double_start = good;
    std::swap(double_start.paths[0].v[0], double_start.paths[0].v[4]);
    // x4 now starts twice and x0 ends twice (edges still valid).
    CHECK_FALSE(check_path_decomposition(gstar, double_start).ok);

    PathDecomposition double_edge = good;
    double_edge.paths[2] = double_edge.paths[1];
    CHECK_FALSE(check_path_decomposition(gstar, double_edge).ok);
}

TEST_CASE("avoidance functions read the fixture decompositions") {
    const PathDecomposition good = good_fixture();
    const PartialFunction f = extract_avoidance_function(good);
    CHECK(f.images() == std::vector<int>{3, 4, 1, 4, 3});
    CHECK(f == PartialFunction::from_one_based({4, 5, 2, 5, 4}));
    CHECK(f.max_preimage_multiplicity() == 2);

    const PartialFunction f_end = end_avoidance_function(good);
    for (const DirectedPath& p : good.paths) {
        CHECK(f_end.image(p.end()) == p.first_y());
    }

    const PartialFunction f_bad =
        extract_avoidance_function(failing_fixture());
    CHECK(f_bad == PartialFunction::from_one_based({1, 1, 4, 3, 2}));
}

TEST_CASE("the identity matching certifies the good decomposition") {
    const BipartiteGraph host = complete_bipartite(5);
    const Matching identity = perfect_matching(host);
    const PathDecomposition good = good_fixture();

    const std::vector<FiveEdgeSubgraph> subs =
        attach_matching(good, identity, AttachSide::Start);
    REQUIRE(subs.size() == 5);
    for (const FiveEdgeSubgraph& s : subs) CHECK(s.starts_in_y);

    const P5Verdict verdict = verify_p5_decomposition(host, subs);
    INFO(verdict.detail);
    CHECK(verdict.ok);
    CHECK(verdict.offender == -1);

    const PartialFunction f = extract_avoidance_function(good);
    CHECK(is_f_derangement(identity.as_permutation(), f));
    CHECK(verdict.ok == is_f_derangement(identity.as_permutation(), f));
}

TEST_CASE("the identity matching exposes the failing decomposition") {
    const BipartiteGraph host = complete_bipartite(5);
    const Matching identity = perfect_matching(host);
    const PathDecomposition failing = failing_fixture();
    REQUIRE(check_path_decomposition(k55_minus_identity(), failing).ok);

    const std::vector<FiveEdgeSubgraph> subs =
        attach_matching(failing, identity, AttachSide::Start);
    const P5Verdict verdict = verify_p5_decomposition(host, subs);
    CHECK_FALSE(verdict.ok);
    CHECK(verdict.offender == 0);
    CHECK(verdict.repeated_vertex == "y0");

    const PartialFunction f = extract_avoidance_function(failing);
    CHECK_FALSE(is_f_derangement(identity.as_permutation(), f));
    CHECK(verdict.ok == is_f_derangement(identity.as_permutation(), f));
}

TEST_CASE("attachment validates disjointness and sizes") {
    const PathDecomposition good = good_fixture();
    const BipartiteGraph host = complete_bipartite(5);
    // x0 -> y1 duplicates the first edge of the first path.
    const Matching overlapping(host, {1, 0, 3, 4, 2});
    CHECK_THROWS_AS(attach_matching(good, overlapping, AttachSide::Start),
                    NotDisjoint);

    const Matching small = perfect_matching(complete_bipartite(4));
    CHECK_THROWS_AS(attach_matching(good, small, AttachSide::Start),
                    SizeMismatch);
}

TEST_CASE("p5 verification demands full coverage") {
    const BipartiteGraph host = complete_bipartite(5);
    const Matching identity = perfect_matching(host);
    std::vector<FiveEdgeSubgraph> subs =
        attach_matching(good_fixture(), identity, AttachSide::Start);

    std::vector<FiveEdgeSubgraph> missing(subs.begin(), subs.end() - 1);
    CHECK_FALSE(verify_p5_decomposition(host, missing).ok);

    std::vector<FiveEdgeSubgraph> doubled = subs;
    doubled[2] = doubled[1];
    CHECK_FALSE(verify_p5_decomposition(host, doubled).ok);
}

TEST_CASE("end attachment also certifies a decomposition") {
    const BipartiteGraph host = complete_bipartite(5);
    const PathDecomposition good = good_fixture();
    const PartialFunction f_end = end_avoidance_function(good);

    // Build a matching avoiding f_end: g(x) != f_end(x) for all x.
    // f_end images are {x0->2, x1->2, x2->0, x3->0, x4->1} (0-based).
    const Matching m(host, {0, 1, 2, 3, 4});  // identity avoids all of them
    REQUIRE(is_f_derangement(m.as_permutation(), f_end));

    const std::vector<FiveEdgeSubgraph> subs =
        attach_matching(good, m, AttachSide::End);
    for (const FiveEdgeSubgraph& s : subs) CHECK_FALSE(s.starts_in_y);
    const P5Verdict verdict = verify_p5_decomposition(host, subs);
    INFO(verdict.detail);
    CHECK(verdict.ok);
}

TEST_CASE("trials are deterministic and keep the equivalence invariant") {
    const TrialOutcome a = run_trial(6, 12345, Strategy::SingleShot);
    const TrialOutcome b = run_trial(6, 12345, Strategy::SingleShot);
    CHECK(a.success == b.success);
    CHECK(a.graph_id == b.graph_id);
    CHECK(a.f_images == b.f_images);
    CHECK(a.g_images == b.g_images);

    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const TrialOutcome t = run_trial(7, seed, Strategy::SingleShot);
        CHECK(t.equivalence_ok);
        CHECK_FALSE(t.solver_failed);
        CHECK(t.n == 7);
        if (t.success) {
            CHECK(t.f_images.size() == 7);
            CHECK(t.g_images.size() == 7);
        }
    }

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const TrialOutcome t = run_trial(6, seed, Strategy::AllTenOptions);
        CHECK(t.equivalence_ok);
        CHECK(t.options_tried >= 1);
        CHECK(t.options_tried <= 10);
        if (!t.success && !t.solver_failed) CHECK(t.options_tried == 10);
    }

    CHECK_THROWS_AS(run_trial(4, 0, Strategy::SingleShot), ValidationError);
}

TEST_CASE("monte carlo statistics are internally consistent") {
    const MonteCarloStats s =
        monte_carlo(6, 200, Strategy::SingleShot, 2024);
    CHECK(s.trials == 200);
    CHECK(s.completed == s.trials - s.solver_failures);
    CHECK(s.successes <= s.completed);
    CHECK(s.equivalence_violations == 0);
    CHECK(s.fraction == doctest::Approx(static_cast<double>(s.successes) /
                                        s.completed));
    CHECK(s.wilson_low <= s.fraction);
    CHECK(s.fraction <= s.wilson_high);
    CHECK(0.0 <= s.wilson_low);
    CHECK(s.wilson_high <= 1.0);

    const MonteCarloStats again =
        monte_carlo(6, 200, Strategy::SingleShot, 2024);
    CHECK(again.successes == s.successes);
    CHECK(again.wilson_low == s.wilson_low);

    CHECK_THROWS_AS(monte_carlo(6, 0, Strategy::SingleShot, 1),
                    ValidationError);
}

TEST_CASE("the demo pipeline runs the whole stack on one graph") {
    const DemoTrace trace = demo_pipeline(complete_bipartite(5), 9);
    CHECK(trace.graph.d() == 5);
    CHECK(trace.matching.n() == 5);
    CHECK(check_path_decomposition(
              remove_matching(trace.graph, trace.matching), trace.paths)
              .ok);
    CHECK(trace.avoidance.max_preimage_multiplicity() <= 2);
    CHECK(trace.equivalence_ok);
    CHECK(trace.verdict.ok == trace.is_derangement);
    if (trace.verdict.ok) {
        CHECK(verify_p5_decomposition(trace.graph, trace.attached).ok);
    }

    CHECK_THROWS_AS(demo_pipeline(complete_bipartite(4), 0), ValidationError);
}
