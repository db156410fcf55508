#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fderange/bipartite.hpp"
#include "fderange/matching.hpp"
#include "fderange/path_decomp.hpp"
#include "fderange/types.hpp"

namespace fderange {

enum class AttachSide { Start, End };
enum class Strategy { SingleShot, AllTenOptions };

// f(start of path) = the path's second Y vertex (its fourth vertex): the Y
// whose reuse would close the Start-attached subgraph into a non-path.
// Always 2-max, since a Y vertex is interior to exactly two paths.
PartialFunction extract_avoidance_function(const PathDecomposition& pd);

// End-side analogue: f(end of path) = the path's first Y vertex.
PartialFunction end_avoidance_function(const PathDecomposition& pd);

// A path on 5 edges; alternation starts in Y for Start attachments
// (y x y x y x) and in X for End attachments (x y x y x y).
struct FiveEdgeSubgraph {
    std::array<int, 6> v{};
    bool starts_in_y = false;
};

// Prepends (m(x), x) to the path starting at x, or appends (x, m(x)) to the
// path ending at x. Throws NotDisjoint when a matching edge already lies on
// a path, SizeMismatch on size disagreement.
std::vector<FiveEdgeSubgraph> attach_matching(const PathDecomposition& pd,
                                              const Matching& m,
                                              AttachSide side);

struct P5Verdict {
    bool ok = true;
    int offender = -1;            // first failing subgraph, -1 when ok
    std::string repeated_vertex;  // "y3" / "x1", set on vertex repeats
    std::string detail;
};

// True iff the subgraphs are n simple 5-edge paths with 6 distinct
// vertices, pairwise edge-disjoint, covering every edge of g.
P5Verdict verify_p5_decomposition(const BipartiteGraph& g,
                                  const std::vector<FiveEdgeSubgraph>& subs);

struct TrialOutcome {
    std::uint64_t seed = 0;
    int n = 0;
    Strategy strategy = Strategy::SingleShot;
    std::string graph_id;
    bool solver_failed = false;  // no matching admitted a P4 decomposition
    int solver_retries = 0;      // failed p4_decompose calls
    int options_tried = 0;       // (matching, side) pairs evaluated
    bool success = false;
    bool equivalence_ok = true;  // hard invariant over every option tried
    std::vector<int> f_images;   // avoidance function of the decisive option
    std::vector<int> g_images;   // matching permutation of that option
};

// One heuristic run on a fresh random 5-regular graph. SingleShot: one
// seeded random matching, one decomposition, Start attachment.
// AllTenOptions: each matching of a 1-factorization x {Start, End}, in
// order, until a side verifies. A stalled P4 search is retried (fresh
// matching for SingleShot, fresh solver seed otherwise) at most 5 times;
// if nothing decomposes the trial is a solver failure. Every option tried
// also checks verdict == f-derangement test; any mismatch clears
// equivalence_ok. Requires n >= 5.
TrialOutcome run_trial(int n, std::uint64_t seed, Strategy strategy,
                       int budget = kP4Budget);

struct MonteCarloStats {
    int n = 0;
    int trials = 0;
    Strategy strategy = Strategy::SingleShot;
    std::uint64_t master_seed = 0;
    int completed = 0;  // trials minus solver failures
    int successes = 0;
    double fraction = 0;
    double wilson_low = 0;
    double wilson_high = 1;
    long long equivalence_violations = 0;
    int solver_failures = 0;
    long long solver_retries_total = 0;
};

// Runs `trials` independent trials with seeds derived from (master_seed,
// index); the success fraction and its Wilson 95% interval are taken over
// completed trials. Requires trials >= 1.
MonteCarloStats monte_carlo(int n, int trials, Strategy strategy,
                            std::uint64_t master_seed, int budget = kP4Budget);

struct DemoTrace {
    BipartiteGraph graph;
    Matching matching;
    PathDecomposition paths;
    PartialFunction avoidance;
    Permutation g;
    std::vector<FiveEdgeSubgraph> attached;
    P5Verdict verdict;
    bool is_derangement = false;
    bool equivalence_ok = false;
};

// Full pipeline on a supplied 5-regular graph: deterministic matching, P4
// decomposition, Start attachment, verification.
DemoTrace demo_pipeline(const BipartiteGraph& g, std::uint64_t seed,
                        int budget = kP4Budget);

}  // namespace fderange
