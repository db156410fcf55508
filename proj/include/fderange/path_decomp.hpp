#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fderange/bipartite.hpp"

namespace fderange {

// Every edge directed one way; arcs x->y live in out_x, arcs y->x in out_y.
// Balanced: each vertex has in-degree = out-degree = d/2.
struct EulerianOrientation {
    std::vector<std::vector<int>> out_x;  // out_x[x] = heads y
    std::vector<std::vector<int>> out_y;  // out_y[y] = heads x
};

// Orients an Eulerian circuit of each connected component; the circuits are
// randomized by the seed. Throws OddDegree when d is odd.
EulerianOrientation eulerian_orientation(const BipartiteGraph& g,
                                         std::uint64_t seed);

// A directed path on 4 edges: x, y, x, y, x.
struct DirectedPath {
    std::array<int, 5> v{};

    int start() const { return v[0]; }
    int first_y() const { return v[1]; }
    int center() const { return v[2]; }
    int second_y() const { return v[3]; }
    int end() const { return v[4]; }

    bool operator==(const DirectedPath&) const = default;
};

// n directed 4-edge paths meant to partition a 4-regular graph so that each
// X vertex is a start exactly once, a center exactly once and an end
// exactly once.
struct PathDecomposition {
    int n = 0;
    std::vector<DirectedPath> paths;

    bool operator==(const PathDecomposition&) const = default;
};

struct DecompositionCheck {
    bool ok = true;
    std::string detail;  // first problem found, empty when ok
};

// Verifies: n paths over vertices in range, 5 distinct vertices each, every
// edge present in g4, edges pairwise distinct and covering all 4n, and the
// start/center/end roles each hit every X vertex exactly once.
DecompositionCheck check_path_decomposition(const BipartiteGraph& g4,
                                            const PathDecomposition& pd);

inline constexpr int kP4Budget = 10000;

// Finds a role-exact P4 decomposition of a 4-regular bipartite graph.
// Randomized search: pair arcs of an Eulerian orientation at every vertex
// (pass-through at Y, one center passage at X) and accept when the induced
// trails are n open 4-edge paths. Each restart runs a node-capped
// backtracking pass over the pairing bits in seed-randomized order; the
// orientation is redrawn every 100 restarts. After `budget` restarts,
// graphs with n <= 10 fall back to exhaustive backtracking over whole
// paths; otherwise BudgetExhausted. Throws NotFourRegular when d != 4.
PathDecomposition p4_decompose(const BipartiteGraph& g4, std::uint64_t seed,
                               int budget = kP4Budget);

}  // namespace fderange
