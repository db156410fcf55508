#pragma once

#include <cstdint>
#include <vector>

#include "fderange/bipartite.hpp"
#include "fderange/types.hpp"

namespace fderange {

// A perfect matching of a bipartite graph, stored as x -> y.
class Matching {
public:
    // Validates against the host: every pair an edge, all x covered,
    // targets pairwise distinct.
    Matching(const BipartiteGraph& host, std::vector<int> to_y);

    int n() const { return static_cast<int>(to_y_.size()); }
    int y_of(int x) const { return to_y_[static_cast<std::size_t>(x)]; }
    const std::vector<int>& pairs() const { return to_y_; }

    // The permutation g with g(x) = matched y.
    Permutation as_permutation() const { return Permutation(to_y_); }

    bool operator==(const Matching&) const = default;

private:
    std::vector<int> to_y_;
};

// Augmenting-path search with lowest-index-first tie-breaking: each x takes
// its smallest free neighbor before augmenting, so K_{n,n} yields the
// identity matching. Throws NoPerfectMatching if the search stalls
// (impossible for regular inputs; defensive).
Matching perfect_matching(const BipartiteGraph& g);

// Same search over seed-shuffled vertex orders; used to draw a fresh
// matching on retries.
Matching perfect_matching_seeded(const BipartiteGraph& g, std::uint64_t seed);

// The (d-1)-regular remainder after deleting a perfect matching.
BipartiteGraph remove_matching(const BipartiteGraph& g, const Matching& m);

// d pairwise-disjoint perfect matchings covering E(g), extracted greedily.
std::vector<Matching> one_factorization(const BipartiteGraph& g);

}  // namespace fderange
