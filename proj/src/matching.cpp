#include "fderange/matching.hpp"

#include <algorithm>
#include <numeric>

#include "fderange/errors.hpp"
#include "fderange/rng.hpp"

namespace fderange {

Matching::Matching(const BipartiteGraph& host, std::vector<int> to_y)
    : to_y_(std::move(to_y)) {
    const int n = host.n();
    if (static_cast<int>(to_y_.size()) != n) {
        throw SizeMismatch("matching: size differs from host graph");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int x = 0; x < n; ++x) {
        const int y = to_y_[static_cast<std::size_t>(x)];
        if (y < 0 || y >= n) {
            throw IndexOutOfRange("matching: target out of range");
        }
        if (seen[static_cast<std::size_t>(y)]) {
            throw ValidationError("matching: y" + std::to_string(y) +
                                  " matched twice");
        }
        seen[static_cast<std::size_t>(y)] = true;
        if (!host.has_edge(x, y)) {
            throw ValidationError("matching: pair (x" + std::to_string(x) +
                                  ", y" + std::to_string(y) +
                                  ") is not an edge");
        }
    }
}

namespace {

// Kuhn's algorithm over explicit x/neighbor orders. Each x first claims its
// earliest free neighbor; only then does it displace along alternating
// paths.
Matching kuhn(const BipartiteGraph& g, const std::vector<int>& x_order,
              const std::vector<std::vector<int>>& neighbor_order) {
    const int n = g.n();
    std::vector<int> match_x(static_cast<std::size_t>(n), -1);
    std::vector<int> match_y(static_cast<std::size_t>(n), -1);
    std::vector<bool> visited(static_cast<std::size_t>(n), false);

    const auto augment = [&](auto&& self, int x) -> bool {
        for (int y : neighbor_order[static_cast<std::size_t>(x)]) {
            if (visited[static_cast<std::size_t>(y)]) continue;
            visited[static_cast<std::size_t>(y)] = true;
            const int other = match_y[static_cast<std::size_t>(y)];
            if (other == -1 || self(self, other)) {
                match_x[static_cast<std::size_t>(x)] = y;
                match_y[static_cast<std::size_t>(y)] = x;
                return true;
            }
        }
        return false;
    };

    for (int x : x_order) {
        bool placed = false;
        for (int y : neighbor_order[static_cast<std::size_t>(x)]) {
            if (match_y[static_cast<std::size_t>(y)] == -1) {
                match_x[static_cast<std::size_t>(x)] = y;
                match_y[static_cast<std::size_t>(y)] = x;
                placed = true;
                break;
            }
        }
        if (!placed) {
            std::fill(visited.begin(), visited.end(), false);
            if (!augment(augment, x)) {
                throw NoPerfectMatching(
                    "matching: augmenting search stalled at x" +
                    std::to_string(x));
            }
        }
    }
    return Matching(g, match_x);
}

}  // namespace

Matching perfect_matching(const BipartiteGraph& g) {
    const int n = g.n();
    std::vector<int> x_order(static_cast<std::size_t>(n));
    std::iota(x_order.begin(), x_order.end(), 0);
    std::vector<std::vector<int>> neighbor_order;
    neighbor_order.reserve(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) neighbor_order.push_back(g.neighbors_of_x(x));
    return kuhn(g, x_order, neighbor_order);
}

Matching perfect_matching_seeded(const BipartiteGraph& g, std::uint64_t seed) {
    Rng rng(seed);
    const int n = g.n();
    std::vector<int> x_order = rng.permutation(n);
    std::vector<std::vector<int>> neighbor_order;
    neighbor_order.reserve(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        auto nbrs = g.neighbors_of_x(x);
        rng.shuffle(nbrs);
        neighbor_order.push_back(std::move(nbrs));
    }
    return kuhn(g, x_order, neighbor_order);
}

BipartiteGraph remove_matching(const BipartiteGraph& g, const Matching& m) {
    std::vector<Edge> edges;
    edges.reserve(g.edges().size());
    for (const Edge& e : g.edges()) {
        if (m.y_of(e.x) != e.y) edges.push_back(e);
    }
    return BipartiteGraph(g.n(), g.d() - 1, std::move(edges));
}

std::vector<Matching> one_factorization(const BipartiteGraph& g) {
    std::vector<Matching> factors;
    factors.reserve(static_cast<std::size_t>(g.d()));
    BipartiteGraph rest = g;
    for (int k = 0; k < g.d(); ++k) {
        Matching m = perfect_matching(rest);
        if (k + 1 < g.d()) rest = remove_matching(rest, m);
        factors.push_back(std::move(m));
    }
    return factors;
}

}  // namespace fderange
