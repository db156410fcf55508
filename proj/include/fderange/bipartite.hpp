#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fderange {

// An edge between x-vertex x and y-vertex y (both 0-based).
struct Edge {
    int x = 0;
    int y = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// A simple d-regular bipartite graph on parts X = {x_0..x_{n-1}} and
// Y = {y_0..y_{n-1}}.
class BipartiteGraph {
public:
    // Validates: indices in range, no repeated edge, every vertex of both
    // parts has degree exactly d.
    BipartiteGraph(int n, int d, std::vector<Edge> edges);

    int n() const { return n_; }
    int d() const { return d_; }
    const std::vector<Edge>& edges() const { return edges_; }

    // Neighbor lists, ascending.
    const std::vector<int>& neighbors_of_x(int x) const;
    const std::vector<int>& neighbors_of_y(int y) const;

    bool has_edge(int x, int y) const;

    // Stable fingerprint of (n, d, sorted edge list), as a hex string.
    std::string id() const;

private:
    int n_;
    int d_;
    std::vector<Edge> edges_;             // sorted
    std::vector<std::vector<int>> adj_x_; // adj_x_[x] = sorted y's
    std::vector<std::vector<int>> adj_y_; // adj_y_[y] = sorted x's
};

// Text format: first data line "n d", then one edge "i j" per line,
// 0-based. Blank lines and '#' comments are ignored.
BipartiteGraph parse_edge_list(const std::string& text);
BipartiteGraph parse_edge_list_file(const std::string& path);

BipartiteGraph complete_bipartite(int n);

// Union of d random permutations of {0..n-1}, drawn one at a time, each
// resampled while it collides with the edges already placed (1000 draws per
// permutation). If rejection stalls the permutation is drawn exactly
// uniformly over the collision-free ones by a subset-sum count (n <= 20);
// beyond that RejectionBudgetExceeded propagates. Requires 1 <= d <= n;
// d = n forces the complete graph.
BipartiteGraph random_regular_bipartite(int n, int d, std::uint64_t seed);

}  // namespace fderange
