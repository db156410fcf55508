#include "fderange/bipartite.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fderange/errors.hpp"
#include "fderange/rng.hpp"

namespace fderange {

BipartiteGraph::BipartiteGraph(int n, int d, std::vector<Edge> edges)
    : n_(n), d_(d), edges_(std::move(edges)) {
    if (n_ <= 0) throw ZeroSize("graph: n must be positive");
    if (d_ < 0 || d_ > n_) {
        throw ValidationError("graph: degree must satisfy 0 <= d <= n");
    }
    std::sort(edges_.begin(), edges_.end());
    adj_x_.assign(static_cast<std::size_t>(n_), {});
    adj_y_.assign(static_cast<std::size_t>(n_), {});
    const Edge* prev = nullptr;
    for (const Edge& e : edges_) {
        if (e.x < 0 || e.x >= n_ || e.y < 0 || e.y >= n_) {
            throw IndexOutOfRange("graph: edge (" + std::to_string(e.x) +
                                  ", " + std::to_string(e.y) +
                                  ") out of range");
        }
        if (prev && *prev == e) {
            throw DuplicateEdge("graph: repeated edge (" +
                                std::to_string(e.x) + ", " +
                                std::to_string(e.y) + ")");
        }
        prev = &e;
        adj_x_[static_cast<std::size_t>(e.x)].push_back(e.y);
        adj_y_[static_cast<std::size_t>(e.y)].push_back(e.x);
    }
    for (int v = 0; v < n_; ++v) {
        if (static_cast<int>(adj_x_[static_cast<std::size_t>(v)].size()) != d_ ||
            static_cast<int>(adj_y_[static_cast<std::size_t>(v)].size()) != d_) {
            throw NotRegular("graph: vertex degree differs from d = " +
                             std::to_string(d_));
        }
    }
}

const std::vector<int>& BipartiteGraph::neighbors_of_x(int x) const {
    if (x < 0 || x >= n_) throw IndexOutOfRange("graph: x out of range");
    return adj_x_[static_cast<std::size_t>(x)];
}

const std::vector<int>& BipartiteGraph::neighbors_of_y(int y) const {
    if (y < 0 || y >= n_) throw IndexOutOfRange("graph: y out of range");
    return adj_y_[static_cast<std::size_t>(y)];
}

bool BipartiteGraph::has_edge(int x, int y) const {
    if (x < 0 || x >= n_) return false;
    const auto& row = adj_x_[static_cast<std::size_t>(x)];
    return std::binary_search(row.begin(), row.end(), y);
}

std::string BipartiteGraph::id() const {
    // FNV-1a over the canonical byte stream.
    std::uint64_t h = 1469598103934665603ull;
    const auto mix = [&h](std::uint64_t v) {
        for (int byte = 0; byte < 8; ++byte) {
            h ^= (v >> (8 * byte)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(static_cast<std::uint64_t>(n_));
    mix(static_cast<std::uint64_t>(d_));
    for (const Edge& e : edges_) {
        mix(static_cast<std::uint64_t>(e.x));
        mix(static_cast<std::uint64_t>(e.y));
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(h));
    return std::string(buf);
}

BipartiteGraph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_header = false;
    int n = 0, d = 0;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        int a = 0, b = 0;
        if (!(fields >> a)) {
            if (line.find_first_not_of(" \t\r\n\v\f") == std::string::npos) {
                continue;  // blank or comment-only line
            }
            throw MalformedLine("edge list line " + std::to_string(lineno) +
                                ": expected two integers");
        }
        std::string extra;
        if (!(fields >> b) || (fields >> extra)) {
            throw MalformedLine("edge list line " + std::to_string(lineno) +
                                ": expected two integers");
        }
        if (!have_header) {
            have_header = true;
            n = a;
            d = b;
        } else {
            edges.push_back({a, b});
        }
    }
    if (!have_header) {
        throw MalformedLine("edge list: missing \"n d\" header");
    }
    return BipartiteGraph(n, d, std::move(edges));
}

BipartiteGraph parse_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open edge list file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_edge_list(buf.str());
}

BipartiteGraph complete_bipartite(int n) {
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) edges.push_back({x, y});
    }
    return BipartiteGraph(n, n, std::move(edges));
}

namespace {

// Exactly uniform draw over permutations p with p(i) restricted to
// allowed[i], by sampling proportional to completion counts. Counts fit in
// 64 bits for n <= 20.
std::vector<int> sample_restricted_permutation(
    const std::vector<std::uint32_t>& allowed, int n, Rng& rng) {
    const std::size_t full = std::size_t{1} << n;
    std::vector<std::uint64_t> ways(full, 0);
    ways[0] = 1;
    for (std::size_t s = 1; s < full; ++s) {
        const int i = __builtin_popcountll(s) - 1;  // next x to place
        const std::uint32_t choices =
            allowed[static_cast<std::size_t>(i)] &
            static_cast<std::uint32_t>(s);
        std::uint64_t total = 0;
        for (std::uint32_t rest = choices; rest;) {
            const std::uint32_t bit = rest & (~rest + 1);
            total += ways[s ^ bit];
            rest ^= bit;
        }
        ways[s] = total;
    }
    if (ways[full - 1] == 0) {
        throw RejectionBudgetExceeded(
            "random graph: no collision-free permutation exists");
    }
    std::vector<int> p(static_cast<std::size_t>(n));
    std::size_t s = full - 1;
    for (int i = n - 1; i >= 0; --i) {
        std::uint64_t pick = rng.below64(ways[s]);
        const std::uint32_t choices =
            allowed[static_cast<std::size_t>(i)] &
            static_cast<std::uint32_t>(s);
        for (std::uint32_t rest = choices; rest;) {
            const std::uint32_t bit = rest & (~rest + 1);
            const std::uint64_t w = ways[s ^ bit];
            if (pick < w) {
                p[static_cast<std::size_t>(i)] = __builtin_ctz(bit);
                s ^= bit;
                break;
            }
            pick -= w;
            rest ^= bit;
        }
    }
    return p;
}

}  // namespace

BipartiteGraph random_regular_bipartite(int n, int d, std::uint64_t seed) {
    if (n <= 0) throw ZeroSize("random graph: n must be positive");
    if (d < 1 || d > n) {
        throw ValidationError("random graph: need 1 <= d <= n");
    }
    if (d == n) return complete_bipartite(n);

    Rng rng(seed);
    constexpr int kDrawsPerPermutation = 1000;
    std::vector<std::vector<bool>> used(
        static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        std::vector<int> p;
        bool found = false;
        for (int attempt = 0; attempt < kDrawsPerPermutation; ++attempt) {
            p = rng.permutation(n);
            found = true;
            for (int i = 0; i < n; ++i) {
                if (used[static_cast<std::size_t>(i)]
                        [static_cast<std::size_t>(p[static_cast<std::size_t>(i)])]) {
                    found = false;
                    break;
                }
            }
            if (found) break;
        }
        if (!found) {
            if (n > 20) {
                throw RejectionBudgetExceeded(
                    "random graph: permutation rejection stalled and exact "
                    "sampling is limited to n <= 20");
            }
            std::vector<std::uint32_t> allowed(static_cast<std::size_t>(n), 0);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    if (!used[static_cast<std::size_t>(i)]
                             [static_cast<std::size_t>(j)]) {
                        allowed[static_cast<std::size_t>(i)] |= 1u << j;
                    }
                }
            }
            p = sample_restricted_permutation(allowed, n, rng);
        }
        for (int i = 0; i < n; ++i) {
            used[static_cast<std::size_t>(i)]
                [static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] = true;
            edges.push_back({i, p[static_cast<std::size_t>(i)]});
        }
    }
    return BipartiteGraph(n, d, std::move(edges));
}

}  // namespace fderange
