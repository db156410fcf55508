#include "fderange/path_decomp.hpp"

#include <algorithm>
#include <set>

#include "fderange/errors.hpp"
#include "fderange/rng.hpp"

namespace fderange {

EulerianOrientation eulerian_orientation(const BipartiteGraph& g,
                                         std::uint64_t seed) {
    if (g.d() % 2 != 0) {
        throw OddDegree("orientation: degree " + std::to_string(g.d()) +
                        " is odd");
    }
    const int n = g.n();
    const auto& edges = g.edges();
    const int m = static_cast<int>(edges.size());
    Rng rng(seed);

    // Vertices 0..n-1 are X, n..2n-1 are Y; incidence lists carry edge ids.
    std::vector<std::vector<int>> incident(static_cast<std::size_t>(2 * n));
    for (int e = 0; e < m; ++e) {
        incident[static_cast<std::size_t>(edges[static_cast<std::size_t>(e)].x)]
            .push_back(e);
        incident[static_cast<std::size_t>(n + edges[static_cast<std::size_t>(e)].y)]
            .push_back(e);
    }
    for (auto& list : incident) rng.shuffle(list);

    EulerianOrientation orient;
    orient.out_x.assign(static_cast<std::size_t>(n), {});
    orient.out_y.assign(static_cast<std::size_t>(n), {});
    std::vector<bool> used(static_cast<std::size_t>(m), false);
    std::vector<std::size_t> next(static_cast<std::size_t>(2 * n), 0);
    const auto other_end = [&](int e, int v) {
        const Edge& ed = edges[static_cast<std::size_t>(e)];
        return v < n ? n + ed.y : ed.x;
    };

    for (int root = 0; root < 2 * n; ++root) {
        if (next[static_cast<std::size_t>(root)] >=
            incident[static_cast<std::size_t>(root)].size()) {
            continue;  // vertex exhausted (or component already traversed)
        }
        std::vector<int> stack{root};
        std::vector<int> circuit;
        while (!stack.empty()) {
            const int v = stack.back();
            auto& pos = next[static_cast<std::size_t>(v)];
            const auto& inc = incident[static_cast<std::size_t>(v)];
            while (pos < inc.size() && used[static_cast<std::size_t>(inc[pos])]) {
                ++pos;
            }
            if (pos == inc.size()) {
                circuit.push_back(v);
                stack.pop_back();
            } else {
                const int e = inc[pos];
                used[static_cast<std::size_t>(e)] = true;
                stack.push_back(other_end(e, v));
            }
        }
        for (std::size_t i = 0; i + 1 < circuit.size(); ++i) {
            const int u = circuit[i];
            const int w = circuit[i + 1];
            if (u < n) {
                orient.out_x[static_cast<std::size_t>(u)].push_back(w - n);
            } else {
                orient.out_y[static_cast<std::size_t>(u - n)].push_back(w);
            }
        }
    }

    const std::size_t half = static_cast<std::size_t>(g.d() / 2);
    for (int v = 0; v < n; ++v) {
        if (orient.out_x[static_cast<std::size_t>(v)].size() != half ||
            orient.out_y[static_cast<std::size_t>(v)].size() != half) {
            throw InternalError("orientation: unbalanced at vertex " +
                                std::to_string(v));
        }
    }
    return orient;
}

DecompositionCheck check_path_decomposition(const BipartiteGraph& g4,
                                            const PathDecomposition& pd) {
    const int n = g4.n();
    const auto fail = [](std::string why) {
        return DecompositionCheck{false, std::move(why)};
    };
    if (pd.n != n || static_cast<int>(pd.paths.size()) != n) {
        return fail("expected " + std::to_string(n) + " paths");
    }
    std::set<std::pair<int, int>> seen;
    std::vector<int> starts(static_cast<std::size_t>(n), 0);
    std::vector<int> centers(static_cast<std::size_t>(n), 0);
    std::vector<int> ends(static_cast<std::size_t>(n), 0);
    for (std::size_t idx = 0; idx < pd.paths.size(); ++idx) {
        const auto& p = pd.paths[idx];
        const std::string where = "path " + std::to_string(idx);
        for (int vert : p.v) {
            if (vert < 0 || vert >= n) return fail(where + ": vertex out of range");
        }
        if (p.v[0] == p.v[2] || p.v[2] == p.v[4] || p.v[0] == p.v[4] ||
            p.v[1] == p.v[3]) {
            return fail(where + ": repeated vertex");
        }
        for (int e = 0; e < 4; ++e) {
            const int x = p.v[static_cast<std::size_t>(e % 2 == 0 ? e : e + 1)];
            const int y = p.v[static_cast<std::size_t>(e % 2 == 0 ? e + 1 : e)];
            if (!g4.has_edge(x, y)) {
                return fail(where + ": edge (x" + std::to_string(x) + ", y" +
                            std::to_string(y) + ") not in graph");
            }
            if (!seen.insert({x, y}).second) {
                return fail(where + ": edge (x" + std::to_string(x) + ", y" +
                            std::to_string(y) + ") reused");
            }
        }
        ++starts[static_cast<std::size_t>(p.start())];
        ++centers[static_cast<std::size_t>(p.center())];
        ++ends[static_cast<std::size_t>(p.end())];
    }
    if (static_cast<int>(seen.size()) != 4 * n) {
        return fail("paths do not cover all edges");
    }
    for (int x = 0; x < n; ++x) {
        if (starts[static_cast<std::size_t>(x)] != 1 ||
            centers[static_cast<std::size_t>(x)] != 1 ||
            ends[static_cast<std::size_t>(x)] != 1) {
            return fail("x" + std::to_string(x) +
                        " does not hold each role exactly once");
        }
    }
    return {};
}

namespace {

struct ArcTables {
    // Exactly two entries per vertex in each list (4-regular, balanced).
    std::vector<std::array<int, 2>> out_x, in_x, out_y, in_y;
};

ArcTables build_tables(const EulerianOrientation& o, int n) {
    ArcTables t;
    t.out_x.assign(static_cast<std::size_t>(n), {-1, -1});
    t.in_x.assign(static_cast<std::size_t>(n), {-1, -1});
    t.out_y.assign(static_cast<std::size_t>(n), {-1, -1});
    t.in_y.assign(static_cast<std::size_t>(n), {-1, -1});
    std::vector<int> fill_in_x(static_cast<std::size_t>(n), 0);
    std::vector<int> fill_in_y(static_cast<std::size_t>(n), 0);
    for (int x = 0; x < n; ++x) {
        for (int slot = 0; slot < 2; ++slot) {
            const int y = o.out_x[static_cast<std::size_t>(x)]
                                 [static_cast<std::size_t>(slot)];
            t.out_x[static_cast<std::size_t>(x)][static_cast<std::size_t>(slot)] = y;
            t.in_y[static_cast<std::size_t>(y)]
                  [static_cast<std::size_t>(fill_in_y[static_cast<std::size_t>(y)]++)] = x;
        }
    }
    for (int y = 0; y < n; ++y) {
        for (int slot = 0; slot < 2; ++slot) {
            const int x = o.out_y[static_cast<std::size_t>(y)]
                                 [static_cast<std::size_t>(slot)];
            t.out_y[static_cast<std::size_t>(y)][static_cast<std::size_t>(slot)] = x;
            t.in_x[static_cast<std::size_t>(x)]
                  [static_cast<std::size_t>(fill_in_x[static_cast<std::size_t>(x)]++)] = y;
        }
    }
    return t;
}

// Searches for pass-through bits (one per Y) and paired in/out slots (per
// X) whose induced trails are n open 4-edge paths. One instance explores a
// single orientation; branch values are tried in seed-randomized order and
// already-forced bits propagate, so a restart either finds a pairing, proves
// this orientation admits none, or gives up at the node cap.
class PairingSearch {
public:
    PairingSearch(const ArcTables& t, int n, Rng& rng, long long node_cap)
        : t_(&t), n_(n), rng_(&rng), node_cap_(node_cap) {
        y_bit_.assign(static_cast<std::size_t>(n), kUnset);
        x_in_.assign(static_cast<std::size_t>(n), kUnset);
        x_out_.assign(static_cast<std::size_t>(n), kUnset);
        placed_.assign(static_cast<std::size_t>(n), false);
    }

    bool run(std::vector<DirectedPath>& out) {
        paths_.clear();
        if (!extend(0)) return false;
        out = paths_;
        return true;
    }

private:
    static constexpr std::int8_t kUnset = -1;

    static int in_slot(const std::array<int, 2>& ins, int tail) {
        return ins[0] == tail ? 0 : 1;
    }

    // Branch over an undecided bit (random order) or follow a decided one.
    template <typename Body>
    bool branch(std::vector<std::int8_t>& bits, int at, Body&& body) {
        auto& bit = bits[static_cast<std::size_t>(at)];
        if (bit != kUnset) return body(bit);
        const int first = static_cast<int>(rng_->bits() & 1);
        for (int v : {first, 1 - first}) {
            bit = static_cast<std::int8_t>(v);
            if (body(v)) return true;
            bit = kUnset;
        }
        return false;
    }

    // Trail for the most constrained unplaced X first: one with its out-slot
    // (and ideally in-slot) already forced by earlier trails, so conflicts
    // surface close to the decisions that caused them.
    int pick_next() const {
        int best = -1, best_score = -1;
        for (int x = 0; x < n_; ++x) {
            if (placed_[static_cast<std::size_t>(x)]) continue;
            const int score =
                (x_out_[static_cast<std::size_t>(x)] != kUnset ? 2 : 0) +
                (x_in_[static_cast<std::size_t>(x)] != kUnset ? 1 : 0);
            if (score == 3) return x;
            if (score > best_score) {
                best_score = score;
                best = x;
            }
        }
        return best;
    }

    bool extend(int placed_count) {
        if (placed_count == n_) return true;
        if (++nodes_ > node_cap_) return false;
        const int x0 = pick_next();
        placed_[static_cast<std::size_t>(x0)] = true;
        // The paired out-slot of x0 fixes its start arc (the other slot).
        const bool found = branch(x_out_, x0, [&](int paired_out) {
            DirectedPath trail{};
            trail.v[0] = x0;
            trail.v[1] = t_->out_x[static_cast<std::size_t>(x0)]
                                  [static_cast<std::size_t>(1 - paired_out)];
            return pass_through(trail, 1);
        });
        if (!found) placed_[static_cast<std::size_t>(x0)] = false;
        return found;
    }

    // Arrive at trail.v[pos] (a Y) from trail.v[pos-1]; its pass-through bit
    // selects the next X.
    bool pass_through(DirectedPath& trail, int pos) {
        if (++nodes_ > node_cap_) return false;
        const int y = trail.v[static_cast<std::size_t>(pos)];
        const int slot = in_slot(t_->in_y[static_cast<std::size_t>(y)],
                                 trail.v[static_cast<std::size_t>(pos - 1)]);
        return branch(y_bit_, y, [&](int b) {
            trail.v[static_cast<std::size_t>(pos + 1)] =
                t_->out_y[static_cast<std::size_t>(y)]
                         [static_cast<std::size_t>(slot ^ b)];
            return pos == 1 ? at_center(trail) : at_end(trail);
        });
    }

    bool at_center(DirectedPath& trail) {
        const int x = trail.v[2];
        const int slot =
            in_slot(t_->in_x[static_cast<std::size_t>(x)], trail.v[1]);
        auto& in_bit = x_in_[static_cast<std::size_t>(x)];
        const bool was_unset = in_bit == kUnset;
        if (!was_unset && in_bit != slot) return false;  // trail would end here
        in_bit = static_cast<std::int8_t>(slot);
        const bool found = branch(x_out_, x, [&](int paired_out) {
            trail.v[3] = t_->out_x[static_cast<std::size_t>(x)]
                                  [static_cast<std::size_t>(paired_out)];
            return pass_through(trail, 3);
        });
        if (!found && was_unset) in_bit = kUnset;
        return found;
    }

    bool at_end(DirectedPath& trail) {
        const int x = trail.v[4];
        if (x == trail.v[0]) return false;
        const int slot =
            in_slot(t_->in_x[static_cast<std::size_t>(x)], trail.v[3]);
        auto& in_bit = x_in_[static_cast<std::size_t>(x)];
        const bool was_unset = in_bit == kUnset;
        // Ending here needs the arrival slot to be the unpaired one.
        if (!was_unset && in_bit == slot) return false;
        in_bit = static_cast<std::int8_t>(1 - slot);
        paths_.push_back(trail);
        if (extend(static_cast<int>(paths_.size()))) return true;
        paths_.pop_back();
        if (was_unset) in_bit = kUnset;
        return false;
    }

    const ArcTables* t_;
    int n_;
    Rng* rng_;
    long long node_cap_;
    long long nodes_ = 0;
    std::vector<std::int8_t> y_bit_, x_in_, x_out_;
    std::vector<bool> placed_;
    std::vector<DirectedPath> paths_;
};

// Complete deterministic search, placing one path per X vertex in index
// order; role availability prunes the tree.
class ExhaustiveSolver {
public:
    explicit ExhaustiveSolver(const BipartiteGraph& g) : g_(&g), n_(g.n()) {
        used_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_),
                     false);
        center_free_.assign(static_cast<std::size_t>(n_), true);
        end_free_.assign(static_cast<std::size_t>(n_), true);
    }

    bool solve(std::vector<DirectedPath>& out) {
        paths_.clear();
        if (!place(0)) return false;
        out = paths_;
        return true;
    }

private:
    bool edge_used(int x, int y) const {
        return used_[static_cast<std::size_t>(x) * static_cast<std::size_t>(n_) +
                     static_cast<std::size_t>(y)];
    }
    void set_edge(int x, int y, bool v) {
        used_[static_cast<std::size_t>(x) * static_cast<std::size_t>(n_) +
              static_cast<std::size_t>(y)] = v;
    }

    bool place(int x0) {
        if (x0 == n_) return true;
        for (int y0 : g_->neighbors_of_x(x0)) {
            if (edge_used(x0, y0)) continue;
            set_edge(x0, y0, true);
            for (int x1 : g_->neighbors_of_y(y0)) {
                if (edge_used(x1, y0) || !center_free_[static_cast<std::size_t>(x1)]) {
                    continue;
                }
                set_edge(x1, y0, true);
                center_free_[static_cast<std::size_t>(x1)] = false;
                for (int y1 : g_->neighbors_of_x(x1)) {
                    if (edge_used(x1, y1)) continue;
                    set_edge(x1, y1, true);
                    for (int x2 : g_->neighbors_of_y(y1)) {
                        if (x2 == x0 || edge_used(x2, y1) ||
                            !end_free_[static_cast<std::size_t>(x2)]) {
                            continue;
                        }
                        set_edge(x2, y1, true);
                        end_free_[static_cast<std::size_t>(x2)] = false;
                        paths_.push_back(DirectedPath{{x0, y0, x1, y1, x2}});
                        if (place(x0 + 1)) return true;
                        paths_.pop_back();
                        end_free_[static_cast<std::size_t>(x2)] = true;
                        set_edge(x2, y1, false);
                    }
                    set_edge(x1, y1, false);
                }
                center_free_[static_cast<std::size_t>(x1)] = true;
                set_edge(x1, y0, false);
            }
            set_edge(x0, y0, false);
        }
        return false;
    }

    const BipartiteGraph* g_;
    int n_;
    std::vector<bool> used_;
    std::vector<bool> center_free_, end_free_;
    std::vector<DirectedPath> paths_;
};

}  // namespace

PathDecomposition p4_decompose(const BipartiteGraph& g4, std::uint64_t seed,
                               int budget) {
    if (g4.d() != 4) {
        throw NotFourRegular("p4_decompose: graph is " +
                             std::to_string(g4.d()) + "-regular, need 4");
    }
    const int n = g4.n();
    Rng rng(seed);
    PathDecomposition pd;
    pd.n = n;

    ArcTables tables;
    bool have_tables = false;
    const long long node_cap = 256LL * n;
    for (int attempt = 0; attempt < budget; ++attempt) {
        if (!have_tables || attempt % 100 == 0) {
            tables = build_tables(
                eulerian_orientation(g4, derive_seed(seed, 1000000u + attempt)),
                n);
            have_tables = true;
        }
        PairingSearch search(tables, n, rng, node_cap);
        if (search.run(pd.paths)) {
            const auto check = check_path_decomposition(g4, pd);
            if (!check.ok) {
                throw InternalError("p4_decompose: invalid output: " +
                                    check.detail);
            }
            return pd;
        }
    }
    if (n <= 10) {
        ExhaustiveSolver solver(g4);
        if (solver.solve(pd.paths)) {
            const auto check = check_path_decomposition(g4, pd);
            if (!check.ok) {
                throw InternalError("p4_decompose: invalid output: " +
                                    check.detail);
            }
            return pd;
        }
        throw BudgetExhausted(
            "p4_decompose: exhaustive search found no decomposition");
    }
    throw BudgetExhausted("p4_decompose: no decomposition within " +
                          std::to_string(budget) + " attempts");
}

}  // namespace fderange
