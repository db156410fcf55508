#include "fderange/heuristic.hpp"

#include <cmath>
#include <optional>
#include <set>
#include <utility>

#include "fderange/errors.hpp"
#include "fderange/rng.hpp"

namespace fderange {

namespace {

PartialFunction avoidance(const PathDecomposition& pd, bool from_start) {
    std::vector<int> images(static_cast<std::size_t>(pd.n), kUndefined);
    for (const auto& p : pd.paths) {
        const int x = from_start ? p.start() : p.end();
        const int y = from_start ? p.second_y() : p.first_y();
        if (images[static_cast<std::size_t>(x)] != kUndefined) {
            throw InternalError("avoidance: x" + std::to_string(x) +
                                " anchors two paths");
        }
        images[static_cast<std::size_t>(x)] = y;
    }
    PartialFunction f(pd.n, std::move(images));
    if (!f.is_k_max(2)) {
        throw InternalError("avoidance: function is not 2-max");
    }
    return f;
}

}  // namespace

PartialFunction extract_avoidance_function(const PathDecomposition& pd) {
    return avoidance(pd, true);
}

PartialFunction end_avoidance_function(const PathDecomposition& pd) {
    return avoidance(pd, false);
}

std::vector<FiveEdgeSubgraph> attach_matching(const PathDecomposition& pd,
                                              const Matching& m,
                                              AttachSide side) {
    if (m.n() != pd.n) {
        throw SizeMismatch("attach: matching size differs from decomposition");
    }
    std::set<std::pair<int, int>> path_edges;
    for (const auto& p : pd.paths) {
        path_edges.insert({p.v[0], p.v[1]});
        path_edges.insert({p.v[2], p.v[1]});
        path_edges.insert({p.v[2], p.v[3]});
        path_edges.insert({p.v[4], p.v[3]});
    }
    std::vector<FiveEdgeSubgraph> subs;
    subs.reserve(pd.paths.size());
    for (const auto& p : pd.paths) {
        const int anchor = side == AttachSide::Start ? p.start() : p.end();
        const int matched = m.y_of(anchor);
        if (path_edges.count({anchor, matched})) {
            throw NotDisjoint("attach: matching edge (x" +
                              std::to_string(anchor) + ", y" +
                              std::to_string(matched) + ") lies on a path");
        }
        FiveEdgeSubgraph s;
        if (side == AttachSide::Start) {
            s.starts_in_y = true;
            s.v = {matched, p.v[0], p.v[1], p.v[2], p.v[3], p.v[4]};
        } else {
            s.starts_in_y = false;
            s.v = {p.v[0], p.v[1], p.v[2], p.v[3], p.v[4], matched};
        }
        subs.push_back(s);
    }
    return subs;
}

P5Verdict verify_p5_decomposition(const BipartiteGraph& g,
                                  const std::vector<FiveEdgeSubgraph>& subs) {
    const int n = g.n();
    P5Verdict verdict;
    const auto fail = [&verdict](int offender, std::string detail) {
        verdict.ok = false;
        verdict.offender = offender;
        verdict.detail = std::move(detail);
        return verdict;
    };
    if (static_cast<int>(subs.size()) != n) {
        return fail(-1, "expected " + std::to_string(n) + " subgraphs");
    }
    std::set<std::pair<int, int>> seen;
    for (std::size_t idx = 0; idx < subs.size(); ++idx) {
        const auto& s = subs[idx];
        const std::string where = "subgraph " + std::to_string(idx);
        const auto label = [&s](int pos) {
            const bool is_y = (pos % 2 == 0) == s.starts_in_y;
            return (is_y ? "y" : "x") + std::to_string(s.v[static_cast<std::size_t>(pos)]);
        };
        for (int pos = 0; pos < 6; ++pos) {
            const int vert = s.v[static_cast<std::size_t>(pos)];
            if (vert < 0 || vert >= n) {
                return fail(static_cast<int>(idx), where + ": vertex out of range");
            }
            for (int prev = pos - 2; prev >= 0; prev -= 2) {
                if (s.v[static_cast<std::size_t>(prev)] == vert) {
                    verdict.repeated_vertex = label(pos);
                    return fail(static_cast<int>(idx),
                                where + ": vertex " + label(pos) + " repeated");
                }
            }
        }
        for (int e = 0; e < 5; ++e) {
            const bool first_is_y = (e % 2 == 0) == s.starts_in_y;
            const int a = s.v[static_cast<std::size_t>(e)];
            const int b = s.v[static_cast<std::size_t>(e + 1)];
            const int x = first_is_y ? b : a;
            const int y = first_is_y ? a : b;
            if (!g.has_edge(x, y)) {
                return fail(static_cast<int>(idx),
                            where + ": edge (x" + std::to_string(x) + ", y" +
                                std::to_string(y) + ") not in graph");
            }
            if (!seen.insert({x, y}).second) {
                return fail(static_cast<int>(idx),
                            where + ": edge (x" + std::to_string(x) + ", y" +
                                std::to_string(y) + ") reused");
            }
        }
    }
    if (seen.size() != g.edges().size()) {
        return fail(-1, "subgraphs do not cover every edge");
    }
    return verdict;
}

namespace {

struct OptionCheck {
    bool success = false;
    bool equivalence = false;
    PartialFunction f;
    Permutation g;
};

OptionCheck check_option(const BipartiteGraph& g, const PathDecomposition& pd,
                         const Matching& m, AttachSide side) {
    PartialFunction f = side == AttachSide::Start
                            ? extract_avoidance_function(pd)
                            : end_avoidance_function(pd);
    Permutation gm = m.as_permutation();
    const P5Verdict verdict =
        verify_p5_decomposition(g, attach_matching(pd, m, side));
    const bool predicted = is_f_derangement(gm, f);
    return OptionCheck{verdict.ok, verdict.ok == predicted, std::move(f),
                       std::move(gm)};
}

// Decompose g minus the given matching, retrying with fresh solver seeds.
std::optional<PathDecomposition> decompose_option(const BipartiteGraph& g,
                                                  const Matching& m,
                                                  std::uint64_t trial_seed,
                                                  int seed_base, int budget,
                                                  int& retries) {
    const BipartiteGraph rest = remove_matching(g, m);
    for (int r = 0; r <= 5; ++r) {
        try {
            return p4_decompose(rest, derive_seed(trial_seed, seed_base + r),
                                budget);
        } catch (const BudgetExhausted&) {
            ++retries;
        }
    }
    return std::nullopt;
}

void record_option(TrialOutcome& out, const OptionCheck& check) {
    out.success = check.success;
    if (!check.equivalence) out.equivalence_ok = false;
    out.f_images = check.f.images();
    out.g_images = check.g.images();
}

}  // namespace

TrialOutcome run_trial(int n, std::uint64_t seed, Strategy strategy,
                       int budget) {
    if (n < 5) throw ValidationError("run_trial: need n >= 5");
    TrialOutcome out;
    out.seed = seed;
    out.n = n;
    out.strategy = strategy;
    const BipartiteGraph g = random_regular_bipartite(n, 5, derive_seed(seed, 0));
    out.graph_id = g.id();

    if (strategy == Strategy::SingleShot) {
        std::optional<PathDecomposition> paths;
        std::optional<Matching> matching;
        for (int r = 0; r <= 5 && !paths; ++r) {
            matching = perfect_matching_seeded(g, derive_seed(seed, 100 + r));
            const BipartiteGraph rest = remove_matching(g, *matching);
            try {
                paths = p4_decompose(rest, derive_seed(seed, 300 + r), budget);
            } catch (const BudgetExhausted&) {
                ++out.solver_retries;
            }
        }
        if (!paths) {
            out.solver_failed = true;
            return out;
        }
        out.options_tried = 1;
        const auto start_check =
            check_option(g, *paths, *matching, AttachSide::Start);
        record_option(out, start_check);
        // The End-side equivalence is part of the same invariant; exercise
        // it even though SingleShot succeeds on the Start side only.
        const auto end_check =
            check_option(g, *paths, *matching, AttachSide::End);
        if (!end_check.equivalence) out.equivalence_ok = false;
        out.success = start_check.success;
        return out;
    }

    const std::vector<Matching> factors = one_factorization(g);
    bool any_decomposed = false;
    for (std::size_t i = 0; i < factors.size() && !out.success; ++i) {
        const auto paths =
            decompose_option(g, factors[i], seed,
                             300 + 10 * static_cast<int>(i), budget,
                             out.solver_retries);
        if (!paths) continue;
        any_decomposed = true;
        for (const AttachSide side : {AttachSide::Start, AttachSide::End}) {
            ++out.options_tried;
            const auto check = check_option(g, *paths, factors[i], side);
            record_option(out, check);
            if (out.success) break;
        }
    }
    out.solver_failed = !any_decomposed;
    return out;
}

MonteCarloStats monte_carlo(int n, int trials, Strategy strategy,
                            std::uint64_t master_seed, int budget) {
    if (trials < 1) throw ValidationError("monte_carlo: need trials >= 1");
    MonteCarloStats stats;
    stats.n = n;
    stats.trials = trials;
    stats.strategy = strategy;
    stats.master_seed = master_seed;
    for (int i = 0; i < trials; ++i) {
        const TrialOutcome t =
            run_trial(n, derive_seed(master_seed, static_cast<std::uint64_t>(i)),
                      strategy, budget);
        stats.solver_retries_total += t.solver_retries;
        if (t.solver_failed) {
            ++stats.solver_failures;
            continue;
        }
        ++stats.completed;
        if (t.success) ++stats.successes;
        if (!t.equivalence_ok) ++stats.equivalence_violations;
    }
    if (stats.completed > 0) {
        const double z = 1.959963984540054;  // 97.5% normal quantile
        const double c = stats.completed;
        const double p = stats.successes / c;
        const double z2 = z * z;
        const double denom = 1 + z2 / c;
        const double center = (p + z2 / (2 * c)) / denom;
        const double half =
            z * std::sqrt(p * (1 - p) / c + z2 / (4 * c * c)) / denom;
        stats.fraction = p;
        stats.wilson_low = std::max(0.0, center - half);
        stats.wilson_high = std::min(1.0, center + half);
    }
    return stats;
}

DemoTrace demo_pipeline(const BipartiteGraph& g, std::uint64_t seed,
                        int budget) {
    if (g.d() != 5) {
        throw ValidationError("demo: the pipeline needs a 5-regular graph");
    }
    const Matching m = perfect_matching(g);
    const BipartiteGraph rest = remove_matching(g, m);
    std::optional<PathDecomposition> paths;
    for (int r = 0; r <= 5 && !paths; ++r) {
        try {
            paths = p4_decompose(rest, derive_seed(seed, 300 + r), budget);
        } catch (const BudgetExhausted&) {
            if (r == 5) throw;
        }
    }
    PartialFunction f = extract_avoidance_function(*paths);
    Permutation gm = m.as_permutation();
    auto attached = attach_matching(*paths, m, AttachSide::Start);
    P5Verdict verdict = verify_p5_decomposition(g, attached);
    const bool predicted = is_f_derangement(gm, f);
    return DemoTrace{g,
                     m,
                     *paths,
                     std::move(f),
                     std::move(gm),
                     std::move(attached),
                     verdict,
                     predicted,
                     verdict.ok == predicted};
}

}  // namespace fderange
