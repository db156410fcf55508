#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fderange/types.hpp"

namespace fderange {

// Nearest double to 1/e; the only approximate constant in the experiments.
inline constexpr double kInvE = 0.36787944117144233;

double rational_to_double(const Rational& r);

struct DeviationRow {
    int n = 0;
    int k = 0;
    MultiplicityProfile worst_profile;
    Rational worst_ratio;      // exact D/n! at the worst profile
    double max_deviation = 0;  // |worst_ratio - 1/e|
};

// Worst |D[A,B,0]/n! - 1/e| over all total 2-max profiles at size n.
// Profiles are scanned in decreasing A so ties resolve to the
// most-collided profile.
DeviationRow exhaustive_profile_deviation(int n);

// One row per n: worst deviation over total k-max functions. Exhaustive
// over profiles for k <= 2, sampled (samples_per_n draws) otherwise.
// For k = 2 and n <= 12 the worst profile is checked to be the
// maximum-collision profile; a miss throws InternalError.
std::vector<DeviationRow> limit_sweep(int k, const std::vector<int>& n_list,
                                      int samples_per_n, std::uint64_t seed);

struct EquitableSplit {
    int n = 0;
    int s = 0;           // number of target values, each hit n/s times
    Count count;
    Rational ratio;      // count / n!
    double ratio_double = 0;
    Rational limit;      // ((s-1)/s)^s
    double limit_double = 0;
};

// Exact ratio for the function splitting {1..n} equitably among s targets.
// Requires s | n; for s = 2 the closed form (n/2)^2 (n-2)! is cross-checked
// and a mismatch throws InternalError.
EquitableSplit equitable_split_ratio(int n, int s);

struct LemmaAuditRecord {
    int n = 0;
    int r = 0;
    std::vector<int> images;  // 1-based; positions 1..r map to 1
    Count d_f;                // brute force
    Count d_fstar;            // brute force, f* = f with position r -> 2
    bool holds_star = false;  // d_f <= d_fstar
    bool holds_bound = false; // d_fstar - d_f <= (n-2)!
};

struct LemmaAuditReport {
    int n_max = 0;
    std::vector<LemmaAuditRecord> records;
    long long star_violations = 0;
    long long bound_violations = 0;
    long long bound_violations_r2 = 0;  // must stay 0
};

// For each n <= n_max and r in 2..n, audits f with f(1..r) = 1 and the
// remaining positions completed over {3..n} (so nothing maps to 2),
// exhaustively when the completion space has at most 60 points or n <= 6,
// otherwise by 60 seeded samples. Both counts come from brute force only.
// Requires 2 <= n_max <= 8.
LemmaAuditReport lemma_audit(int n_max, std::uint64_t seed);

struct PropertyCheck {
    std::string name;
    long long checked = 0;
    long long failures = 0;
    std::string first_failure;
};

struct PropertyReport {
    int n_max = 0;
    std::vector<PropertyCheck> checks;
    bool passed() const;
};

// Runs the counting-layer invariants: oracle vs brute force (exhaustive
// profiles to n <= 7 plus 500 random partial functions to n <= 8), both
// recursion identities, parity, weak monotonicity with its strictness
// condition, the telescoping bound on C = 0 cells, label invariance, and
// evaluator/oracle agreement. Requires 2 <= n_max <= 12.
PropertyReport property_suite(int n_max, std::uint64_t seed);

}  // namespace fderange
