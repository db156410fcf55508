#include "fderange/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "fderange/counting.hpp"
#include "fderange/errors.hpp"
#include "fderange/rng.hpp"

namespace fderange {

double rational_to_double(const Rational& r) {
    return r.convert_to<double>();
}

namespace {

double deviation_from_inv_e(const Rational& ratio) {
    return std::abs(rational_to_double(ratio) - kInvE);
}

// Largest feasible even A at size n (the most-collided total profile).
int max_collision_a(int n) { return n - n % 2; }

DeviationRow scan_two_max_profiles(int n) {
    DeviationRow row;
    row.n = n;
    row.k = 2;
    const Count nfact = factorial(n);
    bool first = true;
    for (int a = max_collision_a(n); a >= 0; a -= 2) {
        const TwoMaxProfile p{a, n - a, 0};
        const Rational ratio(count_two_max(p), nfact);
        const double dev = deviation_from_inv_e(ratio);
        if (first || dev > row.max_deviation) {
            first = false;
            row.max_deviation = dev;
            row.worst_ratio = ratio;
            row.worst_profile = to_multiplicity_profile(p);
        }
    }
    return row;
}

std::string describe_profile(const MultiplicityProfile& mp) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < mp.sizes.size(); ++i) {
        if (i) os << ",";
        os << mp.sizes[i];
    }
    os << ") n=" << mp.domain_size;
    return os.str();
}

}  // namespace

DeviationRow exhaustive_profile_deviation(int n) {
    if (n < 2) {
        throw ValidationError("exhaustive_profile_deviation: need n >= 2");
    }
    return scan_two_max_profiles(n);
}

std::vector<DeviationRow> limit_sweep(int k, const std::vector<int>& n_list,
                                      int samples_per_n, std::uint64_t seed) {
    if (k < 1) throw ValidationError("limit_sweep: need k >= 1");
    for (int n : n_list) {
        if (n < k) {
            throw ValidationError("limit_sweep: every n must be >= k");
        }
    }
    if (k >= 3 && samples_per_n < 1) {
        throw ValidationError("limit_sweep: need samples_per_n >= 1 for k >= 3");
    }
    std::vector<DeviationRow> rows;
    rows.reserve(n_list.size());
    for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
        const int n = n_list[idx];
        DeviationRow row;
        if (k == 1) {
            row.n = n;
            row.k = 1;
            row.worst_profile =
                MultiplicityProfile::make(std::vector<int>(n, 1), n);
            row.worst_ratio = Rational(classical_derangement_count(n),
                                       factorial(n));
            row.max_deviation = deviation_from_inv_e(row.worst_ratio);
        } else if (k == 2) {
            row = scan_two_max_profiles(n);
            if (n <= 12) {
                const int a = max_collision_a(n);
                const auto expected =
                    to_multiplicity_profile(TwoMaxProfile{a, n - a, 0});
                if (!(row.worst_profile.sizes == expected.sizes &&
                      row.worst_profile.domain_size == expected.domain_size)) {
                    throw InternalError(
                        "limit_sweep: k=2 worst profile is not the "
                        "maximum-collision profile at n=" + std::to_string(n));
                }
            }
        } else {
            row.n = n;
            row.k = k;
            const Count nfact = factorial(n);
            bool first = true;
            for (int j = 0; j < samples_per_n; ++j) {
                const auto f = sample_kmax_function(
                    n, k, derive_seed(seed, idx * 1000003ull + j));
                const auto mp = multiplicity_profile(f);
                const Rational ratio(count_by_inclusion_exclusion(mp), nfact);
                const double dev = deviation_from_inv_e(ratio);
                if (first || dev > row.max_deviation) {
                    first = false;
                    row.max_deviation = dev;
                    row.worst_ratio = ratio;
                    row.worst_profile = mp;
                }
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

EquitableSplit equitable_split_ratio(int n, int s) {
    if (n < 1 || s < 1) {
        throw ValidationError("equitable_split_ratio: need n >= 1 and s >= 1");
    }
    if (n % s != 0) {
        throw NotDivisible("equitable_split_ratio: s = " + std::to_string(s) +
                           " does not divide n = " + std::to_string(n));
    }
    const int m = n / s;  // preimage size of each of the s targets
    EquitableSplit out;
    out.n = n;
    out.s = s;
    const auto mp = MultiplicityProfile::make(std::vector<int>(s, m), n);
    out.count = count_by_inclusion_exclusion(mp);
    if (s == 2) {
        const Count closed = Count(n / 2) * Count(n / 2) * factorial(n - 2);
        if (closed != out.count) {
            throw InternalError(
                "equitable_split_ratio: closed form mismatch at n=" +
                std::to_string(n));
        }
    }
    out.ratio = Rational(out.count, factorial(n));
    out.ratio_double = rational_to_double(out.ratio);
    Rational lim(1);
    const Rational base(s - 1, s);
    for (int i = 0; i < s; ++i) lim *= base;
    out.limit = lim;
    out.limit_double = rational_to_double(out.limit);
    return out;
}

namespace {

LemmaAuditRecord audit_one(int n, int r, const std::vector<int>& images) {
    LemmaAuditRecord rec;
    rec.n = n;
    rec.r = r;
    rec.images = images;
    const auto f = PartialFunction::from_one_based(images);
    std::vector<int> star_images = images;
    star_images[r - 1] = 2;
    const auto fstar = PartialFunction::from_one_based(star_images);
    rec.d_f = count_brute_force(f);
    rec.d_fstar = count_brute_force(fstar);
    rec.holds_star = rec.d_f <= rec.d_fstar;
    rec.holds_bound = rec.d_fstar - rec.d_f <= factorial(n - 2);
    return rec;
}

}  // namespace

LemmaAuditReport lemma_audit(int n_max, std::uint64_t seed) {
    if (n_max < 2 || n_max > 8) {
        throw ValidationError("lemma_audit: need 2 <= n_max <= 8");
    }
    LemmaAuditReport report;
    report.n_max = n_max;
    constexpr int kSampleBudget = 60;
    for (int n = 2; n <= n_max; ++n) {
        for (int r = 2; r <= n; ++r) {
            std::vector<int> images(n, 0);
            for (int i = 0; i < r; ++i) images[i] = 1;
            const int tail = n - r;            // positions r+1..n
            const int alphabet = n - 2;        // targets {3..n}
            double space = 1;
            for (int i = 0; i < tail; ++i) space *= alphabet;
            std::vector<std::vector<int>> completions;
            if (n <= 6 || space <= kSampleBudget) {
                std::vector<int> tuple(tail, 0);
                while (true) {
                    std::vector<int> comp(tail);
                    for (int i = 0; i < tail; ++i) comp[i] = 3 + tuple[i];
                    completions.push_back(comp);
                    int pos = tail - 1;
                    while (pos >= 0 && tuple[pos] == alphabet - 1) {
                        tuple[pos--] = 0;
                    }
                    if (pos < 0) break;
                    ++tuple[pos];
                }
            } else {
                Rng rng(derive_seed(seed, 100ull * n + r));
                for (int j = 0; j < kSampleBudget; ++j) {
                    std::vector<int> comp(tail);
                    for (int i = 0; i < tail; ++i) {
                        comp[i] = 3 + rng.below(alphabet);
                    }
                    completions.push_back(comp);
                }
            }
            for (const auto& comp : completions) {
                for (int i = 0; i < tail; ++i) images[r + i] = comp[i];
                auto rec = audit_one(n, r, images);
                if (!rec.holds_star) ++report.star_violations;
                if (!rec.holds_bound) {
                    ++report.bound_violations;
                    if (r == 2) ++report.bound_violations_r2;
                }
                report.records.push_back(std::move(rec));
            }
        }
    }
    return report;
}

bool PropertyReport::passed() const {
    for (const auto& c : checks) {
        if (c.failures != 0) return false;
    }
    return true;
}

namespace {

// All multisets of positive integers (descending) with sum <= n.
void enumerate_profiles(int n, int remaining, int max_part,
                        std::vector<int>& parts,
                        std::vector<MultiplicityProfile>& out) {
    out.push_back(MultiplicityProfile::make(parts, n));
    for (int p = std::min(max_part, remaining); p >= 1; --p) {
        parts.push_back(p);
        enumerate_profiles(n, remaining - p, p, parts, out);
        parts.pop_back();
    }
}

std::vector<MultiplicityProfile> all_profiles(int n) {
    std::vector<MultiplicityProfile> out;
    std::vector<int> parts;
    enumerate_profiles(n, n, n, parts, out);
    return out;
}

PartialFunction random_partial_function(int n, Rng& rng) {
    std::vector<int> images(n);
    for (int i = 0; i < n; ++i) {
        const int u = rng.below(n + 1);
        images[i] = (u == n) ? kUndefined : u;
    }
    return PartialFunction(n, images);
}

void note_failure(PropertyCheck& check, const std::string& what) {
    if (check.failures == 0) check.first_failure = what;
    ++check.failures;
}

}  // namespace

PropertyReport property_suite(int n_max, std::uint64_t seed) {
    if (n_max < 2 || n_max > 12) {
        throw ValidationError("property_suite: need 2 <= n_max <= 12");
    }
    PropertyReport report;
    report.n_max = n_max;
    Rng rng(derive_seed(seed, 0));

    PropertyCheck exhaustive{"oracle-matches-brute-force-exhaustive", 0, 0, ""};
    for (int n = 1; n <= std::min(n_max, 7); ++n) {
        for (const auto& mp : all_profiles(n)) {
            const auto f = canonical_function(mp);
            ++exhaustive.checked;
            if (count_brute_force(f) != count_by_inclusion_exclusion(mp)) {
                note_failure(exhaustive, "profile " + describe_profile(mp));
            }
        }
    }
    report.checks.push_back(exhaustive);

    PropertyCheck random_check{"oracle-matches-brute-force-random", 0, 0, ""};
    const int random_n_cap = std::min(n_max, 8);
    for (int j = 0; j < 500; ++j) {
        const int n = 1 + rng.below(random_n_cap);
        const auto f = random_partial_function(n, rng);
        const auto mp = multiplicity_profile(f);
        ++random_check.checked;
        if (count_brute_force(f) != count_by_inclusion_exclusion(mp)) {
            note_failure(random_check, "random function, profile " +
                                           describe_profile(mp));
        }
    }
    report.checks.push_back(random_check);

    PropertyCheck rec1{"recursion1-identity", 0, 0, ""};
    PropertyCheck rec2{"recursion2-identity", 0, 0, ""};
    PropertyCheck parity{"parity-even-when-collided", 0, 0, ""};
    PropertyCheck mono{"weak-monotonicity-with-strictness", 0, 0, ""};
    PropertyCheck telescope{"telescoping-bound", 0, 0, ""};
    PropertyCheck agree{"evaluator-agreement", 0, 0, ""};
    TwoMaxCounter counter;
    for (int n = 1; n <= n_max; ++n) {
        for (int a = 0; a <= n; a += 2) {
            for (int b = 0; a + b <= n; ++b) {
                const int c = n - a - b;
                const TwoMaxProfile p{a, b, c};
                const Count d = count_two_max(p);
                const std::string where = "A=" + std::to_string(a) +
                                          " B=" + std::to_string(b) +
                                          " C=" + std::to_string(c);
                if (a > 0 && b > 0) {
                    Count rhs = Count(c + a / 2) *
                                count_two_max({a, b - 1, c});
                    if (b >= 2) {
                        rhs += Count(b - 1) * count_two_max({a, b - 2, c + 1});
                    }
                    rhs += Count(a / 2) * count_two_max({a - 2, b - 1, c + 2});
                    ++rec1.checked;
                    if (d != rhs) note_failure(rec1, where);
                }
                if (b >= 2) {
                    ++rec2.checked;
                    if (d != count_two_max({a + 2, b - 2, c}) +
                                 count_two_max({a, b - 2, c})) {
                        note_failure(rec2, where);
                    }
                    const Count larger_a = count_two_max({a + 2, b - 2, c});
                    const Count shrunk = count_two_max({a, b - 2, c});
                    ++mono.checked;
                    if (d < larger_a || ((d > larger_a) != (shrunk > 0))) {
                        note_failure(mono, where);
                    }
                }
                if (a > 0) {
                    ++parity.checked;
                    if (d % 2 != 0) note_failure(parity, where);
                }
                if (c == 0 && n >= 2) {
                    const Count gap = classical_derangement_count(n) - d;
                    ++telescope.checked;
                    if (gap < 0 || gap > Count(a / 2) * factorial(n - 2)) {
                        note_failure(telescope, where);
                    }
                }
                ++agree.checked;
                if (counter.by_recursion1(p) != d ||
                    counter.by_recursion2(p) != d) {
                    note_failure(agree, where);
                }
            }
        }
    }
    report.checks.push_back(rec1);
    report.checks.push_back(rec2);
    report.checks.push_back(parity);
    report.checks.push_back(mono);
    report.checks.push_back(telescope);
    report.checks.push_back(agree);

    PropertyCheck label{"label-invariance", 0, 0, ""};
    for (int n = 2; n <= std::min(n_max, 7); ++n) {
        for (int j = 0; j < 20; ++j) {
            const auto f = random_partial_function(n, rng);
            const auto sigma = rng.permutation(n);
            const auto pi = rng.permutation(n);
            std::vector<int> relabeled(n);
            for (int i = 0; i < n; ++i) {
                const int pre = pi[i];
                relabeled[i] =
                    f.defined(pre) ? sigma[f.image(pre)] : kUndefined;
            }
            const PartialFunction g(n, relabeled);
            ++label.checked;
            if (count_brute_force(f) != count_brute_force(g)) {
                note_failure(label, "n=" + std::to_string(n) + " relabeling");
            }
        }
    }
    report.checks.push_back(label);

    return report;
}

}  // namespace fderange
