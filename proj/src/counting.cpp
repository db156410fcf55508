#include "fderange/counting.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "fderange/errors.hpp"
#include "fderange/rng.hpp"

namespace fderange {

Count factorial(int n) {
    if (n < 0) throw ValidationError("factorial: negative argument");
    Count r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

Count count_brute_force(const PartialFunction& f, int cap) {
    const int n = f.n();
    if (n > cap) {
        throw TooLarge("count_brute_force: n = " + std::to_string(n) +
                       " exceeds cap " + std::to_string(cap));
    }
    std::vector<int> g(n);
    std::iota(g.begin(), g.end(), 0);
    Count total = 0;
    do {
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            if (f.defined(i) && g[i] == f.image(i)) {
                ok = false;
                break;
            }
        }
        if (ok) ++total;
    } while (std::next_permutation(g.begin(), g.end()));
    return total;
}

Count count_by_inclusion_exclusion(const MultiplicityProfile& mp) {
    const int n = mp.domain_size;
    const int t = static_cast<int>(mp.sizes.size());
    // e[j] = j-th elementary symmetric polynomial of the preimage sizes,
    // built up as the product of (1 + m_c x).
    std::vector<Count> e(t + 1, 0);
    e[0] = 1;
    for (int c = 0; c < t; ++c) {
        for (int j = c + 1; j >= 1; --j) e[j] += Count(mp.sizes[c]) * e[j - 1];
    }
    Count total = 0;
    for (int j = 0; j <= t; ++j) {
        const Count term = e[j] * factorial(n - j);
        if (j % 2 == 0) {
            total += term;
        } else {
            total -= term;
        }
    }
    return total;
}

Count classical_derangement_count(int n) {
    if (n < 0) throw ValidationError("classical_derangement_count: negative n");
    Count d = 1;  // D(0)
    for (int i = 1; i <= n; ++i) {
        d = Count(i) * d + (i % 2 == 0 ? 1 : -1);
    }
    return d;
}

Count TwoMaxCounter::by_recursion1(const TwoMaxProfile& p) {
    p.validate();
    const Key key{p.collided, p.unique, p.undefined};
    if (auto it = memo1_.find(key); it != memo1_.end()) return it->second;
    Count result;
    if (p.collided == 0 || p.unique == 0) {
        result = count_two_max(p);
    } else {
        const int A = p.collided, B = p.unique, C = p.undefined;
        result = Count(C + A / 2) * by_recursion1({A, B - 1, C});
        if (B >= 2) {
            result += Count(B - 1) * by_recursion1({A, B - 2, C + 1});
        }
        result += Count(A / 2) * by_recursion1({A - 2, B - 1, C + 2});
    }
    memo1_[key] = result;
    return result;
}

Count TwoMaxCounter::by_recursion2(const TwoMaxProfile& p) {
    p.validate();
    const Key key{p.collided, p.unique, p.undefined};
    if (auto it = memo2_.find(key); it != memo2_.end()) return it->second;
    Count result;
    if (p.unique >= 2) {
        result = by_recursion2({p.collided + 2, p.unique - 2, p.undefined}) +
                 by_recursion2({p.collided, p.unique - 2, p.undefined});
    } else {
        result = count_two_max(p);
    }
    memo2_[key] = result;
    return result;
}

CountTable derangement_table(int n) {
    if (n < 0) throw ValidationError("derangement_table: need n >= 0");
    CountTable table(n);
    TwoMaxCounter counter;
    for (int a = 0; a <= n; a += 2) {
        for (int b = 0; a + b <= n; ++b) {
            const TwoMaxProfile p{a, b, n - a - b};
            const Count via_recursion = counter.by_recursion1(p);
            const Count via_oracle = count_two_max(p);
            if (via_recursion != via_oracle) {
                throw InternalError(
                    "derangement_table: recursion/oracle mismatch at A=" +
                    std::to_string(a) + " B=" + std::to_string(b));
            }
            table.set(a, b, via_recursion);
        }
    }
    if (table.at(0, n) != classical_derangement_count(n)) {
        throw InternalError("derangement_table: D[0,n,0] != D(n)");
    }
    if (table.at(0, 0) != factorial(n)) {
        throw InternalError("derangement_table: D[0,0,n] != n!");
    }
    return table;
}

PartialFunction sample_kmax_function(int n, int k, std::uint64_t seed) {
    if (n <= 0) throw ZeroSize("sample_kmax_function: n must be positive");
    if (k < 1 || k > n) {
        throw ValidationError("sample_kmax_function: k must be in [1, n]");
    }
    Rng rng(seed);
    if (k == 1) return PartialFunction(n, rng.permutation(n));
    constexpr int kBudget = 10000;
    std::vector<int> images(n);
    for (int attempt = 0; attempt < kBudget; ++attempt) {
        for (int i = 0; i < n; ++i) images[i] = rng.below(n);
        PartialFunction f(n, images);
        if (f.is_k_max(k)) return f;
    }
    throw RejectionBudgetExceeded(
        "sample_kmax_function: no k-max function in 10000 draws");
}

}  // namespace fderange
