#pragma once

#include <cstdint>
#include <map>
#include <tuple>

#include "fderange/types.hpp"

namespace fderange {

inline constexpr int kBruteForceCap = 10;

Count factorial(int n);

// Enumerates all n! permutations; the ground truth everything else is
// checked against. Throws TooLarge beyond the cap.
Count count_brute_force(const PartialFunction& f, int cap = kBruteForceCap);

// sum_j (-1)^j e_j(m_1..m_t) (n-j)! where e_j is the j-th elementary
// symmetric polynomial of the preimage sizes.
Count count_by_inclusion_exclusion(const MultiplicityProfile& mp);

// Classical derangement numbers D(n); D(0) = 1.
Count classical_derangement_count(int n);

// D[A,B,C] straight from inclusion-exclusion.
inline Count count_two_max(const TwoMaxProfile& p) {
    return count_by_inclusion_exclusion(to_multiplicity_profile(p));
}

// Memoized evaluation of the two recurrences for 2-max counts D[A,B,C].
// Cells outside a recurrence's domain (A = 0 or B = 0 for the first,
// B < 2 for the second) fall back to the inclusion-exclusion count;
// in particular D[0,0,C] = C!.
class TwoMaxCounter {
public:
    // D[A,B,C] = (C + A/2) D[A,B-1,C] + (B-1) D[A,B-2,C+1]
    //          + (A/2) D[A-2,B-1,C+2]
    Count by_recursion1(const TwoMaxProfile& p);

    // D[A,B,C] = D[A+2,B-2,C] + D[A,B-2,C]; the second term lives at
    // domain size n - 2.
    Count by_recursion2(const TwoMaxProfile& p);

private:
    using Key = std::tuple<int, int, int>;
    std::map<Key, Count> memo1_, memo2_;
};

// Every feasible (A, B) cell at domain size n, computed by the first
// recursion and cross-checked against inclusion-exclusion. A mismatch is a
// defect and throws InternalError.
CountTable derangement_table(int n);

// Uniform over all total k-max functions {0..n-1} -> {0..n-1}, by rejection
// from uniform functions; k = 1 is drawn directly as a random permutation.
// Throws RejectionBudgetExceeded after 10000 failed draws.
PartialFunction sample_kmax_function(int n, int k, std::uint64_t seed);

}  // namespace fderange
