#pragma once

// Reference counter for the tests only: counts permutations avoiding the
// forbidden image at every defined position by recursive assignment with
// pruning. Deliberately shares no code path with the library, whose brute
// force walks std::next_permutation.

#include <vector>

#include "fderange/types.hpp"

namespace testoracle {

inline long long count_rec(std::size_t pos, const std::vector<int>& forbidden,
                           std::vector<bool>& used) {
    if (pos == forbidden.size()) return 1;
    long long total = 0;
    for (int target = 0; target < static_cast<int>(forbidden.size());
         ++target) {
        if (used[static_cast<std::size_t>(target)] ||
            target == forbidden[pos]) {
            continue;
        }
        used[static_cast<std::size_t>(target)] = true;
        total += count_rec(pos + 1, forbidden, used);
        used[static_cast<std::size_t>(target)] = false;
    }
    return total;
}

inline long long count_avoiding(const fderange::PartialFunction& f) {
    std::vector<bool> used(static_cast<std::size_t>(f.n()), false);
    return count_rec(0, f.images(), used);
}

}  // namespace testoracle
