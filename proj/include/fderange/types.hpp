#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <utility>
#include <vector>

#include "fderange/errors.hpp"

namespace fderange {

// Counts are exact; n! outgrows every fixed-width integer near n = 21.
using Count = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kUndefined = -1;

// A self-map of {0..n-1} that may leave positions undefined and may send
// several positions to the same target. The maximum preimage size over all
// targets is the function's k-max order.
class PartialFunction {
public:
    // images[i] is the 0-based target of position i, or kUndefined.
    PartialFunction(int n, std::vector<int> images);

    // Convenience for 1-based listings where 0 marks an undefined position.
    static PartialFunction from_one_based(const std::vector<int>& images);

    int n() const { return n_; }
    bool defined(int i) const { return images_[static_cast<std::size_t>(i)] != kUndefined; }
    int image(int i) const { return images_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& images() const { return images_; }

    int defined_count() const;
    int max_preimage_multiplicity() const;
    bool is_k_max(int k) const { return max_preimage_multiplicity() <= k; }

    bool operator==(const PartialFunction&) const = default;

private:
    int n_;
    std::vector<int> images_;
};

// A bijection on {0..n-1}.
class Permutation {
public:
    explicit Permutation(std::vector<int> images);
    static Permutation identity(int n);

    int n() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& images() const { return images_; }

    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> images_;
};

// Multiset of preimage sizes of the targets a function actually hits,
// together with the domain size. Counts of f-derangements depend on the
// function only through this profile.
struct MultiplicityProfile {
    std::vector<int> sizes;  // descending, each >= 1, sum <= domain_size
    int domain_size = 0;

    static MultiplicityProfile make(std::vector<int> sizes, int domain_size);

    int defined_count() const;
    int undefined_count() const { return domain_size - defined_count(); }
    bool is_two_max() const;

    bool operator==(const MultiplicityProfile&) const = default;
};

// The (A, B, C) parameters of a 2-max function: collided counts the items
// whose image is shared with another item (so it is always even), unique
// counts items with a sole image, and undefined the items the function
// does not map. n = A + B + C.
struct TwoMaxProfile {
    int collided = 0;   // A
    int unique = 0;     // B
    int undefined = 0;  // C

    static TwoMaxProfile make(int collided, int unique, int undefined);

    int n() const { return collided + unique + undefined; }
    void validate() const;

    bool operator==(const TwoMaxProfile&) const = default;
};

MultiplicityProfile multiplicity_profile(const PartialFunction& f);
MultiplicityProfile to_multiplicity_profile(const TwoMaxProfile& p);

// Throws NotTwoMax if some target has three or more preimages.
TwoMaxProfile two_max_profile(const PartialFunction& f);

// A concrete function realizing the profile: the first size_0 positions map
// to target 0, the next size_1 to target 1, ..., the rest stay undefined.
PartialFunction canonical_function(const MultiplicityProfile& mp);
PartialFunction canonical_function(const TwoMaxProfile& p);

// True iff g(i) != f(i) everywhere f is defined.
bool is_f_derangement(const Permutation& g, const PartialFunction& f);

// Exact counts for every feasible (A, B) cell at a fixed domain size;
// C is determined as n - A - B.
class CountTable {
public:
    explicit CountTable(int n) : n_(n) {
        if (n < 0) throw ValidationError("table size must be nonnegative");
    }

    int n() const { return n_; }
    void set(int collided, int unique, Count value);
    const Count& at(int collided, int unique) const;
    bool contains(int collided, int unique) const;
    const std::map<std::pair<int, int>, Count>& cells() const { return cells_; }

private:
    int n_;
    std::map<std::pair<int, int>, Count> cells_;  // keyed (A, B)
};

}  // namespace fderange
