#include "fderange/types.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace fderange {

PartialFunction::PartialFunction(int n, std::vector<int> images)
    : n_(n), images_(std::move(images)) {
    if (n_ <= 0) throw ZeroSize("domain size must be positive");
    if (static_cast<int>(images_.size()) != n_) {
        throw SizeMismatch("expected " + std::to_string(n_) + " images, got " +
                           std::to_string(images_.size()));
    }
    for (int v : images_) {
        if (v == kUndefined) continue;
        if (v < 0 || v >= n_) {
            throw TargetOutOfRange("image " + std::to_string(v + 1) +
                                   " outside 1.." + std::to_string(n_));
        }
    }
}

PartialFunction PartialFunction::from_one_based(const std::vector<int>& images) {
    std::vector<int> zero_based;
    zero_based.reserve(images.size());
    for (int v : images) zero_based.push_back(v == 0 ? kUndefined : v - 1);
    return PartialFunction(static_cast<int>(images.size()), std::move(zero_based));
}

int PartialFunction::defined_count() const {
    return static_cast<int>(std::count_if(images_.begin(), images_.end(),
                                          [](int v) { return v != kUndefined; }));
}

int PartialFunction::max_preimage_multiplicity() const {
    std::vector<int> hits(static_cast<std::size_t>(n_), 0);
    for (int v : images_) {
        if (v != kUndefined) ++hits[static_cast<std::size_t>(v)];
    }
    return *std::max_element(hits.begin(), hits.end());
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    const int n = static_cast<int>(images_.size());
    if (n == 0) throw ZeroSize("permutation must be nonempty");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : images_) {
        if (v < 0 || v >= n) throw TargetOutOfRange("permutation value out of range");
        if (seen[static_cast<std::size_t>(v)]) {
            throw ValidationError("value repeated; not a bijection");
        }
        seen[static_cast<std::size_t>(v)] = 1;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    return Permutation(std::move(v));
}

MultiplicityProfile MultiplicityProfile::make(std::vector<int> sizes, int domain_size) {
    if (domain_size < 0) throw ValidationError("domain size must be nonnegative");
    long long sum = 0;
    for (int m : sizes) {
        if (m < 1) throw ValidationError("preimage sizes must be positive");
        sum += m;
    }
    if (sum > domain_size) throw ValidationError("preimage sizes exceed domain size");
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return MultiplicityProfile{std::move(sizes), domain_size};
}

int MultiplicityProfile::defined_count() const {
    return static_cast<int>(std::accumulate(sizes.begin(), sizes.end(), 0LL));
}

bool MultiplicityProfile::is_two_max() const {
    return sizes.empty() || sizes.front() <= 2;
}

TwoMaxProfile TwoMaxProfile::make(int collided, int unique, int undefined) {
    TwoMaxProfile p{collided, unique, undefined};
    p.validate();
    return p;
}

void TwoMaxProfile::validate() const {
    if (collided < 0 || unique < 0 || undefined < 0) {
        throw ValidationError("profile entries must be nonnegative");
    }
    if (collided % 2 != 0) {
        throw NotTwoMax("collided count A must be even in a 2-max profile");
    }
}

MultiplicityProfile multiplicity_profile(const PartialFunction& f) {
    std::vector<int> hits(static_cast<std::size_t>(f.n()), 0);
    for (int v : f.images()) {
        if (v != kUndefined) ++hits[static_cast<std::size_t>(v)];
    }
    std::vector<int> sizes;
    for (int h : hits) {
        if (h > 0) sizes.push_back(h);
    }
    return MultiplicityProfile::make(std::move(sizes), f.n());
}

MultiplicityProfile to_multiplicity_profile(const TwoMaxProfile& p) {
    p.validate();
    std::vector<int> sizes(static_cast<std::size_t>(p.collided / 2), 2);
    sizes.insert(sizes.end(), static_cast<std::size_t>(p.unique), 1);
    return MultiplicityProfile::make(std::move(sizes), p.n());
}

TwoMaxProfile two_max_profile(const PartialFunction& f) {
    const MultiplicityProfile mp = multiplicity_profile(f);
    if (!mp.is_two_max()) {
        throw NotTwoMax("some target has " + std::to_string(mp.sizes.front()) +
                        " preimages");
    }
    int pairs = 0, singles = 0;
    for (int m : mp.sizes) (m == 2 ? pairs : singles) += 1;
    return TwoMaxProfile::make(2 * pairs, singles, f.n() - 2 * pairs - singles);
}

PartialFunction canonical_function(const MultiplicityProfile& mp) {
    if (mp.domain_size <= 0) throw ZeroSize("domain size must be positive");
    std::vector<int> images(static_cast<std::size_t>(mp.domain_size), kUndefined);
    int pos = 0;
    for (std::size_t target = 0; target < mp.sizes.size(); ++target) {
        for (int j = 0; j < mp.sizes[target]; ++j) {
            images[static_cast<std::size_t>(pos++)] = static_cast<int>(target);
        }
    }
    return PartialFunction(mp.domain_size, std::move(images));
}

PartialFunction canonical_function(const TwoMaxProfile& p) {
    return canonical_function(to_multiplicity_profile(p));
}

bool is_f_derangement(const Permutation& g, const PartialFunction& f) {
    if (g.n() != f.n()) throw SizeMismatch("permutation and function sizes differ");
    for (int i = 0; i < f.n(); ++i) {
        if (f.defined(i) && g(i) == f.image(i)) return false;
    }
    return true;
}

void CountTable::set(int collided, int unique, Count value) {
    cells_[{collided, unique}] = std::move(value);
}

const Count& CountTable::at(int collided, int unique) const {
    auto it = cells_.find({collided, unique});
    if (it == cells_.end()) {
        throw ValidationError("no cell A=" + std::to_string(collided) +
                              " B=" + std::to_string(unique));
    }
    return it->second;
}

bool CountTable::contains(int collided, int unique) const {
    return cells_.count({collided, unique}) != 0;
}

}  // namespace fderange
