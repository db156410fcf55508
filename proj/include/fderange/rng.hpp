#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace fderange {

// splitmix64 output function. Child seeds derived from (master, index) are
// independent of evaluation order, so serial and parallel sweeps see the
// same streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + (index + 1) * 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// mt19937_64 plus bounded draws that avoid std::uniform_int_distribution,
// whose output is implementation-defined; a given seed produces the same
// values on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits() { return eng_(); }

    // uniform integer in [0, n), n >= 1
    std::uint64_t below64(std::uint64_t n) {
        const std::uint64_t bound = ~0ull - ~0ull % n;
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= bound);
        return v % n;
    }

    int below(int n) {
        return static_cast<int>(below64(static_cast<std::uint64_t>(n)));
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
            std::swap(v[i], v[static_cast<std::size_t>(below(i + 1))]);
        }
    }

    // uniform permutation of 0..n-1
    std::vector<int> permutation(int n) {
        std::vector<int> p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), 0);
        shuffle(p);
        return p;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace fderange
