#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace skeletal {

// All randomness in the library flows through Rng. The engine is
// std::mt19937_64, which is fully specified by the standard, and the
// helpers below avoid std distributions so that a seed determines the
// exact byte-level output of every run.

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Seed splitting scheme: the per-stage seed is splitmix64(root ^ fnv1a(stage)).
// Stages of one experiment are independent of each other and reproducible
// from the root seed alone.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view stage)
{
    return splitmix64(root ^ fnv1a(stage));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // unbiased integer in [0, n)
    std::uint64_t below(std::uint64_t n)
    {
        if (n == 0)
            return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

    int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

    // 53-bit uniform in [0, 1)
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

    template <class T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    template <class T>
    const T& pick(const std::vector<T>& v)
    {
        return v[static_cast<std::size_t>(below(v.size()))];
    }

private:
    std::mt19937_64 eng_;
};

} // namespace skeletal
