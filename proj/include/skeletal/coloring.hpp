#pragma once

#include <vector>

#include <json.hpp>

#include "skeletal/hypergraph.hpp"
#include "skeletal/rng.hpp"

namespace skeletal {

namespace detail {

// lexicographic rank of a sorted k-subset of [0, n)
inline long long subset_rank(const std::vector<int>& s, int n)
{
    long long rank = 0;
    int prev = -1;
    const int k = static_cast<int>(s.size());
    for (int i = 0; i < k; ++i) {
        for (int v = prev + 1; v < s[static_cast<std::size_t>(i)]; ++v)
            rank += binomial(n - v - 1, k - i - 1);
        prev = s[static_cast<std::size_t>(i)];
    }
    return rank;
}

inline std::vector<int> subset_unrank(long long rank, int n, int k)
{
    std::vector<int> s;
    int v = 0;
    for (int i = 0; i < k; ++i) {
        while (true) {
            long long c = binomial(n - v - 1, k - i - 1);
            if (rank < c) {
                s.push_back(v);
                ++v;
                break;
            }
            rank -= c;
            ++v;
        }
    }
    return s;
}

} // namespace detail

// Total q-coloring of the edges of K_N^(k); colors indexed by the
// lexicographic rank of the k-subset.
struct EdgeColoring {
    int N = 0;
    int k = 0;
    int q = 0;
    std::vector<int> colors; // size C(N, k)

    EdgeColoring() = default;
    EdgeColoring(int N_, int k_, int q_, std::vector<int> colors_)
        : N(N_), k(k_), q(q_), colors(std::move(colors_))
    {
        validate();
    }

    void validate() const
    {
        if (N < 0 || k < 1 || q < 1)
            throw ArgumentError("edge coloring: bad parameters");
        if (static_cast<long long>(colors.size()) != binomial(N, k))
            throw ArgumentError("edge coloring: color vector must cover all C(N,k) edges");
        for (int c : colors)
            if (c < 0 || c >= q)
                throw ArgumentError("edge coloring: color out of range");
    }

    long long edge_total() const { return static_cast<long long>(colors.size()); }

    int color_of(const std::vector<int>& sorted_edge) const
    {
        return colors.at(static_cast<std::size_t>(detail::subset_rank(sorted_edge, N)));
    }

    static EdgeColoring random(int N, int k, int q, std::uint64_t seed)
    {
        Rng rng(seed);
        std::vector<int> colors(static_cast<std::size_t>(binomial(N, k)));
        for (auto& c : colors)
            c = rng.below_int(q);
        return EdgeColoring(N, k, q, std::move(colors));
    }

    // hypergraph of the edges carrying one color
    Hypergraph color_class(int c) const
    {
        std::vector<std::vector<int>> edges;
        for (long long r = 0; r < edge_total(); ++r)
            if (colors[static_cast<std::size_t>(r)] == c)
                edges.push_back(detail::subset_unrank(r, N, k));
        return Hypergraph(k, N, std::move(edges));
    }
};

inline nlohmann::json to_json(const EdgeColoring& f)
{
    nlohmann::json j;
    j["N"] = f.N;
    j["k"] = f.k;
    j["q"] = f.q;
    j["colors"] = f.colors;
    return j;
}

inline EdgeColoring coloring_from_json(const nlohmann::json& j)
{
    for (const char* field : {"N", "k", "q", "colors"})
        if (!j.contains(field))
            throw FileFormatError(std::string(field) + ": missing required field");
    try {
        return EdgeColoring(j["N"].get<int>(), j["k"].get<int>(), j["q"].get<int>(),
                            j["colors"].get<std::vector<int>>());
    } catch (const Error& e) {
        throw FileFormatError(std::string("colors: ") + e.what());
    }
}

} // namespace skeletal
