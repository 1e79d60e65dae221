#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "skeletal/coloring.hpp"
#include "skeletal/degeneracy.hpp"
#include "skeletal/hypergraph.hpp"

namespace skeletal {

// Injective vertex map carrying every edge of the pattern onto an edge of
// the host.
struct Embedding {
    std::vector<int> map; // pattern vertex -> host vertex
    bool part_respecting = false;

    bool verify(const Hypergraph& pattern, const Hypergraph& host) const
    {
        if (static_cast<int>(map.size()) != pattern.vertex_count())
            return false;
        std::set<int> image;
        for (int v : map) {
            if (v < 0 || v >= host.vertex_count())
                return false;
            if (!image.insert(v).second)
                return false;
        }
        for (const auto& e : pattern.edges()) {
            std::vector<int> img;
            for (int v : e)
                img.push_back(map[static_cast<std::size_t>(v)]);
            std::sort(img.begin(), img.end());
            if (!host.has_edge(img))
                return false;
        }
        if (part_respecting) {
            if (!pattern.layout() || !host.layout())
                return false;
            for (int v = 0; v < pattern.vertex_count(); ++v)
                if (host.layout()->part_of(map[static_cast<std::size_t>(v)]) != pattern.layout()->part_of(v))
                    return false;
        }
        return true;
    }
};

namespace detail {

// Backtracking over the pattern vertices in simultaneous_ordering order.
// A candidate is accepted only if, for every pattern edge, the image of the
// edge's trace on the embedded prefix is a partial edge of the host; at the
// final vertex the traces are the full edges, so reaching a leaf certifies
// an embedding. The `visit` callback receives each embedding found and
// returns false to stop the search.
class EmbeddingSearch {
public:
    EmbeddingSearch(const Hypergraph& pattern, const Hypergraph& host, bool respect_parts)
        : pattern_(pattern), host_(host), respect_(respect_parts), pe_(PartialEdgeSet::of(host))
    {
        if (pattern.uniformity() != host.uniformity())
            throw UniformityError("find_embedding: uniformity mismatch");
        if (respect_ && (!pattern.layout() || !host.layout()))
            throw LayoutError("find_embedding: respect_parts requires layouts on both sides");
        if (respect_ && pattern.layout()->part_count() != host.layout()->part_count())
            throw LayoutError("find_embedding: layouts must have the same number of parts");
        order_ = simultaneous_ordering(pattern);
        pos_.assign(static_cast<std::size_t>(pattern.vertex_count()), -1);
        for (std::size_t i = 0; i < order_.size(); ++i)
            pos_[static_cast<std::size_t>(order_[i])] = static_cast<int>(i);
    }

    void run(const std::function<bool(const std::vector<int>&)>& visit,
             std::uint64_t node_budget = UINT64_MAX)
    {
        visit_ = &visit;
        budget_ = node_budget;
        nodes_ = 0;
        stopped_ = false;
        map_.assign(static_cast<std::size_t>(pattern_.vertex_count()), -1);
        used_.assign(static_cast<std::size_t>(host_.vertex_count()), false);
        if (pattern_.vertex_count() == 0) {
            (*visit_)(map_);
            return;
        }
        if (pattern_.vertex_count() > host_.vertex_count())
            return;
        extend(0);
    }

    std::uint64_t nodes_visited() const { return nodes_; }
    bool exhausted_budget() const { return nodes_ >= budget_; }

private:
    void extend(int depth)
    {
        if (stopped_ || nodes_ >= budget_)
            return;
        const int v = order_[static_cast<std::size_t>(depth)];
        const std::vector<int>* candidates = nullptr;
        std::vector<int> all;
        if (respect_) {
            candidates = &host_.layout()->part(pattern_.layout()->part_of(v));
        } else {
            all.resize(static_cast<std::size_t>(host_.vertex_count()));
            for (int u = 0; u < host_.vertex_count(); ++u)
                all[static_cast<std::size_t>(u)] = u;
            candidates = &all;
        }
        for (int u : *candidates) {
            if (stopped_ || nodes_ >= budget_)
                return;
            if (used_[static_cast<std::size_t>(u)])
                continue;
            ++nodes_;
            map_[static_cast<std::size_t>(v)] = u;
            if (consistent(v, depth)) {
                if (depth + 1 == pattern_.vertex_count()) {
                    if (!(*visit_)(map_)) {
                        stopped_ = true;
                        map_[static_cast<std::size_t>(v)] = -1;
                        return;
                    }
                } else {
                    used_[static_cast<std::size_t>(u)] = true;
                    extend(depth + 1);
                    used_[static_cast<std::size_t>(u)] = false;
                }
            }
            map_[static_cast<std::size_t>(v)] = -1;
        }
    }

    bool consistent(int v, int depth) const
    {
        std::vector<int> img;
        for (int ei : pattern_.incidence()[static_cast<std::size_t>(v)]) {
            img.clear();
            for (int u : pattern_.edge(ei))
                if (pos_[static_cast<std::size_t>(u)] <= depth)
                    img.push_back(map_[static_cast<std::size_t>(u)]);
            std::sort(img.begin(), img.end());
            if (!pe_.contains(img))
                return false;
        }
        return true;
    }

    const Hypergraph& pattern_;
    const Hypergraph& host_;
    bool respect_;
    PartialEdgeSet pe_;
    std::vector<int> order_;
    std::vector<int> pos_;
    std::vector<int> map_;
    std::vector<bool> used_;
    const std::function<bool(const std::vector<int>&)>* visit_ = nullptr;
    std::uint64_t budget_ = UINT64_MAX;
    std::uint64_t nodes_ = 0;
    bool stopped_ = false;
};

} // namespace detail

// Exhaustive containment search; the returned embedding is re-verified.
inline std::optional<Embedding> find_embedding(const Hypergraph& pattern, const Hypergraph& host,
                                               bool respect_parts = false)
{
    detail::EmbeddingSearch search(pattern, host, respect_parts);
    std::optional<Embedding> out;
    std::function<bool(const std::vector<int>&)> visit = [&](const std::vector<int>& map) {
        out = Embedding{map, respect_parts};
        return false;
    };
    search.run(visit);
    if (out && !out->verify(pattern, host))
        throw Error("find_embedding: internal verification failed");
    return out;
}

// Enumerate embeddings (all labeled copies) under a node budget; returns
// false when the budget was exhausted before the search space.
inline bool enumerate_embeddings(const Hypergraph& pattern, const Hypergraph& host,
                                 const std::function<bool(const std::vector<int>&)>& visit,
                                 std::uint64_t node_budget = UINT64_MAX, bool respect_parts = false)
{
    detail::EmbeddingSearch search(pattern, host, respect_parts);
    search.run(visit, node_budget);
    return !search.exhausted_budget();
}

struct TuranResult {
    long long value = 0;
    Hypergraph witness;
    bool exhaustive = true;
};

// Exact ex(n, H) with an H-free witness, by branch-and-bound over the edge
// subsets in lexicographic order. Without an explicit budget the search
// space is capped at C(n, k) <= 28 candidate edges.
inline TuranResult brute_force_turan(int n, const Hypergraph& pattern,
                                     std::optional<std::uint64_t> node_budget = std::nullopt)
{
    const int k = pattern.uniformity();
    if (binomial(n, k) > 28 && !node_budget)
        throw ArgumentError("brute_force_turan: C(n,k) > 28; supply a branch-and-bound budget");
    if (pattern.edge_count() == 0)
        throw ArgumentError("brute_force_turan: pattern has no edges; ex(n, H) is undefined");

    std::vector<std::vector<int>> all_edges;
    detail::for_each_combination(n, k, [&](const std::vector<int>& idx) { all_edges.push_back(idx); });
    const int m = static_cast<int>(all_edges.size());

    std::vector<std::vector<int>> chosen;
    std::vector<std::vector<int>> best_edges;
    long long best = -1;
    std::uint64_t nodes = 0;
    const std::uint64_t budget = node_budget.value_or(UINT64_MAX);
    bool truncated = false;

    // does adding `e` to the (H-free) chosen set create a copy of H?
    auto creates_copy = [&](const std::vector<int>& e) {
        std::vector<std::vector<int>> with(chosen);
        with.push_back(e);
        Hypergraph current(k, n, std::move(with));
        return find_embedding(pattern, current).has_value();
    };

    std::function<void(int)> dfs = [&](int i) {
        if (truncated)
            return;
        if (++nodes > budget) {
            truncated = true;
            return;
        }
        if (static_cast<long long>(chosen.size()) > best) {
            best = static_cast<long long>(chosen.size());
            best_edges = chosen;
        }
        if (i == m)
            return;
        if (static_cast<long long>(chosen.size()) + (m - i) <= best)
            return; // cannot beat the incumbent
        if (!creates_copy(all_edges[static_cast<std::size_t>(i)])) {
            chosen.push_back(all_edges[static_cast<std::size_t>(i)]);
            dfs(i + 1);
            chosen.pop_back();
        }
        dfs(i + 1);
    };
    dfs(0);

    TuranResult out{best, Hypergraph(k, n, best_edges), !truncated};
    return out;
}

// First monochromatic copy of H, colors scanned in ascending order.
inline std::optional<std::pair<int, Embedding>> find_monochromatic_copy(const EdgeColoring& f,
                                                                        const Hypergraph& pattern)
{
    if (f.k != pattern.uniformity())
        throw UniformityError("find_monochromatic_copy: uniformity mismatch");
    for (int c = 0; c < f.q; ++c) {
        Hypergraph cls = f.color_class(c);
        if (auto emb = find_embedding(pattern, cls))
            return std::make_pair(c, *emb);
    }
    return std::nullopt;
}

struct RamseyResult {
    std::optional<int> value;            // smallest N <= N_max that forces H, if any
    std::optional<EdgeColoring> witness; // good coloring at value-1 (or at N_max when unknown)
    int n_max = 0;
};

namespace detail {

// Search for a coloring of K_N^(k) with no monochromatic copy of `pattern`.
// Colors are assigned edge by edge in lexicographic rank order; color
// symmetry is broken by allowing only colors 0..(first unused) at each
// step, and a branch dies as soon as the just-colored edge completes a
// monochromatic copy.
inline std::optional<EdgeColoring> good_coloring(int N, const Hypergraph& pattern, int q)
{
    const int k = pattern.uniformity();
    const long long m = binomial(N, k);
    std::vector<std::vector<int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long r = 0; r < m; ++r)
        edges.push_back(subset_unrank(r, N, k));

    std::vector<int> colors(static_cast<std::size_t>(m), -1);
    std::vector<std::vector<std::vector<int>>> classes(static_cast<std::size_t>(q));
    std::optional<EdgeColoring> found;

    std::function<bool(int, int)> dfs = [&](int i, int used) {
        if (i == m) {
            found = EdgeColoring(N, k, q, colors);
            return true;
        }
        const int limit = std::min(q, used + 1);
        for (int c = 0; c < limit; ++c) {
            classes[static_cast<std::size_t>(c)].push_back(edges[static_cast<std::size_t>(i)]);
            Hypergraph cls(k, N, classes[static_cast<std::size_t>(c)]);
            bool mono = find_embedding(pattern, cls).has_value();
            if (!mono) {
                colors[static_cast<std::size_t>(i)] = c;
                if (dfs(i + 1, std::max(used, c + 1)))
                    return true;
                colors[static_cast<std::size_t>(i)] = -1;
            }
            classes[static_cast<std::size_t>(c)].pop_back();
        }
        return false;
    };
    dfs(0, 0);
    return found;
}

} // namespace detail

// Smallest N <= N_max such that every q-coloring of K_N^(k) contains a
// monochromatic copy of H; Unknown(N_max) when no such N is in range.
inline RamseyResult brute_force_ramsey(const Hypergraph& pattern, int q, int n_max)
{
    if (q < 2)
        throw ArgumentError("brute_force_ramsey: q must be >= 2");
    if (pattern.edge_count() == 0)
        throw ArgumentError("brute_force_ramsey: pattern has no edges");
    RamseyResult out;
    out.n_max = n_max;
    std::optional<EdgeColoring> last_good;
    for (int N = pattern.uniformity(); N <= n_max; ++N) {
        auto good = detail::good_coloring(N, pattern, q);
        if (!good) {
            out.value = N;
            out.witness = last_good;
            return out;
        }
        last_good = good;
    }
    out.witness = last_good;
    return out;
}

} // namespace skeletal
