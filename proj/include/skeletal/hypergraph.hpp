#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "skeletal/errors.hpp"

namespace skeletal {

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept
    {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ v.size();
        for (int x : v) {
            std::uint64_t k = static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL;
            k = (k ^ (k >> 30)) * 0xbf58476d1ce4e5b9ULL;
            k = (k ^ (k >> 27)) * 0x94d049bb133111ebULL;
            h ^= (k ^ (k >> 31)) + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

using VertexSet = std::vector<int>; // always sorted ascending

namespace detail {

// invoke f on every size-r index combination of [0, m)
template <class F>
void for_each_combination(int m, int r, F&& f)
{
    if (r < 0 || r > m)
        return;
    std::vector<int> idx(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i)
        idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        f(idx);
        int i = r - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - r + i)
            --i;
        if (i < 0)
            break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

inline bool is_subset_sorted(const std::vector<int>& a, const std::vector<int>& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace detail

inline long long binomial(long long n, long long r)
{
    if (r < 0 || r > n)
        return 0;
    r = std::min(r, n - r);
    long long result = 1;
    for (long long i = 1; i <= r; ++i) {
        result = result * (n - r + i) / i;
    }
    return result;
}

// The partition V_1 + ... + V_K of the vertex set. Parts are pairwise
// disjoint and cover [0, n); each part is stored sorted.
class PartiteLayout {
public:
    PartiteLayout(int n, std::vector<std::vector<int>> parts)
        : parts_(std::move(parts)), part_of_(static_cast<std::size_t>(n), -1)
    {
        for (std::size_t p = 0; p < parts_.size(); ++p) {
            std::sort(parts_[p].begin(), parts_[p].end());
            for (int v : parts_[p]) {
                if (v < 0 || v >= n)
                    throw LayoutError("layout: vertex out of range");
                if (part_of_[static_cast<std::size_t>(v)] != -1)
                    throw LayoutError("layout: parts are not disjoint");
                part_of_[static_cast<std::size_t>(v)] = static_cast<int>(p);
            }
        }
        for (int v = 0; v < n; ++v)
            if (part_of_[static_cast<std::size_t>(v)] == -1)
                throw LayoutError("layout: parts do not cover the vertex set");
    }

    int part_count() const { return static_cast<int>(parts_.size()); }
    const std::vector<int>& part(int i) const { return parts_.at(static_cast<std::size_t>(i)); }
    const std::vector<std::vector<int>>& parts() const { return parts_; }
    int part_of(int v) const { return part_of_.at(static_cast<std::size_t>(v)); }

    // the complement V_{-t}, sorted
    std::vector<int> co_part(int t) const
    {
        std::vector<int> out;
        for (int p = 0; p < part_count(); ++p)
            if (p != t)
                out.insert(out.end(), parts_[static_cast<std::size_t>(p)].begin(),
                           parts_[static_cast<std::size_t>(p)].end());
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::vector<std::vector<int>> parts_;
    std::vector<int> part_of_;
};

// k-uniform hypergraph over dense vertex ids 0..n-1. Edges are sorted
// k-tuples backed by a hash set for O(1) membership; the edge list is kept
// in lexicographic order so that iteration is canonical. Immutable after
// construction. If a layout is attached, every edge meets each part at
// most once.
class Hypergraph {
public:
    Hypergraph() : Hypergraph(1, 0, {}) {}

    Hypergraph(int k, int n, std::vector<std::vector<int>> edges,
               std::optional<PartiteLayout> layout = std::nullopt)
        : k_(k), n_(n), edges_(std::move(edges)), layout_(std::move(layout))
    {
        if (k_ < 1)
            throw ArgumentError("hypergraph: uniformity must be >= 1");
        if (n_ < 0)
            throw ArgumentError("hypergraph: negative vertex count");
        for (auto& e : edges_) {
            if (static_cast<int>(e.size()) != k_)
                throw ArgumentError("hypergraph: edge arity differs from k");
            std::sort(e.begin(), e.end());
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] < 0 || e[i] >= n_)
                    throw ArgumentError("hypergraph: edge vertex out of range");
                if (i > 0 && e[i] == e[i - 1])
                    throw ArgumentError("hypergraph: repeated vertex inside edge");
            }
        }
        std::sort(edges_.begin(), edges_.end());
        for (std::size_t i = 1; i < edges_.size(); ++i)
            if (edges_[i] == edges_[i - 1])
                throw ArgumentError("hypergraph: duplicate edge");
        edge_set_.reserve(edges_.size() * 2 + 1);
        for (const auto& e : edges_)
            edge_set_.insert(e);
        if (layout_) {
            if (static_cast<int>(layout_->parts().size()) < 1)
                throw LayoutError("layout: no parts");
            check_layout_fits();
        }
        incidence_.assign(static_cast<std::size_t>(n_), {});
        for (std::size_t idx = 0; idx < edges_.size(); ++idx)
            for (int v : edges_[idx])
                incidence_[static_cast<std::size_t>(v)].push_back(static_cast<int>(idx));
    }

    int uniformity() const { return k_; }
    int vertex_count() const { return n_; }
    long long edge_count() const { return static_cast<long long>(edges_.size()); }
    const std::vector<std::vector<int>>& edges() const { return edges_; }
    const std::vector<int>& edge(int i) const { return edges_.at(static_cast<std::size_t>(i)); }

    bool has_edge(const std::vector<int>& sorted_edge) const
    {
        return edge_set_.count(sorted_edge) > 0;
    }

    const std::optional<PartiteLayout>& layout() const { return layout_; }

    // edge indices incident to each vertex
    const std::vector<std::vector<int>>& incidence() const { return incidence_; }

    int degree(int v) const { return static_cast<int>(incidence_.at(static_cast<std::size_t>(v)).size()); }

    bool is_isolated(int v) const { return incidence_.at(static_cast<std::size_t>(v)).empty(); }

    std::vector<int> non_isolated_vertices() const
    {
        std::vector<int> out;
        for (int v = 0; v < n_; ++v)
            if (!is_isolated(v))
                out.push_back(v);
        return out;
    }

    Hypergraph with_layout(PartiteLayout layout) const
    {
        return Hypergraph(k_, n_, edges_, std::move(layout));
    }

    Hypergraph without_layout() const { return Hypergraph(k_, n_, edges_); }

    bool operator==(const Hypergraph& o) const
    {
        return k_ == o.k_ && n_ == o.n_ && edges_ == o.edges_;
    }

private:
    void check_layout_fits() const
    {
        if (static_cast<int>(layout_->parts().size()) > 0) {
            // layout covers [0, n) by its own invariant; verify sizes agree
            std::size_t total = 0;
            for (const auto& p : layout_->parts())
                total += p.size();
            if (total != static_cast<std::size_t>(n_))
                throw LayoutError("layout: vertex count mismatch");
        }
        for (const auto& e : edges_) {
            std::vector<int> seen;
            for (int v : e) {
                int p = layout_->part_of(v);
                if (std::find(seen.begin(), seen.end(), p) != seen.end())
                    throw LayoutError("layout: edge meets a part twice");
                seen.push_back(p);
            }
        }
    }

    int k_;
    int n_;
    std::vector<std::vector<int>> edges_;
    std::unordered_set<std::vector<int>, VecHash> edge_set_;
    std::optional<PartiteLayout> layout_;
    std::vector<std::vector<int>> incidence_;
};

// Downward-closed family of partial edges E*(G): all subsets of edges,
// the empty set included whenever the host has at least one edge.
class PartialEdgeSet {
public:
    PartialEdgeSet() = default;

    static PartialEdgeSet of(const Hypergraph& g)
    {
        PartialEdgeSet pe;
        std::vector<int> sub;
        for (const auto& e : g.edges()) {
            const int k = static_cast<int>(e.size());
            for (int r = 0; r <= k; ++r) {
                detail::for_each_combination(k, r, [&](const std::vector<int>& idx) {
                    sub.clear();
                    for (int i : idx)
                        sub.push_back(e[static_cast<std::size_t>(i)]);
                    pe.members_.insert(sub);
                });
            }
        }
        return pe;
    }

    bool contains(const std::vector<int>& sorted_subset) const
    {
        return members_.count(sorted_subset) > 0;
    }

    bool contains_empty() const
    {
        static const std::vector<int> empty{};
        return contains(empty);
    }

    std::size_t size() const { return members_.size(); }

    const std::unordered_set<std::vector<int>, VecHash>& members() const { return members_; }

    void insert(std::vector<int> sorted_member) { members_.insert(std::move(sorted_member)); }

    // canonical (lex-sorted) listing, for deterministic iteration
    std::vector<std::vector<int>> sorted_members() const
    {
        std::vector<std::vector<int>> out(members_.begin(), members_.end());
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::unordered_set<std::vector<int>, VecHash> members_;
};

inline PartialEdgeSet partial_edges(const Hypergraph& g) { return PartialEdgeSet::of(g); }

// PE_Q(G): partial edges contained in Q.
inline PartialEdgeSet pe_restricted(const Hypergraph& g, const VertexSet& q)
{
    std::vector<int> qs(q);
    std::sort(qs.begin(), qs.end());
    for (int v : qs)
        if (v < 0 || v >= g.vertex_count())
            throw ArgumentError("pe_restricted: Q not a subset of V(G)");
    PartialEdgeSet full = PartialEdgeSet::of(g);
    PartialEdgeSet out;
    for (const auto& m : full.members())
        if (detail::is_subset_sorted(m, qs))
            out.insert(m);
    return out;
}

namespace detail {

// Members of PE_Q(G) listed directly from a precomputed E*(G) index by
// enumerating the subsets of Q of size <= k. Fast path for small Q.
inline std::vector<std::vector<int>> pe_restricted_members(const PartialEdgeSet& pe_of_g,
                                                           const VertexSet& q_sorted_unique, int k)
{
    std::vector<std::vector<int>> out;
    const int m = static_cast<int>(q_sorted_unique.size());
    std::vector<int> sub;
    for (int r = 0; r <= std::min(m, k); ++r) {
        for_each_combination(m, r, [&](const std::vector<int>& idx) {
            sub.clear();
            for (int i : idx)
                sub.push_back(q_sorted_unique[static_cast<std::size_t>(i)]);
            if (pe_of_g.contains(sub))
                out.push_back(sub);
        });
    }
    return out;
}

// Common neighborhood of a family of partial edges among given candidates.
// A member of size k admits no extension, so its presence empties the result.
// An empty family constrains nothing: every candidate qualifies.
inline std::vector<int> common_extensions(const Hypergraph& g, const PartialEdgeSet& pe_of_g,
                                          const std::vector<std::vector<int>>& family,
                                          const std::vector<int>& candidates)
{
    std::vector<int> out;
    for (int v : candidates) {
        bool ok = true;
        std::vector<int> ext;
        for (const auto& e : family) {
            if (static_cast<int>(e.size()) >= g.uniformity()) {
                ok = false;
                break;
            }
            if (std::binary_search(e.begin(), e.end(), v)) {
                ok = false; // disjoint union requires v outside e
                break;
            }
            ext = e;
            ext.insert(std::lower_bound(ext.begin(), ext.end(), v), v);
            if (!pe_of_g.contains(ext)) {
                ok = false;
                break;
            }
        }
        if (ok)
            out.push_back(v);
    }
    return out;
}

} // namespace detail

// N(E; G): vertices v outside e with e U {v} in E*(G) for every e in E.
inline std::vector<int> common_neighborhood(const Hypergraph& g, const PartialEdgeSet& family)
{
    for (const auto& m : family.members())
        if (static_cast<int>(m.size()) >= g.uniformity())
            throw SizeError("common_neighborhood: family member has size >= k");
    PartialEdgeSet pe = PartialEdgeSet::of(g);
    std::vector<int> all(static_cast<std::size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v)
        all[static_cast<std::size_t>(v)] = v;
    return detail::common_extensions(g, pe, family.sorted_members(), all);
}

// Restriction of G to the given disjoint vertex sets, relabelled to dense
// ids in listing order; the sets become the layout parts. Edges spanning a
// part twice are dropped (only transversal-compatible edges survive).
struct CompactedHypergraph {
    Hypergraph graph;
    std::vector<int> to_old; // new id -> old id
};

// Relabel the induced subhypergraph on a vertex subset to dense ids; all
// edges inside the subset survive and no layout is attached.
inline CompactedHypergraph compact_to_support(const Hypergraph& g, const std::vector<int>& support)
{
    std::vector<int> to_old(support);
    std::sort(to_old.begin(), to_old.end());
    std::vector<int> to_new(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < to_old.size(); ++i) {
        int v = to_old[i];
        if (v < 0 || v >= g.vertex_count() || to_new[static_cast<std::size_t>(v)] != -1)
            throw ArgumentError("compact_to_support: bad support set");
        to_new[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    std::vector<std::vector<int>> edges;
    for (const auto& e : g.edges()) {
        std::vector<int> ne;
        bool keep = true;
        for (int v : e) {
            int nv = to_new[static_cast<std::size_t>(v)];
            if (nv == -1) {
                keep = false;
                break;
            }
            ne.push_back(nv);
        }
        if (keep)
            edges.push_back(std::move(ne));
    }
    return CompactedHypergraph{
        Hypergraph(g.uniformity(), static_cast<int>(to_old.size()), std::move(edges)),
        std::move(to_old)};
}

inline CompactedHypergraph induced_compact(const Hypergraph& g,
                                           const std::vector<std::vector<int>>& parts)
{
    std::vector<int> to_old;
    std::vector<int> to_new(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<std::vector<int>> new_parts;
    for (const auto& part : parts) {
        std::vector<int> np;
        std::vector<int> sorted_part(part);
        std::sort(sorted_part.begin(), sorted_part.end());
        for (int v : sorted_part) {
            if (v < 0 || v >= g.vertex_count())
                throw ArgumentError("induced_compact: vertex out of range");
            if (to_new[static_cast<std::size_t>(v)] != -1)
                throw ArgumentError("induced_compact: parts overlap");
            to_new[static_cast<std::size_t>(v)] = static_cast<int>(to_old.size());
            np.push_back(static_cast<int>(to_old.size()));
            to_old.push_back(v);
        }
        new_parts.push_back(std::move(np));
    }
    std::vector<std::vector<int>> new_edges;
    for (const auto& e : g.edges()) {
        std::vector<int> ne;
        bool keep = true;
        for (int v : e) {
            int nv = to_new[static_cast<std::size_t>(v)];
            if (nv == -1) {
                keep = false;
                break;
            }
            ne.push_back(nv);
        }
        if (!keep)
            continue;
        // at most one vertex per part
        std::vector<int> part_idx;
        bool proper = true;
        for (int v : e) {
            int p = 0;
            // locate the containing part in the *new* layout
            // (parts were relabelled contiguously per listing order)
            int nv = to_new[static_cast<std::size_t>(v)];
            int acc = 0;
            for (std::size_t q = 0; q < new_parts.size(); ++q) {
                acc += static_cast<int>(new_parts[q].size());
                if (nv < acc) {
                    p = static_cast<int>(q);
                    break;
                }
            }
            if (std::find(part_idx.begin(), part_idx.end(), p) != part_idx.end()) {
                proper = false;
                break;
            }
            part_idx.push_back(p);
        }
        if (proper)
            new_edges.push_back(std::move(ne));
    }
    int n_new = static_cast<int>(to_old.size());
    PartiteLayout layout(n_new, new_parts);
    return CompactedHypergraph{Hypergraph(g.uniformity(), n_new, std::move(new_edges), std::move(layout)),
                               std::move(to_old)};
}

} // namespace skeletal
