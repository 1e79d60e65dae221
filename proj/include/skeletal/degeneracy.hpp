#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "skeletal/hypergraph.hpp"

namespace skeletal {

// i-skeleton H^(i): the (i+1)-uniform hypergraph of all (i+1)-subsets of
// edges of H, deduplicated. The layout, if any, carries over (a subset of
// a proper edge is still proper).
inline Hypergraph skeleton(const Hypergraph& h, int i)
{
    if (i < 0 || i >= h.uniformity())
        throw IndexError("skeleton: i must lie in [0, k)");
    const int r = i + 1;
    std::set<std::vector<int>> subsets;
    std::vector<int> sub;
    for (const auto& e : h.edges()) {
        detail::for_each_combination(h.uniformity(), r, [&](const std::vector<int>& idx) {
            sub.clear();
            for (int j : idx)
                sub.push_back(e[static_cast<std::size_t>(j)]);
            subsets.insert(sub);
        });
    }
    std::vector<std::vector<int>> edges(subsets.begin(), subsets.end());
    return Hypergraph(r, h.vertex_count(), std::move(edges), h.layout());
}

// Certificate for a degeneracy value d: an ordering in which every vertex
// closes at most d edges, and a vertex subset inducing minimum degree d.
struct DegeneracyCertificate {
    std::vector<int> order; // v_1 .. v_n
    int value = 0;
    std::vector<int> witness;
};

// Min-degree peeling with incremental degree counters. Ties break toward
// the lowest vertex id. order = reverse of the removal sequence; witness =
// the alive set at the moment the running minimum degree peaked.
inline DegeneracyCertificate degeneracy(const Hypergraph& h)
{
    const int n = h.vertex_count();
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        deg[static_cast<std::size_t>(v)] = h.degree(v);
    std::vector<bool> alive(static_cast<std::size_t>(n), true);
    std::vector<bool> edge_alive(h.edges().size(), true);

    DegeneracyCertificate cert;
    std::vector<int> removal;
    removal.reserve(static_cast<std::size_t>(n));
    int best = -1;

    for (int step = 0; step < n; ++step) {
        int v = -1;
        for (int u = 0; u < n; ++u) {
            if (!alive[static_cast<std::size_t>(u)])
                continue;
            if (v == -1 || deg[static_cast<std::size_t>(u)] < deg[static_cast<std::size_t>(v)])
                v = u;
        }
        if (deg[static_cast<std::size_t>(v)] > best) {
            best = deg[static_cast<std::size_t>(v)];
            cert.witness.clear();
            for (int u = 0; u < n; ++u)
                if (alive[static_cast<std::size_t>(u)])
                    cert.witness.push_back(u);
        }
        alive[static_cast<std::size_t>(v)] = false;
        removal.push_back(v);
        for (int ei : h.incidence()[static_cast<std::size_t>(v)]) {
            if (!edge_alive[static_cast<std::size_t>(ei)])
                continue;
            edge_alive[static_cast<std::size_t>(ei)] = false;
            for (int u : h.edge(ei))
                if (u != v && alive[static_cast<std::size_t>(u)])
                    --deg[static_cast<std::size_t>(u)];
        }
    }
    cert.value = std::max(best, 0);
    cert.order.assign(removal.rbegin(), removal.rend());
    if (n == 0)
        cert.witness.clear();
    return cert;
}

// Both halves of the min-max: each vertex closes <= value edges along the
// order, and the witness induces minimum degree >= value.
inline bool verify_degeneracy_order(const Hypergraph& h, const std::vector<int>& order, int value)
{
    const int n = h.vertex_count();
    if (static_cast<int>(order.size()) != n)
        return false;
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        int v = order[static_cast<std::size_t>(i)];
        if (v < 0 || v >= n || pos[static_cast<std::size_t>(v)] != -1)
            return false;
        pos[static_cast<std::size_t>(v)] = i;
    }
    std::vector<int> closes(static_cast<std::size_t>(n), 0);
    for (const auto& e : h.edges()) {
        int last = e[0];
        for (int v : e)
            if (pos[static_cast<std::size_t>(v)] > pos[static_cast<std::size_t>(last)])
                last = v;
        ++closes[static_cast<std::size_t>(last)];
    }
    for (int v = 0; v < n; ++v)
        if (closes[static_cast<std::size_t>(v)] > value)
            return false;
    return true;
}

inline bool verify_degeneracy_witness(const Hypergraph& h, const std::vector<int>& witness, int value)
{
    if (value == 0)
        return true;
    if (witness.empty())
        return false;
    std::vector<bool> in(static_cast<std::size_t>(h.vertex_count()), false);
    for (int v : witness)
        in[static_cast<std::size_t>(v)] = true;
    for (int v : witness) {
        int d = 0;
        for (int ei : h.incidence()[static_cast<std::size_t>(v)]) {
            bool inside = true;
            for (int u : h.edge(ei))
                if (!in[static_cast<std::size_t>(u)]) {
                    inside = false;
                    break;
                }
            if (inside)
                ++d;
        }
        if (d < value)
            return false;
    }
    return true;
}

// d_i(H) = degeneracy of the i-skeleton, 1 <= i < k.
inline DegeneracyCertificate skeletal_degeneracy(const Hypergraph& h, int i)
{
    if (i < 1 || i >= h.uniformity())
        throw IndexError("skeletal_degeneracy: i must lie in [1, k)");
    return degeneracy(skeleton(h, i));
}

// d_max(H) = max over 1 <= i < k of d_i(H).
inline int max_skeletal_degeneracy(const Hypergraph& h)
{
    if (h.uniformity() < 2)
        throw ArgumentError("max_skeletal_degeneracy: requires k >= 2");
    int best = 0;
    for (int i = 1; i < h.uniformity(); ++i)
        best = std::max(best, skeletal_degeneracy(h, i).value);
    return best;
}

namespace detail {

// distinct nonempty traces {e cap U : e  in  E(H)} of the still-alive vertex set
inline std::set<std::vector<int>> alive_traces(const Hypergraph& h, const std::vector<bool>& alive)
{
    std::set<std::vector<int>> traces;
    std::vector<int> t;
    for (const auto& e : h.edges()) {
        t.clear();
        for (int v : e)
            if (alive[static_cast<std::size_t>(v)])
                t.push_back(v);
        if (!t.empty())
            traces.insert(t);
    }
    return traces;
}

} // namespace detail

// Ordering built by repeatedly peeling a vertex minimizing the total trace
// degree sum_r deg_r(v, H*[U]); along the result, every vertex closes at
// most k^2 * d_max(H) distinct traces.
inline std::vector<int> simultaneous_ordering(const Hypergraph& h)
{
    const int n = h.vertex_count();
    std::vector<bool> alive(static_cast<std::size_t>(n), true);
    std::vector<int> removal;
    removal.reserve(static_cast<std::size_t>(n));
    for (int step = 0; step < n; ++step) {
        auto traces = detail::alive_traces(h, alive);
        std::vector<long long> score(static_cast<std::size_t>(n), 0);
        for (const auto& t : traces)
            for (int v : t)
                ++score[static_cast<std::size_t>(v)];
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (!alive[static_cast<std::size_t>(v)])
                continue;
            if (best == -1 || score[static_cast<std::size_t>(v)] < score[static_cast<std::size_t>(best)])
                best = v;
        }
        alive[static_cast<std::size_t>(best)] = false;
        removal.push_back(best);
    }
    return std::vector<int>(removal.rbegin(), removal.rend());
}

// Per position j, the number of distinct sets S  within  {v_1..v_{j-1}} such that
// some edge e satisfies e cap {v_1..v_j} = S  U  {v_j}. Every edge containing
// v_j contributes its prefix trace, not only edges that end at v_j. Used to
// verify the simultaneous-ordering guarantee.
inline std::vector<long long> trace_counts_along_order(const Hypergraph& h,
                                                       const std::vector<int>& order)
{
    const int n = h.vertex_count();
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i)
        pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    std::vector<std::set<std::vector<int>>> per_vertex(static_cast<std::size_t>(n));
    std::vector<int> t;
    for (const auto& e : h.edges()) {
        for (int v : e) {
            t.clear();
            for (int u : e)
                if (u != v && pos[static_cast<std::size_t>(u)] < pos[static_cast<std::size_t>(v)])
                    t.push_back(u);
            per_vertex[static_cast<std::size_t>(v)].insert(t);
        }
    }
    std::vector<long long> out(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        out[static_cast<std::size_t>(v)] = static_cast<long long>(per_vertex[static_cast<std::size_t>(v)].size());
    return out;
}

// e(H) <= d_1(H)^{k-1} * n, checked as a cross-validation of the two sides.
inline bool edge_count_bound_check(const Hypergraph& h)
{
    if (h.uniformity() < 2)
        throw ArgumentError("edge_count_bound_check: requires k >= 2");
    const long long d1 = skeletal_degeneracy(h, 1).value;
    long long bound = 1;
    for (int i = 0; i < h.uniformity() - 1; ++i)
        bound *= d1;
    bound *= h.vertex_count();
    return h.edge_count() <= bound;
}

// Greedy coloring of a 2-uniform hypergraph along its degeneracy order;
// uses at most degeneracy+1 colors.
inline std::vector<int> greedy_coloring(const Hypergraph& graph)
{
    if (graph.uniformity() != 2)
        throw UniformityError("greedy_coloring: expects a graph (k = 2)");
    const int n = graph.vertex_count();
    DegeneracyCertificate cert = degeneracy(graph);
    std::vector<int> color(static_cast<std::size_t>(n), -1);
    for (int v : cert.order) {
        std::set<int> used;
        for (int ei : graph.incidence()[static_cast<std::size_t>(v)]) {
            for (int u : graph.edge(ei))
                if (u != v && color[static_cast<std::size_t>(u)] != -1)
                    used.insert(color[static_cast<std::size_t>(u)]);
        }
        int c = 0;
        while (used.count(c))
            ++c;
        color[static_cast<std::size_t>(v)] = c;
    }
    return color;
}

} // namespace skeletal
