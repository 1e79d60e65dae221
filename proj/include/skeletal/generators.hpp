#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "skeletal/degeneracy.hpp"
#include "skeletal/hypergraph.hpp"
#include "skeletal/rng.hpp"

namespace skeletal {

// K^(k)_{s_1,...,s_k}: all transversal edges over parts of the given sizes.
// Vertices are numbered part-major.
inline Hypergraph complete_kpartite(const std::vector<int>& sizes)
{
    if (sizes.size() < 2)
        throw ArgumentError("complete_kpartite: need at least 2 parts");
    for (int s : sizes)
        if (s < 1)
            throw ArgumentError("complete_kpartite: part sizes must be >= 1");
    const int k = static_cast<int>(sizes.size());
    std::vector<std::vector<int>> parts;
    int next = 0;
    for (int s : sizes) {
        std::vector<int> part(static_cast<std::size_t>(s));
        std::iota(part.begin(), part.end(), next);
        next += s;
        parts.push_back(std::move(part));
    }
    const int n = next;
    std::vector<std::vector<int>> edges;
    std::vector<int> pickidx(static_cast<std::size_t>(k), 0);
    while (true) {
        std::vector<int> e;
        for (int i = 0; i < k; ++i)
            e.push_back(parts[static_cast<std::size_t>(i)][static_cast<std::size_t>(pickidx[static_cast<std::size_t>(i)])]);
        edges.push_back(std::move(e));
        int i = k - 1;
        while (i >= 0 && ++pickidx[static_cast<std::size_t>(i)] == sizes[static_cast<std::size_t>(i)]) {
            pickidx[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0)
            break;
    }
    return Hypergraph(k, n, std::move(edges), PartiteLayout(n, std::move(parts)));
}

// Bipartite hedgehog H_d^(k): K_{d,d} with each edge extended by k-2
// private middle vertices. Vertices: [d] + [d] + (k-2) copies of [d]^2,
// numbered part-major; edge (i,j) uses middle vertex i*d+j of every middle
// part.
inline Hypergraph bipartite_hedgehog(int k, int d)
{
    if (k < 2)
        throw ArgumentError("bipartite_hedgehog: k must be >= 2");
    if (d < 1)
        throw ArgumentError("bipartite_hedgehog: d must be >= 1");
    const int n = 2 * d + (k - 2) * d * d;
    std::vector<std::vector<int>> parts;
    {
        std::vector<int> a(static_cast<std::size_t>(d)), b(static_cast<std::size_t>(d));
        std::iota(a.begin(), a.end(), 0);
        std::iota(b.begin(), b.end(), d);
        parts.push_back(std::move(a));
        parts.push_back(std::move(b));
        for (int m = 0; m < k - 2; ++m) {
            std::vector<int> mid(static_cast<std::size_t>(d * d));
            std::iota(mid.begin(), mid.end(), 2 * d + m * d * d);
            parts.push_back(std::move(mid));
        }
    }
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            std::vector<int> e{i, d + j};
            for (int m = 0; m < k - 2; ++m)
                e.push_back(2 * d + m * d * d + i * d + j);
            edges.push_back(std::move(e));
        }
    }
    return Hypergraph(k, n, std::move(edges), PartiteLayout(n, std::move(parts)));
}

// G^k(n; p): every k-subset present independently with probability p.
inline Hypergraph erdos_renyi(int k, int n, double p, std::uint64_t seed)
{
    if (p < 0.0 || p > 1.0)
        throw ArgumentError("erdos_renyi: p must lie in [0, 1]");
    Rng rng(seed);
    std::vector<std::vector<int>> edges;
    detail::for_each_combination(n, k, [&](const std::vector<int>& idx) {
        if (rng.unit() < p)
            edges.push_back(idx);
    });
    return Hypergraph(k, n, std::move(edges));
}

struct LatinSquare {
    int d = 0;
    std::vector<std::vector<int>> cells; // cells[i][j] in [0, d)

    bool valid() const
    {
        if (d < 1 || static_cast<int>(cells.size()) != d)
            return false;
        for (int i = 0; i < d; ++i) {
            if (static_cast<int>(cells[static_cast<std::size_t>(i)].size()) != d)
                return false;
            std::vector<bool> row(static_cast<std::size_t>(d), false);
            for (int j = 0; j < d; ++j) {
                int s = cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (s < 0 || s >= d || row[static_cast<std::size_t>(s)])
                    return false;
                row[static_cast<std::size_t>(s)] = true;
            }
        }
        for (int j = 0; j < d; ++j) {
            std::vector<bool> col(static_cast<std::size_t>(d), false);
            for (int i = 0; i < d; ++i) {
                int s = cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (col[static_cast<std::size_t>(s)])
                    return false;
                col[static_cast<std::size_t>(s)] = true;
            }
        }
        return true;
    }

    static LatinSquare cyclic(int d)
    {
        if (d < 1)
            throw ArgumentError("LatinSquare::cyclic: d must be >= 1");
        LatinSquare L;
        L.d = d;
        L.cells.assign(static_cast<std::size_t>(d), std::vector<int>(static_cast<std::size_t>(d)));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                L.cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % d;
        return L;
    }

    // Row-by-row rejection: shuffle each row until it avoids column
    // conflicts, restarting from scratch when a row gets stuck. Fine at
    // desk scale.
    static LatinSquare random(int d, std::uint64_t seed)
    {
        if (d < 1)
            throw ArgumentError("LatinSquare::random: d must be >= 1");
        Rng rng(seed);
        LatinSquare L;
        L.d = d;
        while (true) {
            L.cells.assign(static_cast<std::size_t>(d), {});
            std::vector<std::vector<bool>> col_used(
                static_cast<std::size_t>(d), std::vector<bool>(static_cast<std::size_t>(d), false));
            bool restart = false;
            for (int i = 0; i < d && !restart; ++i) {
                std::vector<int> row(static_cast<std::size_t>(d));
                std::iota(row.begin(), row.end(), 0);
                bool placed = false;
                for (int attempt = 0; attempt < 200; ++attempt) {
                    rng.shuffle(row);
                    bool ok = true;
                    for (int j = 0; j < d; ++j)
                        if (col_used[static_cast<std::size_t>(j)][static_cast<std::size_t>(row[static_cast<std::size_t>(j)])]) {
                            ok = false;
                            break;
                        }
                    if (ok) {
                        for (int j = 0; j < d; ++j)
                            col_used[static_cast<std::size_t>(j)][static_cast<std::size_t>(row[static_cast<std::size_t>(j)])] = true;
                        L.cells[static_cast<std::size_t>(i)] = row;
                        placed = true;
                        break;
                    }
                }
                if (!placed)
                    restart = true;
            }
            if (!restart)
                return L;
        }
    }
};

// H_L on [d] + [d] + [d]: (i, j, s) is an edge iff L(i, j) = s.
inline Hypergraph latin_square_hypergraph(const LatinSquare& L)
{
    if (!L.valid())
        throw ArgumentError("latin_square_hypergraph: invalid Latin square");
    const int d = L.d;
    const int n = 3 * d;
    std::vector<std::vector<int>> parts(3);
    for (int p = 0; p < 3; ++p) {
        parts[static_cast<std::size_t>(p)].resize(static_cast<std::size_t>(d));
        std::iota(parts[static_cast<std::size_t>(p)].begin(), parts[static_cast<std::size_t>(p)].end(), p * d);
    }
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            edges.push_back({i, d + j, 2 * d + L.cells[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]});
    return Hypergraph(3, n, std::move(edges), PartiteLayout(n, std::move(parts)));
}

// One anchor vertex per part, appended part-major after the existing
// ids; for every edge e and every subset I of [k], the edge with e's part-i
// vertex replaced by the anchor of part i for i in I. The augmented graph
inline Hypergraph augment_with_anchors(const Hypergraph& h)
{
    if (!h.layout())
        throw LayoutError("augment_with_anchors: requires a k-part layout");
    const int k = h.uniformity();
    if (h.layout()->part_count() != k)
        throw LayoutError("augment_with_anchors: layout must have exactly k parts");
    const int n = h.vertex_count();
    std::vector<int> anchor(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        anchor[static_cast<std::size_t>(i)] = n + i;

    std::set<std::vector<int>> edges;
    for (const auto& e : h.edges()) {
        // position of e's vertex per part
        std::vector<int> by_part(static_cast<std::size_t>(k), -1);
        for (int v : e)
            by_part[static_cast<std::size_t>(h.layout()->part_of(v))] = v;
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            std::vector<int> sub;
            for (int i = 0; i < k; ++i) {
                if (by_part[static_cast<std::size_t>(i)] == -1)
                    continue; // edge misses this part entirely (k-partite-proper forbids this)
                sub.push_back((mask >> i) & 1u ? anchor[static_cast<std::size_t>(i)]
                                               : by_part[static_cast<std::size_t>(i)]);
            }
            if (static_cast<int>(sub.size()) != k)
                throw LayoutError("augment_with_anchors: hypergraph is not k-partite-proper");
            std::sort(sub.begin(), sub.end());
            edges.insert(std::move(sub));
        }
    }
    std::vector<std::vector<int>> parts = h.layout()->parts();
    for (int i = 0; i < k; ++i)
        parts[static_cast<std::size_t>(i)].push_back(anchor[static_cast<std::size_t>(i)]);
    std::vector<std::vector<int>> edge_list(edges.begin(), edges.end());
    return Hypergraph(k, n + k, std::move(edge_list), PartiteLayout(n + k, std::move(parts)));
}

// ell-uniform ell-partite lift: each edge gains one fresh auxiliary vertex per
// missing color class, assigned in ascending class order. Auxiliary ids are
// appended edge-major. The coloring must be proper on the 1-skeleton.
inline Hypergraph lift_to_uniformity(const Hypergraph& h, int ell, const std::vector<int>& coloring)
{
    const int k = h.uniformity();
    if (ell < k)
        throw ArgumentError("lift_to_uniformity: ell must be >= k");
    if (static_cast<int>(coloring.size()) != h.vertex_count())
        throw ColoringError("lift_to_uniformity: coloring size mismatch");
    for (int c : coloring)
        if (c < 0 || c >= ell)
            throw ColoringError("lift_to_uniformity: color out of range");
    for (const auto& e : h.edges()) {
        std::vector<bool> used(static_cast<std::size_t>(ell), false);
        for (int v : e) {
            int c = coloring[static_cast<std::size_t>(v)];
            if (used[static_cast<std::size_t>(c)])
                throw ColoringError("lift_to_uniformity: an edge repeats a color");
            used[static_cast<std::size_t>(c)] = true;
        }
    }

    std::vector<std::vector<int>> parts(static_cast<std::size_t>(ell));
    for (int v = 0; v < h.vertex_count(); ++v)
        parts[static_cast<std::size_t>(coloring[static_cast<std::size_t>(v)])].push_back(v);

    int next = h.vertex_count();
    std::vector<std::vector<int>> edges;
    for (const auto& e : h.edges()) {
        std::vector<bool> used(static_cast<std::size_t>(ell), false);
        for (int v : e)
            used[static_cast<std::size_t>(coloring[static_cast<std::size_t>(v)])] = true;
        std::vector<int> lifted(e);
        for (int c = 0; c < ell; ++c) {
            if (used[static_cast<std::size_t>(c)])
                continue;
            parts[static_cast<std::size_t>(c)].push_back(next);
            lifted.push_back(next);
            ++next;
        }
        edges.push_back(std::move(lifted));
    }
    return Hypergraph(ell, next, std::move(edges), PartiteLayout(next, std::move(parts)));
}

// Uniformly random equitable k-partition; only the transversal edges are
// kept.
inline std::pair<Hypergraph, PartiteLayout> random_equipartition(const Hypergraph& g, int k,
                                                                 std::uint64_t seed)
{
    const int n = g.vertex_count();
    if (k < 1 || n % k != 0)
        throw ArgumentError("random_equipartition: k must divide the vertex count");
    Rng rng(seed);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    const int m = n / k;
    std::vector<std::vector<int>> parts(static_cast<std::size_t>(k));
    std::vector<int> part_of(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        parts[static_cast<std::size_t>(i / m)].push_back(perm[static_cast<std::size_t>(i)]);
        part_of[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i / m;
    }
    std::vector<std::vector<int>> edges;
    for (const auto& e : g.edges()) {
        std::vector<bool> seen(static_cast<std::size_t>(k), false);
        bool transversal = true;
        for (int v : e) {
            int p = part_of[static_cast<std::size_t>(v)];
            if (seen[static_cast<std::size_t>(p)]) {
                transversal = false;
                break;
            }
            seen[static_cast<std::size_t>(p)] = true;
        }
        if (transversal)
            edges.push_back(e);
    }
    PartiteLayout layout(n, parts);
    return {Hypergraph(g.uniformity(), n, std::move(edges), layout), layout};
}

} // namespace skeletal
