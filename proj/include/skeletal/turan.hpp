#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "skeletal/degeneracy.hpp"
#include "skeletal/generators.hpp"
#include "skeletal/hypergraph.hpp"
#include "skeletal/oracle.hpp"

namespace skeletal {

enum class VerifyState { Verified, Failed, Skipped };

struct DeletionReport {
    long long sampled_edges = 0;
    long long removed = 0;
    long long final_edges = 0;
    long long clique_count_before = 0;
    long long clique_count_after = 0;
    VerifyState hfree_verified = VerifyState::Skipped;
    bool budget_exhausted = false;
    std::string regime; // "subasymptotic" when the asymptotic floor is vacuous
    double paper_floor = 0.0;
};

namespace detail {

// Remove edges until no copy of `pattern` remains: each scan enumerates the
// unlabeled copies (deduplicated by image edge set) and deletes the
// lexicographically least still-present edge of each, iterating to a
// fixpoint. Returns the number of edges removed, or nullopt if the
// enumeration budget ran out.
inline std::optional<long long> delete_copies_to_fixpoint(std::vector<std::vector<int>>& edges,
                                                          int k, int n, const Hypergraph& pattern,
                                                          std::uint64_t budget)
{
    if (pattern.edge_count() == 0)
        throw ArgumentError("delete_copies_to_fixpoint: pattern has no edges");
    long long removed = 0;
    while (true) {
        Hypergraph current(k, n, edges);
        std::set<std::vector<std::vector<int>>> copies;
        bool complete = enumerate_embeddings(
            pattern, current,
            [&](const std::vector<int>& map) {
                std::vector<std::vector<int>> image;
                for (const auto& e : pattern.edges()) {
                    std::vector<int> img;
                    for (int v : e)
                        img.push_back(map[static_cast<std::size_t>(v)]);
                    std::sort(img.begin(), img.end());
                    image.push_back(std::move(img));
                }
                std::sort(image.begin(), image.end());
                copies.insert(std::move(image));
                return true;
            },
            budget);
        if (!complete)
            return std::nullopt;
        if (copies.empty())
            return removed;
        std::set<std::vector<int>> to_remove;
        std::set<std::vector<int>> gone;
        for (const auto& image : copies) {
            bool already_dead = false;
            for (const auto& e : image)
                if (gone.count(e)) {
                    already_dead = true;
                    break;
                }
            if (already_dead)
                continue;
            // image is sorted; its first edge is the lexicographically least
            gone.insert(image.front());
            to_remove.insert(image.front());
        }
        std::vector<std::vector<int>> kept;
        for (auto& e : edges)
            if (!to_remove.count(e))
                kept.push_back(std::move(e));
        removed += static_cast<long long>(edges.size() - kept.size());
        edges = std::move(kept);
    }
}

} // namespace detail

// Deletion-method lower-bound construction for K^(k)_{d,...,d}: sample
// G^k(n; p) with p = n^{-k/d^{k-1}} and delete one edge per copy until the
// result is K^(k)_{d,...,d}-free.
inline std::pair<Hypergraph, DeletionReport> deletion_construction_complete(
    int k, int d, int n, std::uint64_t seed, std::uint64_t budget = 50'000'000,
    bool verify = true)
{
    if (k < 2 || d < 2)
        throw ArgumentError("deletion_construction_complete: need k, d >= 2");
    const double p = std::pow(static_cast<double>(n), -static_cast<double>(k) /
                                                          std::pow(static_cast<double>(d), k - 1));
    Hypergraph sample = erdos_renyi(k, n, p, seed);
    Hypergraph pattern = complete_kpartite(std::vector<int>(static_cast<std::size_t>(k), d));

    DeletionReport report;
    report.sampled_edges = sample.edge_count();
    report.paper_floor =
        std::pow(static_cast<double>(n),
                 static_cast<double>(k) - static_cast<double>(k) / std::pow(static_cast<double>(d), k - 1)) /
            std::pow(static_cast<double>(k), k) -
        1.0;
    if (report.paper_floor < 1.0)
        report.regime = "subasymptotic";

    std::vector<std::vector<int>> edges = sample.edges();
    auto removed = detail::delete_copies_to_fixpoint(edges, k, n, pattern, budget);
    if (!removed) {
        report.budget_exhausted = true;
        report.final_edges = static_cast<long long>(edges.size());
        report.hfree_verified = VerifyState::Skipped;
        return {Hypergraph(k, n, std::move(edges)), report};
    }
    report.removed = *removed;
    report.final_edges = static_cast<long long>(edges.size());
    Hypergraph out(k, n, std::move(edges));
    if (verify)
        report.hfree_verified =
            find_embedding(pattern, out) ? VerifyState::Failed : VerifyState::Verified;
    return {out, report};
}

// The maximal subhypergraph of H^(i) with minimum degree >= d (the d-core
// of the skeleton), or absent when d exceeds d_i(H). The returned
// hypergraph lives on the original vertex universe.
inline std::optional<Hypergraph> min_degree_subhypergraph(const Hypergraph& h, int i, int d)
{
    if (i < 1 || i >= h.uniformity())
        throw IndexError("min_degree_subhypergraph: i must lie in [1, k)");
    Hypergraph skel = skeleton(h, i);
    std::vector<bool> alive(static_cast<std::size_t>(skel.vertex_count()), true);
    std::vector<bool> edge_alive(skel.edges().size(), true);
    std::vector<int> deg(static_cast<std::size_t>(skel.vertex_count()), 0);
    for (int v = 0; v < skel.vertex_count(); ++v)
        deg[static_cast<std::size_t>(v)] = skel.degree(v);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < skel.vertex_count(); ++v) {
            if (!alive[static_cast<std::size_t>(v)] || deg[static_cast<std::size_t>(v)] >= d)
                continue;
            alive[static_cast<std::size_t>(v)] = false;
            changed = true;
            for (int ei : skel.incidence()[static_cast<std::size_t>(v)]) {
                if (!edge_alive[static_cast<std::size_t>(ei)])
                    continue;
                edge_alive[static_cast<std::size_t>(ei)] = false;
                for (int u : skel.edge(ei))
                    if (u != v && alive[static_cast<std::size_t>(u)])
                        --deg[static_cast<std::size_t>(u)];
            }
        }
    }
    std::vector<std::vector<int>> core_edges;
    for (std::size_t ei = 0; ei < skel.edges().size(); ++ei)
        if (edge_alive[ei])
            core_edges.push_back(skel.edge(static_cast<int>(ei)));
    if (core_edges.empty())
        return std::nullopt;
    return Hypergraph(i + 1, h.vertex_count(), std::move(core_edges));
}

namespace detail {

// All k-cliques of an r-uniform hypergraph: k-sets whose r-subsets are all
// edges. Vertices are extended in degeneracy order; a candidate stays only
// while every r-subset it completes with the chosen prefix is present.
template <class F>
void enumerate_cliques(const Hypergraph& g, int k, F&& f)
{
    const int r = g.uniformity();
    DegeneracyCertificate cert = degeneracy(g);
    std::vector<int> rank(static_cast<std::size_t>(g.vertex_count()), 0);
    for (std::size_t i = 0; i < cert.order.size(); ++i)
        rank[static_cast<std::size_t>(cert.order[i])] = static_cast<int>(i);

    std::vector<int> chosen;
    std::vector<int> sub;

    // every r-subset of chosen+v that contains v must be an edge
    auto compatible = [&](int v) {
        if (static_cast<int>(chosen.size()) < r - 1)
            return true;
        bool ok = true;
        for_each_combination(static_cast<int>(chosen.size()), r - 1, [&](const std::vector<int>& idx) {
            if (!ok)
                return;
            sub.clear();
            for (int i : idx)
                sub.push_back(chosen[static_cast<std::size_t>(i)]);
            sub.push_back(v);
            std::sort(sub.begin(), sub.end());
            if (!g.has_edge(sub))
                ok = false;
        });
        return ok;
    };

    std::function<void(std::vector<int>&)> extend = [&](std::vector<int>& candidates) {
        if (static_cast<int>(chosen.size()) == k) {
            std::vector<int> clique(chosen);
            std::sort(clique.begin(), clique.end());
            f(clique);
            return;
        }
        for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
            int v = candidates[ci];
            chosen.push_back(v);
            std::vector<int> next;
            for (std::size_t cj = ci + 1; cj < candidates.size(); ++cj)
                if (compatible(candidates[cj]))
                    next.push_back(candidates[cj]);
            extend(next);
            chosen.pop_back();
        }
    };

    // candidates in degeneracy-order positions, ascending
    std::vector<int> initial(cert.order);
    extend(initial);
}

} // namespace detail

// Skeletal deletion construction: sample r-uniform G_0 with r = i+1
// and p = n^{-r/d}, delete one r-edge per copy of the min-degree core F of
// H^(i), then place a k-edge on every K_k^(r) clique of the pruned G_1. The
// output's i-skeleton embeds into G_1, which is F-free, so the output is
// H-free.
inline std::pair<Hypergraph, DeletionReport> deletion_construction_skeletal(
    const Hypergraph& h, int i, int d, int n, std::uint64_t seed,
    std::uint64_t budget = 50'000'000, bool verify = true)
{
    const int k = h.uniformity();
    const int r = i + 1;
    if (d <= binomial(k, r))
        throw PreconditionError("deletion_construction_skeletal: requires d > C(k, i+1)");
    auto core = min_degree_subhypergraph(h, i, d);
    if (!core)
        throw PreconditionError("deletion_construction_skeletal: d_i(H) < d");
    // compact F to its support for the containment search
    CompactedHypergraph fc = compact_to_support(*core, core->non_isolated_vertices());
    const Hypergraph& f_pattern = fc.graph;

    const double p = std::pow(static_cast<double>(n), -static_cast<double>(r) / d);
    Hypergraph g0 = erdos_renyi(r, n, p, seed);

    DeletionReport report;
    report.sampled_edges = g0.edge_count();
    report.paper_floor = std::pow(static_cast<double>(n),
                                  static_cast<double>(k) - std::pow(3.0, k) / static_cast<double>(d));
    if (report.paper_floor < 1.0)
        report.regime = "subasymptotic";

    long long cliques_before = 0;
    detail::enumerate_cliques(g0, k, [&](const std::vector<int>&) { ++cliques_before; });
    report.clique_count_before = cliques_before;

    std::vector<std::vector<int>> edges = g0.edges();
    auto removed = detail::delete_copies_to_fixpoint(edges, r, n, f_pattern, budget);
    if (!removed) {
        report.budget_exhausted = true;
        report.final_edges = static_cast<long long>(edges.size());
        return {Hypergraph(r, n, std::move(edges)), report};
    }
    report.removed = *removed;
    report.final_edges = static_cast<long long>(edges.size());
    Hypergraph g1(r, n, std::move(edges));

    std::vector<std::vector<int>> lifted;
    detail::enumerate_cliques(g1, k, [&](const std::vector<int>& clique) { lifted.push_back(clique); });
    report.clique_count_after = static_cast<long long>(lifted.size());
    Hypergraph out(k, n, std::move(lifted));

    if (verify) {
        bool f_free = !find_embedding(f_pattern, g1).has_value();
        bool h_free = !find_embedding(h, out).has_value();
        report.hfree_verified = (f_free && h_free) ? VerifyState::Verified : VerifyState::Failed;
    }
    return {out, report};
}

} // namespace skeletal
