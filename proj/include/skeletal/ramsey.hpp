#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "skeletal/coloring.hpp"
#include "skeletal/degeneracy.hpp"
#include "skeletal/drc.hpp"
#include "skeletal/embedding.hpp"
#include "skeletal/generators.hpp"
#include "skeletal/hypergraph.hpp"
#include "skeletal/oracle.hpp"
#include "skeletal/rng.hpp"

namespace skeletal {

// Per color i, the ell-uniform hypergraph on [N] whose edges are the ell-sets
// all of whose k-subsets carry color i.
inline std::vector<Hypergraph> harvest_monochromatic_cliques(const EdgeColoring& f, int ell,
                                                             std::uint64_t cap = 2'000'000)
{
    if (ell < f.k)
        throw ArgumentError("harvest_monochromatic_cliques: ell must be >= k");
    if (binomial(f.N, ell) > static_cast<long long>(cap))
        throw BudgetExceeded("harvest_monochromatic_cliques: C(N, ell) exceeds the cap");
    std::vector<std::vector<std::vector<int>>> edges(static_cast<std::size_t>(f.q));
    std::vector<int> sub;
    detail::for_each_combination(f.N, ell, [&](const std::vector<int>& s) {
        int color = -1;
        bool mono = true;
        detail::for_each_combination(ell, f.k, [&](const std::vector<int>& idx) {
            if (!mono)
                return;
            sub.clear();
            for (int i : idx)
                sub.push_back(s[static_cast<std::size_t>(i)]);
            int c = f.color_of(sub);
            if (color == -1)
                color = c;
            else if (c != color)
                mono = false;
        });
        if (mono && color != -1)
            edges[static_cast<std::size_t>(color)].push_back(s);
    });
    std::vector<Hypergraph> out;
    for (int c = 0; c < f.q; ++c)
        out.emplace_back(ell, f.N, std::move(edges[static_cast<std::size_t>(c)]));
    return out;
}

struct KrReduction {
    bool ok = false;
    Hypergraph hhat;          // ell-uniform ell-partite lift of the pattern
    Hypergraph ghat;          // ell-partite restriction of the chosen clique hypergraph
    int color = -1;
    std::vector<int> to_host; // ghat vertex -> vertex of [N]
    int pattern_vertices = 0; // ids [0, v(H)) of hhat are the original pattern vertices
    std::string failure;
};

// Kostochka-Rodl reduction: lift the pattern to an ell-uniform ell-partite
// hypergraph via a greedy skeleton coloring, harvest monochromatic
// ell-cliques, pick the color with the largest clique hypergraph, and
// restrict it to a uniformly random equitable ell-partition (leftover
// vertices dropped). If ghat contains a copy of hhat then the coloring
// contains a monochromatic copy of the pattern.
inline KrReduction kr_reduce(const EdgeColoring& f, const Hypergraph& pattern, int ell,
                             std::uint64_t seed, std::uint64_t cap = 2'000'000)
{
    if (ell < pattern.uniformity())
        throw ArgumentError("kr_reduce: ell must be >= k");
    Hypergraph skel1 = skeleton(pattern, std::min(1, pattern.uniformity() - 1));
    std::vector<int> coloring = greedy_coloring(skel1);
    int used = 0;
    for (int c : coloring)
        used = std::max(used, c + 1);
    if (used > ell)
        throw SetupError("kr_reduce: greedy coloring of the 1-skeleton needs more than ell colors");

    KrReduction out;
    out.pattern_vertices = pattern.vertex_count();
    out.hhat = lift_to_uniformity(pattern, ell, coloring);

    auto cliques = harvest_monochromatic_cliques(f, ell, cap);
    int best = 0;
    for (int c = 1; c < f.q; ++c)
        if (cliques[static_cast<std::size_t>(c)].edge_count() >
            cliques[static_cast<std::size_t>(best)].edge_count())
            best = c;
    out.color = best;

    const int block = f.N / ell;
    if (block == 0) {
        out.failure = "N < ell";
        return out;
    }
    Rng rng(seed);
    std::vector<int> perm(static_cast<std::size_t>(f.N));
    for (int i = 0; i < f.N; ++i)
        perm[static_cast<std::size_t>(i)] = i;
    rng.shuffle(perm);
    std::vector<std::vector<int>> parts(static_cast<std::size_t>(ell));
    for (int i = 0; i < ell * block; ++i)
        parts[static_cast<std::size_t>(i / block)].push_back(perm[static_cast<std::size_t>(i)]);

    CompactedHypergraph cmp = induced_compact(cliques[static_cast<std::size_t>(best)], parts);
    out.ghat = std::move(cmp.graph);
    out.to_host = std::move(cmp.to_old);
    if (out.ghat.edge_count() == 0) {
        out.failure = "no monochromatic cliques survive the sampled partition";
        return out;
    }
    out.ok = true;
    return out;
}

// Pull an embedding of hhat into ghat back to a monochromatic copy of the
// original pattern in the coloring; the monochromaticity is re-verified
// edge by edge, never assumed.
inline std::optional<Embedding> kr_pullback(const KrReduction& kr, const Embedding& emb,
                                            const EdgeColoring& f, const Hypergraph& pattern)
{
    if (!emb.verify(kr.hhat, kr.ghat))
        return std::nullopt;
    Embedding out;
    std::set<int> image;
    for (int v = 0; v < kr.pattern_vertices; ++v) {
        int host = kr.to_host.at(static_cast<std::size_t>(emb.map[static_cast<std::size_t>(v)]));
        if (!image.insert(host).second)
            return std::nullopt;
        out.map.push_back(host);
    }
    for (const auto& e : pattern.edges()) {
        std::vector<int> img;
        for (int v : e)
            img.push_back(out.map[static_cast<std::size_t>(v)]);
        std::sort(img.begin(), img.end());
        if (f.color_of(img) != kr.color)
            return std::nullopt;
    }
    return out;
}

enum class RamseyStrategy { Oracle, Pipeline };

struct RamseyExperimentOptions {
    bool exhaustive = false;
    int trials = 20;
    std::optional<int> ell;          // default d_1(H) + 1
    std::string route = "drc";       // pipeline strategy: "drc" or "linear"
    PipelineOverrides overrides;     // for the linear route
    PipelineConfig prune_config;     // for the drc route
};

// Runs the end-to-end experiment and reports machine-readable results:
// success rates, sizes, and verified pullbacks. Exhaustive sweeps enumerate
// colorings up to color symmetry (first-use canonical form).
inline nlohmann::json ramsey_experiment(const Hypergraph& pattern, int q, int N,
                                        RamseyStrategy strategy, std::uint64_t seed,
                                        const RamseyExperimentOptions& opt = {})
{
    nlohmann::json report;
    report["q"] = q;
    report["N"] = N;
    report["pattern_vertices"] = pattern.vertex_count();
    report["pattern_edges"] = pattern.edge_count();
    const int k = pattern.uniformity();

    if (strategy == RamseyStrategy::Oracle) {
        report["strategy"] = "oracle";
        if (opt.exhaustive) {
            const long long m = binomial(N, k);
            const double bits = static_cast<double>(m) * std::log2(static_cast<double>(q));
            if (bits > 24.0)
                throw ArgumentError("ramsey_experiment: exhaustive sweep above the 24-bit cap");
            long long total = 0;
            long long hits = 0;
            nlohmann::json failing = nullptr;
            std::vector<int> colors(static_cast<std::size_t>(m), 0);
            std::function<void(int, int)> sweep = [&](int i, int used) {
                if (i == m) {
                    ++total;
                    EdgeColoring f(N, k, q, colors);
                    if (find_monochromatic_copy(f, pattern))
                        ++hits;
                    else if (failing.is_null())
                        failing = to_json(f);
                    return;
                }
                const int limit = std::min(q, used + 1);
                for (int c = 0; c < limit; ++c) {
                    colors[static_cast<std::size_t>(i)] = c;
                    sweep(i + 1, std::max(used, c + 1));
                }
            };
            sweep(0, 0);
            report["exhaustive"] = true;
            report["canonical_colorings"] = total;
            report["with_monochromatic_copy"] = hits;
            report["success"] = (hits == total);
            report["failing_witness"] = failing;
        } else {
            int hits = 0;
            int verified = 0;
            for (int trial = 0; trial < opt.trials; ++trial) {
                EdgeColoring f =
                    EdgeColoring::random(N, k, q, derive_seed(seed, "color" + std::to_string(trial)));
                auto found = find_monochromatic_copy(f, pattern);
                if (found) {
                    ++hits;
                    if (found->second.verify(pattern, f.color_class(found->first)))
                        ++verified;
                }
            }
            report["exhaustive"] = false;
            report["trials"] = opt.trials;
            report["with_monochromatic_copy"] = hits;
            report["verified_copies"] = verified;
            report["success_rate"] = opt.trials ? static_cast<double>(hits) / opt.trials : 0.0;
        }
        return report;
    }

    report["strategy"] = "pipeline";
    report["route"] = opt.route;
    const int d = pattern.uniformity() >= 2 ? skeletal_degeneracy(pattern, 1).value : 0;
    const int ell = opt.ell.value_or(d + 1);
    report["ell"] = ell;
    nlohmann::json runs = nlohmann::json::array();
    int pullbacks = 0;
    for (int trial = 0; trial < opt.trials; ++trial) {
        nlohmann::json entry;
        EdgeColoring f =
            EdgeColoring::random(N, k, q, derive_seed(seed, "color" + std::to_string(trial)));
        KrReduction kr;
        try {
            kr = kr_reduce(f, pattern, ell, derive_seed(seed, "kr" + std::to_string(trial)));
        } catch (const Error& e) {
            entry["kr"] = false;
            entry["error"] = e.what();
            runs.push_back(entry);
            continue;
        }
        entry["kr"] = kr.ok;
        if (!kr.ok) {
            entry["failure"] = kr.failure;
            runs.push_back(entry);
            continue;
        }
        entry["color"] = kr.color;
        entry["ghat_edges"] = kr.ghat.edge_count();
        entry["hhat_vertices"] = kr.hhat.vertex_count();

        std::optional<Embedding> emb;
        if (opt.route == "linear") {
            PipelineRun pr = linear_turan_pipeline(kr.ghat, kr.hhat, opt.overrides,
                                                   derive_seed(seed, "pipe" + std::to_string(trial)));
            entry["stage"] = pr.ok ? "done" : pr.failed_stage;
            if (pr.ok)
                emb = pr.embedding;
        } else {
            Hypergraph anchored = augment_with_anchors(kr.hhat);
            std::vector<int> anchors;
            for (int i = 0; i < ell; ++i)
                anchors.push_back(kr.hhat.vertex_count() + i);
            int d_pipe = skeletal_degeneracy(anchored, 1).value;
            PruneOutcome po = prune_pipeline(kr.ghat, std::max(1, d_pipe),
                                             derive_seed(seed, "prune" + std::to_string(trial)),
                                             opt.prune_config);
            entry["prune_ok"] = po.ok;
            if (po.ok) {
                auto anchored_emb = degeneracy_order_embed(anchored, *po.survivor, anchors);
                if (anchored_emb) {
                    Embedding restricted;
                    for (int v = 0; v < kr.hhat.vertex_count(); ++v)
                        restricted.map.push_back(anchored_emb->map[static_cast<std::size_t>(v)]);
                    if (restricted.verify(kr.hhat, kr.ghat))
                        emb = restricted;
                }
            }
        }
        entry["embedded"] = emb.has_value();
        if (emb) {
            auto pulled = kr_pullback(kr, *emb, f, pattern);
            entry["pullback_verified"] = pulled.has_value();
            if (pulled)
                ++pullbacks;
        }
        runs.push_back(entry);
    }
    report["trials"] = opt.trials;
    report["verified_pullbacks"] = pullbacks;
    report["runs"] = runs;
    return report;
}

} // namespace skeletal
