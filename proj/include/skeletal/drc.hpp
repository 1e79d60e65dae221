#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "skeletal/defect.hpp"
#include "skeletal/degeneracy.hpp"
#include "skeletal/hypergraph.hpp"
#include "skeletal/oracle.hpp"
#include "skeletal/rng.hpp"

namespace skeletal {

inline long long ceil_cbrt(long long n)
{
    long long a = static_cast<long long>(std::cbrt(static_cast<double>(n)));
    while (a > 0 && (a - 1) * (a - 1) * (a - 1) >= n)
        --a;
    while (a * a * a < n)
        ++a;
    return a;
}

// Violations of the (a, d)-vertex-extending property toward one part:
// vertex sets S of at most d vertices in V_{-t} whose induced (k-1)-edges
// have fewer than a mutual extensions.
struct ExtensionWitness {
    int target_part = 0;
    long long threshold = 0; // a
    int set_size_bound = 0;  // d
    std::vector<std::pair<std::vector<int>, long long>> violations;

    bool extending() const { return violations.empty(); }
};

// Exhaustive check of the vertex-extending property. Mutual extensions of
// an empty induced family are all of V_t.
inline ExtensionWitness is_vertex_extending(const Hypergraph& g, int t, long long a, int d,
                                            std::uint64_t cap = 4'000'000)
{
    if (!g.layout())
        throw LayoutError("is_vertex_extending: hypergraph has no layout");
    if (t < 0 || t >= g.layout()->part_count())
        throw IndexError("is_vertex_extending: bad part index");
    const int k = g.uniformity();
    std::vector<int> pool = g.layout()->co_part(t);
    const auto& vt = g.layout()->part(t);

    double subsets = 0;
    for (int j = 0; j <= d; ++j)
        subsets += static_cast<double>(binomial(static_cast<long long>(pool.size()), j));
    if (subsets > static_cast<double>(cap))
        throw BudgetExceeded("is_vertex_extending: subset count exceeds the cap");

    PartialEdgeSet pe = PartialEdgeSet::of(g);
    ExtensionWitness wit;
    wit.target_part = t;
    wit.threshold = a;
    wit.set_size_bound = d;

    std::vector<int> s;
    std::vector<std::vector<int>> family;
    std::vector<int> ext;
    for (int j = 0; j <= std::min<int>(d, static_cast<int>(pool.size())); ++j) {
        detail::for_each_combination(static_cast<int>(pool.size()), j, [&](const std::vector<int>& idx) {
            s.clear();
            for (int i : idx)
                s.push_back(pool[static_cast<std::size_t>(i)]);
            // induced (k-1)-edges: (k-1)-sized partial edges inside S
            family.clear();
            if (static_cast<int>(s.size()) >= k - 1) {
                detail::for_each_combination(static_cast<int>(s.size()), k - 1,
                                             [&](const std::vector<int>& fidx) {
                                                 std::vector<int> f;
                                                 for (int i : fidx)
                                                     f.push_back(s[static_cast<std::size_t>(i)]);
                                                 if (pe.contains(f))
                                                     family.push_back(std::move(f));
                                             });
            }
            long long count;
            if (family.empty()) {
                count = static_cast<long long>(vt.size());
            } else {
                count = 0;
                for (int v : vt) {
                    bool ok = true;
                    for (const auto& f : family) {
                        ext = f;
                        ext.insert(std::lower_bound(ext.begin(), ext.end(), v), v);
                        if (!g.has_edge(ext)) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok)
                        ++count;
                }
            }
            if (count < a)
                wit.violations.emplace_back(s, count);
        });
    }
    return wit;
}

struct DrcRoundResult {
    Hypergraph pruned;       // same vertex set, layout preserved
    std::vector<int> sample; // X_t in draw order, with repetitions
};

namespace detail {

inline bool edge_survives_substitution(const Hypergraph& g, const std::vector<int>& e, int part,
                                       const std::vector<int>& xs)
{
    std::vector<int> probe;
    for (int x : xs) {
        probe.clear();
        for (int v : e)
            if (g.layout()->part_of(v) != part)
                probe.push_back(v);
        probe.push_back(x);
        std::sort(probe.begin(), probe.end());
        if (!g.has_edge(probe))
            return false;
    }
    return true;
}

} // namespace detail

// One dependent-random-choice round against part t: sample u vertices of
// V_t with replacement, keep the edges whose part-t substitution by every
// sampled vertex is still an edge. The survival rule is re-verified on the
// output before returning.
inline DrcRoundResult drc_round(const Hypergraph& g, int t, int u, std::uint64_t seed)
{
    if (!g.layout())
        throw LayoutError("drc_round: hypergraph has no layout");
    const auto& vt = g.layout()->part(t);
    if (vt.empty())
        throw ArgumentError("drc_round: target part is empty");
    if (u < 1)
        throw ArgumentError("drc_round: u must be >= 1");
    Rng rng(seed);
    std::vector<int> sample;
    sample.reserve(static_cast<std::size_t>(u));
    for (int i = 0; i < u; ++i)
        sample.push_back(vt[static_cast<std::size_t>(rng.below(vt.size()))]);

    std::vector<int> xs(sample);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<std::vector<int>> kept;
    for (const auto& e : g.edges())
        if (detail::edge_survives_substitution(g, e, t, xs))
            kept.push_back(e);
    Hypergraph pruned(g.uniformity(), g.vertex_count(), kept, g.layout());

    // independent re-verification of the survival rule
    for (const auto& e : g.edges()) {
        bool expect = true;
        for (int x : sample) {
            std::vector<int> probe;
            for (int v : e)
                if (g.layout()->part_of(v) != t)
                    probe.push_back(v);
            probe.push_back(x);
            std::sort(probe.begin(), probe.end());
            if (!g.has_edge(probe)) {
                expect = false;
                break;
            }
        }
        if (expect != pruned.has_edge(e))
            throw Error("drc_round: survival rule verification failed");
    }
    return DrcRoundResult{std::move(pruned), std::move(sample)};
}

// Simultaneous pruning: sample a t-tuple X_i per part, keep edge e iff the
// whole product ({e_1}  U  X_1) x ... x ({e_k}  U  X_k) lies in E(G), then
// drop isolated vertices. The survivor is relabelled to dense ids; to_old
// maps back.
struct SimulPruneResult {
    Hypergraph pruned;                         // compacted, layout = pruned parts
    std::vector<int> to_old;                   // new id -> old id
    std::vector<std::vector<int>> tuples;      // X_i per part, old ids
    std::vector<std::vector<int>> kept_edges;  // surviving edges, old ids
};

inline SimulPruneResult simultaneous_prune(const Hypergraph& g, int t, std::uint64_t seed)
{
    if (!g.layout())
        throw LayoutError("simultaneous_prune: hypergraph has no layout");
    if (t < 1)
        throw ArgumentError("simultaneous_prune: tuple length must be >= 1");
    const int k = g.uniformity();
    if (g.layout()->part_count() != k)
        throw LayoutError("simultaneous_prune: layout must have exactly k parts");
    for (int i = 1; i < k; ++i)
        if (g.layout()->part(i).size() != g.layout()->part(0).size())
            throw ArgumentError("simultaneous_prune: parts must have equal sizes");

    Rng rng(seed);
    std::vector<std::vector<int>> tuples(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const auto& vi = g.layout()->part(i);
        for (int j = 0; j < t; ++j)
            tuples[static_cast<std::size_t>(i)].push_back(vi[static_cast<std::size_t>(rng.below(vi.size()))]);
    }

    auto survives = [&](const std::vector<int>& e) {
        std::vector<std::vector<int>> options(static_cast<std::size_t>(k));
        for (int v : e) {
            int p = g.layout()->part_of(v);
            options[static_cast<std::size_t>(p)].push_back(v);
        }
        for (int i = 0; i < k; ++i) {
            auto& opt = options[static_cast<std::size_t>(i)];
            for (int x : tuples[static_cast<std::size_t>(i)])
                opt.push_back(x);
            std::sort(opt.begin(), opt.end());
            opt.erase(std::unique(opt.begin(), opt.end()), opt.end());
        }
        std::vector<std::size_t> odo(static_cast<std::size_t>(k), 0);
        std::vector<int> probe;
        while (true) {
            probe.clear();
            for (int i = 0; i < k; ++i)
                probe.push_back(options[static_cast<std::size_t>(i)][odo[static_cast<std::size_t>(i)]]);
            std::sort(probe.begin(), probe.end());
            if (!g.has_edge(probe))
                return false;
            int i = 0;
            while (i < k && ++odo[static_cast<std::size_t>(i)] == options[static_cast<std::size_t>(i)].size()) {
                odo[static_cast<std::size_t>(i)] = 0;
                ++i;
            }
            if (i == k)
                break;
        }
        return true;
    };

    std::vector<std::vector<int>> kept;
    for (const auto& e : g.edges())
        if (survives(e))
            kept.push_back(e);

    // survivor on the original universe, then drop isolated vertices
    Hypergraph full(g.uniformity(), g.vertex_count(), kept, g.layout());
    std::vector<std::vector<int>> pruned_parts;
    for (int i = 0; i < k; ++i) {
        std::vector<int> part;
        for (int v : g.layout()->part(i))
            if (!full.is_isolated(v))
                part.push_back(v);
        pruned_parts.push_back(std::move(part));
    }
    CompactedHypergraph compact = induced_compact(full, pruned_parts);

    // post hoc: every edge of the compacted survivor, mapped back to the
    // original ids, satisfies the product rule, and the counts agree
    if (static_cast<std::size_t>(compact.graph.edge_count()) != kept.size())
        throw Error("simultaneous_prune: survivor lost edges in compaction");
    for (const auto& e : compact.graph.edges()) {
        std::vector<int> back;
        for (int v : e)
            back.push_back(compact.to_old[static_cast<std::size_t>(v)]);
        std::sort(back.begin(), back.end());
        if (!survives(back))
            throw Error("simultaneous_prune: survival rule verification failed");
    }
    return SimulPruneResult{std::move(compact.graph), std::move(compact.to_old), std::move(tuples),
                            std::move(kept)};
}

// Trace of one staged pruning run.
struct PruneTrace {
    struct Stage {
        int part = 0;
        long long d_t = 0;
        int u = 0;
        std::vector<int> sample;
        long long edges_before = 0;
        long long edges_after = 0;
    };
    std::vector<Stage> stages;
    std::vector<double> epsilons; // schedule diagnostics
    int attempts = 0;
    bool subasymptotic = false; // e(G) below the schedule's entry threshold
    std::string failure;
};

struct PruneOutcome {
    bool ok = false;
    std::optional<Hypergraph> survivor; // same universe as the input
    PruneTrace trace;
};

struct PipelineConfig {
    int lambda = 2;
    std::optional<double> epsilon0;          // default 3^{-k(k+3)/2} d^{-(k-1)}
    std::optional<long long> extension_goal; // default ceil(n^{1/3})
    int retries = 16;
    std::uint64_t extension_cap = 4'000'000;
};

// Staged pruning schedule: k-1 rounds with d_t = 3^{k-t+1} d and u = lambda
// d_t against part t, then a final round sampling 8d vertices from the
// non-isolated part-k vertices. Succeeds when the survivor is nonempty and
// (a, d)-vertex-extending to every part with a = ceil(n^{1/3}); the product
// X_1 x ... x X_k is asserted to lie inside the survivor on every success.
inline PruneOutcome prune_pipeline(const Hypergraph& g, int d, std::uint64_t seed,
                                   const PipelineConfig& cfg = {})
{
    if (!g.layout())
        throw LayoutError("prune_pipeline: hypergraph has no layout");
    const int k = g.uniformity();
    if (g.layout()->part_count() != k)
        throw LayoutError("prune_pipeline: layout must have exactly k parts");
    const std::size_t n = g.layout()->part(0).size();
    for (int i = 1; i < k; ++i)
        if (g.layout()->part(i).size() != n)
            throw ArgumentError("prune_pipeline: parts must have equal sizes");
    if (d < 1)
        throw ArgumentError("prune_pipeline: d must be >= 1");

    const double eps0 = cfg.epsilon0.value_or(
        std::pow(3.0, -0.5 * k * (k + 3)) * std::pow(static_cast<double>(d), -(k - 1)));
    const long long a = cfg.extension_goal.value_or(ceil_cbrt(static_cast<long long>(n)));

    PruneOutcome best;
    Rng seeder(seed);
    for (int attempt = 0; attempt < std::max(1, cfg.retries); ++attempt) {
        PruneTrace trace;
        trace.attempts = attempt + 1;
        double eps = eps0;
        trace.epsilons.push_back(eps);
        if (n > 0 && static_cast<double>(g.edge_count()) <
                         std::pow(static_cast<double>(n), static_cast<double>(k) - eps))
            trace.subasymptotic = true;

        Hypergraph cur = g;
        std::vector<std::vector<int>> samples;
        bool dead = false;
        for (int t = 1; t <= k - 1; ++t) {
            long long dt = d;
            for (int i = 0; i < k - t + 1; ++i)
                dt *= 3;
            int u = static_cast<int>(std::min<long long>(cfg.lambda * dt, 1'000'000));
            eps *= 3.0 * static_cast<double>(dt);
            trace.epsilons.push_back(eps);
            PruneTrace::Stage st;
            st.part = t - 1;
            st.d_t = dt;
            st.u = u;
            st.edges_before = cur.edge_count();
            DrcRoundResult round = drc_round(cur, t - 1, u, seeder.next());
            st.sample = round.sample;
            st.edges_after = round.pruned.edge_count();
            trace.stages.push_back(std::move(st));
            cur = std::move(round.pruned);
            if (cur.edge_count() == 0) {
                trace.failure = "stage " + std::to_string(t) + " emptied the host";
                dead = true;
                break;
            }
            samples.push_back(trace.stages.back().sample);
        }
        if (!dead) {
            // final round: sample 8d vertices from the non-isolated part-k set
            std::vector<int> bk;
            for (int v : cur.layout()->part(k - 1))
                if (!cur.is_isolated(v))
                    bk.push_back(v);
            if (bk.empty()) {
                trace.failure = "B_k is empty";
                dead = true;
            } else {
                Rng rng(seeder.next());
                std::vector<int> xk;
                for (int i = 0; i < 8 * d; ++i)
                    xk.push_back(bk[static_cast<std::size_t>(rng.below(bk.size()))]);
                std::vector<int> xs(xk);
                std::sort(xs.begin(), xs.end());
                xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
                std::vector<std::vector<int>> kept;
                for (const auto& e : cur.edges())
                    if (detail::edge_survives_substitution(cur, e, k - 1, xs))
                        kept.push_back(e);
                PruneTrace::Stage st;
                st.part = k - 1;
                st.d_t = d;
                st.u = 8 * d;
                st.sample = xk;
                st.edges_before = cur.edge_count();
                st.edges_after = static_cast<long long>(kept.size());
                trace.stages.push_back(std::move(st));
                cur = Hypergraph(k, cur.vertex_count(), kept, cur.layout());
                samples.push_back(xk);

                if (cur.edge_count() == 0) {
                    trace.failure = "final stage emptied the host";
                    dead = true;
                }
            }
        }
        if (!dead) {
            // product structure guarantee: X_1 x ... x X_k is inside the survivor
            std::vector<std::vector<int>> uniq(samples);
            for (auto& u : uniq) {
                std::sort(u.begin(), u.end());
                u.erase(std::unique(u.begin(), u.end()), u.end());
            }
            std::vector<std::size_t> odo(static_cast<std::size_t>(k), 0);
            std::vector<int> probe;
            while (true) {
                probe.clear();
                for (int i = 0; i < k; ++i)
                    probe.push_back(uniq[static_cast<std::size_t>(i)][odo[static_cast<std::size_t>(i)]]);
                std::sort(probe.begin(), probe.end());
                if (!cur.has_edge(probe))
                    throw Error("prune_pipeline: product structure violated");
                int i = 0;
                while (i < k && ++odo[static_cast<std::size_t>(i)] == uniq[static_cast<std::size_t>(i)].size()) {
                    odo[static_cast<std::size_t>(i)] = 0;
                    ++i;
                }
                if (i == k)
                    break;
            }
            bool extending = true;
            for (int r = 0; r < k && extending; ++r) {
                ExtensionWitness w = is_vertex_extending(cur, r, a, d, cfg.extension_cap);
                if (!w.extending()) {
                    extending = false;
                    trace.failure = "survivor is not (" + std::to_string(a) + ", " + std::to_string(d) +
                                    ")-vertex-extending to part " + std::to_string(r);
                }
            }
            if (extending) {
                PruneOutcome out;
                out.ok = true;
                out.survivor = std::move(cur);
                out.trace = std::move(trace);
                return out;
            }
            if (!best.survivor || cur.edge_count() > best.survivor->edge_count()) {
                best.survivor = std::move(cur);
                best.trace = std::move(trace);
            }
            continue;
        }
        if (!best.survivor) {
            best.trace = std::move(trace);
        }
    }
    best.ok = false;
    if (best.trace.failure.empty())
        best.trace.failure = "retry budget exhausted";
    return best;
}

// Greedy embedding into a vertex-extending host, after the anchored
// degeneracy-order procedure: the anchor vertices (one per part) go first
// and are mapped onto an edge of the host; every later vertex is mapped to
// an unused mutual extension (in its target part) of the host (k-1)-edges
// induced on the images of its already-embedded skeleton neighbors.
// Deterministic: candidates are taken in ascending id order. The result is
// verified before returning; on any dead end the function returns absent.
inline std::optional<Embedding> degeneracy_order_embed(const Hypergraph& pattern,
                                                       const Hypergraph& host,
                                                       const std::vector<int>& anchors)
{
    if (pattern.uniformity() != host.uniformity())
        throw UniformityError("degeneracy_order_embed: uniformity mismatch");
    if (!pattern.layout() || !host.layout() ||
        pattern.layout()->part_count() != host.layout()->part_count())
        throw LayoutError("degeneracy_order_embed: matching layouts required");
    const int k = pattern.uniformity();
    if (pattern.layout()->part_count() != k)
        throw LayoutError("degeneracy_order_embed: layouts must have exactly k parts");
    if (static_cast<int>(anchors.size()) != k)
        throw ArgumentError("degeneracy_order_embed: need one anchor per part");
    if (host.edge_count() == 0)
        return std::nullopt;

    // anchors first (in part order), then a degeneracy order of the rest
    // computed on the anchor-free skeleton, so each later vertex closes at
    // most d_1(pattern minus anchors) + k earlier vertices
    std::vector<int> order;
    std::vector<int> by_part(static_cast<std::size_t>(k), -1);
    for (int a : anchors)
        by_part[static_cast<std::size_t>(pattern.layout()->part_of(a))] = a;
    for (int a : by_part) {
        if (a == -1)
            throw ArgumentError("degeneracy_order_embed: anchors must cover all parts");
        order.push_back(a);
    }
    Hypergraph skel1 = skeleton(pattern, std::min(1, k - 1));
    {
        std::vector<int> rest;
        for (int v = 0; v < pattern.vertex_count(); ++v)
            if (std::find(anchors.begin(), anchors.end(), v) == anchors.end())
                rest.push_back(v);
        CompactedHypergraph sub = compact_to_support(skel1, rest);
        DegeneracyCertificate cert = degeneracy(sub.graph);
        for (int v : cert.order)
            order.push_back(sub.to_old[static_cast<std::size_t>(v)]);
    }

    PartialEdgeSet host_pe = PartialEdgeSet::of(host);
    std::vector<int> map(static_cast<std::size_t>(pattern.vertex_count()), -1);
    std::vector<bool> used(static_cast<std::size_t>(host.vertex_count()), false);
    std::vector<int> pos(static_cast<std::size_t>(pattern.vertex_count()), -1);
    for (std::size_t i = 0; i < order.size(); ++i)
        pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);

    // the anchor tuple lands on the lexicographically least host edge
    {
        const auto& e0 = host.edges().front();
        for (int u : e0) {
            int p = host.layout()->part_of(u);
            int a = by_part[static_cast<std::size_t>(p)];
            map[static_cast<std::size_t>(a)] = u;
            used[static_cast<std::size_t>(u)] = true;
        }
        for (int a : by_part)
            if (map[static_cast<std::size_t>(a)] == -1)
                return std::nullopt; // host edge misses a part
    }

    for (int v : order) {
        if (map[static_cast<std::size_t>(v)] != -1)
            continue; // anchor, already placed
        // images of earlier skeleton neighbors
        std::vector<int> s;
        for (int ei : skel1.incidence()[static_cast<std::size_t>(v)])
            for (int u : skel1.edge(ei))
                if (u != v && pos[static_cast<std::size_t>(u)] < pos[static_cast<std::size_t>(v)] &&
                    map[static_cast<std::size_t>(u)] != -1)
                    s.push_back(map[static_cast<std::size_t>(u)]);
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());

        // induced (k-1)-edges of the host inside the image set
        std::vector<std::vector<int>> family;
        if (static_cast<int>(s.size()) >= k - 1) {
            detail::for_each_combination(static_cast<int>(s.size()), k - 1,
                                         [&](const std::vector<int>& idx) {
                                             std::vector<int> f;
                                             for (int i : idx)
                                                 f.push_back(s[static_cast<std::size_t>(i)]);
                                             if (host_pe.contains(f))
                                                 family.push_back(std::move(f));
                                         });
        }
        const auto& part = host.layout()->part(pattern.layout()->part_of(v));
        int chosen = -1;
        std::vector<int> ext;
        for (int u : part) {
            if (used[static_cast<std::size_t>(u)])
                continue;
            bool ok = true;
            for (const auto& f : family) {
                ext = f;
                ext.insert(std::lower_bound(ext.begin(), ext.end(), u), u);
                if (!host.has_edge(ext)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                chosen = u;
                break;
            }
        }
        if (chosen == -1)
            return std::nullopt;
        map[static_cast<std::size_t>(v)] = chosen;
        used[static_cast<std::size_t>(chosen)] = true;
    }
    Embedding emb{std::move(map), true};
    if (!emb.verify(pattern, host))
        return std::nullopt;
    return emb;
}

} // namespace skeletal
