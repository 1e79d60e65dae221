#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "skeletal/defect.hpp"
#include "skeletal/degeneracy.hpp"
#include "skeletal/drc.hpp"
#include "skeletal/hypergraph.hpp"
#include "skeletal/oracle.hpp"
#include "skeletal/rational.hpp"
#include "skeletal/rng.hpp"

namespace skeletal {

// Full data of the embedding stage: host G over V_1..V_K, pattern H over
// W_1..W_K, forward tuples f_v, thresholds theta_1..theta_{K-1}, tuple
// length d. Parts are indexed 0-based in processing order: part K-1 is
// embedded first, part 0 last.
struct EmbeddingSetup {
    Hypergraph host;
    Hypergraph pattern;
    int K = 0;
    int d = 0;
    std::vector<std::vector<int>> fwd; // f_v per pattern vertex; empty for the last part
    std::vector<Rational> thetas;      // size K-1, for parts 0..K-2
    std::vector<int> part_class;       // padding must avoid the vertex's own class

    Rational gamma() const
    {
        Rational g(1);
        for (int i = 0; i + 1 < K; ++i) {
            Rational ratio = Rational(static_cast<long long>(host.layout()->part(i).size())) /
                             thetas[static_cast<std::size_t>(i)];
            if (ratio > g)
                g = ratio;
        }
        return g;
    }
};

// Diagnostic accessor: mu_t(x) = mu_{theta_x,t}(Q_x, V_x; G) with Q_x the
// product of the host parts matching the coordinates of f_x. Enumeration is
// capped; never asserted as a hard per-run bound.
Defect setup_mu_t(const EmbeddingSetup& setup, int x, unsigned t, std::uint64_t cap = 100'000);

namespace detail {

inline Hypergraph reorder_layout(const Hypergraph& g, const std::vector<int>& parts_order)
{
    if (parts_order.empty())
        return g;
    std::vector<std::vector<int>> parts;
    for (int p : parts_order)
        parts.push_back(g.layout()->part(p));
    return g.with_layout(PartiteLayout(g.vertex_count(), std::move(parts)));
}

} // namespace detail

// Constructs f_v = N^+(v) in ascending id order, padded with the smallest
// eligible later-part vertices of a class other than v's own; when the
// eligible pool is smaller than the padding need, it is reused cyclically.
// An empty pool is a SetupError, as are all other Setup violations.
inline EmbeddingSetup build_setup(const Hypergraph& host, const Hypergraph& pattern,
                                  const std::vector<int>& parts_order,
                                  const std::vector<Rational>& thetas, int d,
                                  std::vector<int> part_class = {})
{
    if (!host.layout() || !pattern.layout())
        throw SetupError("build_setup: both sides need layouts");
    Hypergraph g = detail::reorder_layout(host, parts_order);
    Hypergraph h = detail::reorder_layout(pattern, parts_order);
    const int K = g.layout()->part_count();
    if (h.layout()->part_count() != K)
        throw SetupError("build_setup: part counts differ");
    if (g.uniformity() != h.uniformity())
        throw SetupError("build_setup: uniformity mismatch");
    if (static_cast<int>(thetas.size()) != K - 1)
        throw SetupError("build_setup: need K-1 thresholds");
    for (const auto& th : thetas)
        if (th <= 0)
            throw SetupError("build_setup: thresholds must be positive");
    if (g.layout()->part(K - 1).size() < h.layout()->part(K - 1).size())
        throw SetupError("build_setup: |V_K| < |W_K|");
    for (int i = 0; i < K; ++i)
        if (g.layout()->part(i).empty() && !h.layout()->part(i).empty())
            throw SetupError("build_setup: empty host part faces a nonempty pattern part");
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.is_isolated(v))
            throw SetupError("build_setup: host has isolated vertices");
    if (part_class.empty()) {
        part_class.resize(static_cast<std::size_t>(K));
        for (int i = 0; i < K; ++i)
            part_class[static_cast<std::size_t>(i)] = i;
    }
    if (static_cast<int>(part_class.size()) != K)
        throw SetupError("build_setup: part_class size mismatch");
    if (d < 1)
        throw SetupError("build_setup: d must be >= 1");

    EmbeddingSetup setup;
    setup.K = K;
    setup.d = d;
    setup.thetas = thetas;
    setup.part_class = part_class;
    setup.fwd.assign(static_cast<std::size_t>(h.vertex_count()), {});

    Hypergraph skel1 = skeleton(h, std::min(1, h.uniformity() - 1));
    for (int v = 0; v < h.vertex_count(); ++v) {
        const int pv = h.layout()->part_of(v);
        if (pv == K - 1)
            continue;
        std::vector<int> nplus;
        for (int ei : skel1.incidence()[static_cast<std::size_t>(v)])
            for (int u : skel1.edge(ei))
                if (u != v && h.layout()->part_of(u) > pv)
                    nplus.push_back(u);
        std::sort(nplus.begin(), nplus.end());
        nplus.erase(std::unique(nplus.begin(), nplus.end()), nplus.end());
        if (static_cast<int>(nplus.size()) > d)
            throw SetupError("build_setup: |N+(v)| exceeds d");
        std::vector<int> f(nplus);
        if (static_cast<int>(f.size()) < d) {
            // eligible pool: later-part vertices of a different class, fresh
            // vertices first, the forward neighbors as a cyclic fallback
            std::vector<int> fresh, fallback;
            for (int p = pv + 1; p < K; ++p) {
                if (part_class[static_cast<std::size_t>(p)] == part_class[static_cast<std::size_t>(pv)])
                    continue;
                for (int u : h.layout()->part(p)) {
                    if (std::binary_search(nplus.begin(), nplus.end(), u))
                        fallback.push_back(u);
                    else
                        fresh.push_back(u);
                }
            }
            std::sort(fresh.begin(), fresh.end());
            std::sort(fallback.begin(), fallback.end());
            std::vector<int> pool(fresh);
            pool.insert(pool.end(), fallback.begin(), fallback.end());
            if (pool.empty())
                throw SetupError("build_setup: no eligible padding vertices for vertex " +
                                 std::to_string(v));
            std::size_t idx = 0;
            while (static_cast<int>(f.size()) < d) {
                f.push_back(pool[idx % pool.size()]);
                ++idx;
            }
        }
        setup.fwd[static_cast<std::size_t>(v)] = std::move(f);
    }
    setup.host = std::move(g);
    setup.pattern = std::move(h);
    return setup;
}

// Which branch of step 3 fired for each vertex.
enum class GreedyCase : std::uint8_t { LastPart, EmptyNeighborhood, Depleted, Fresh };

struct GreedyRun {
    std::vector<int> psi;              // pattern vertex -> host vertex
    std::vector<GreedyCase> case_log;  // per pattern vertex
    std::vector<Defect> defect_log;    // omega(x; psi) per pattern vertex
    std::uint64_t seed = 0;

    bool total() const
    {
        return std::all_of(psi.begin(), psi.end(), [](int v) { return v >= 0; });
    }
};

// The random greedy process: the last part is embedded uniformly without
// repetition; every earlier part is ordered by non-increasing defect of the
// embedded forward tuple (ties toward the lower id) and each vertex is
// placed by the three-way rule on N_j and L_j. The map always completes; it
// need not be an embedding.
inline GreedyRun random_greedy_embed(const EmbeddingSetup& setup, std::uint64_t seed)
{
    const Hypergraph& g = setup.host;
    const Hypergraph& h = setup.pattern;
    const int K = setup.K;
    Rng rng(seed);

    GreedyRun run;
    run.seed = seed;
    run.psi.assign(static_cast<std::size_t>(h.vertex_count()), -1);
    run.case_log.assign(static_cast<std::size_t>(h.vertex_count()), GreedyCase::LastPart);
    run.defect_log.assign(static_cast<std::size_t>(h.vertex_count()), Defect::zero());

    PartialEdgeSet host_pe = PartialEdgeSet::of(g);

    // step 1: last part, uniform without repetition
    {
        const auto& wk = h.layout()->part(K - 1);
        std::vector<int> remaining = g.layout()->part(K - 1);
        for (int x : wk) {
            std::size_t pick = static_cast<std::size_t>(rng.below(remaining.size()));
            run.psi[static_cast<std::size_t>(x)] = remaining[pick];
            remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
            run.case_log[static_cast<std::size_t>(x)] = GreedyCase::LastPart;
        }
    }

    // steps 2-3: parts K-2 .. 0
    for (int i = K - 2; i >= 0; --i) {
        const auto& wi = h.layout()->part(i);
        const auto& vi = g.layout()->part(i);
        const Rational& theta = setup.thetas[static_cast<std::size_t>(i)];

        struct Entry {
            int x;
            Defect omega;
            std::vector<int> neighborhood;
        };
        std::vector<Entry> entries;
        for (int x : wi) {
            std::vector<int> q;
            for (int u : setup.fwd[static_cast<std::size_t>(x)])
                q.push_back(run.psi[static_cast<std::size_t>(u)]);
            std::sort(q.begin(), q.end());
            q.erase(std::unique(q.begin(), q.end()), q.end());
            auto family = detail::pe_restricted_members(host_pe, q, g.uniformity());
            bool full_member = false;
            for (const auto& s : family)
                if (static_cast<int>(s.size()) == g.uniformity())
                    full_member = true;
            std::vector<int> nbhd;
            if (!full_member)
                nbhd = detail::common_extensions(g, host_pe, family, vi);
            Defect omega = omega_theta(static_cast<long long>(nbhd.size()), theta);
            entries.push_back(Entry{x, std::move(omega), std::move(nbhd)});
        }
        std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            if (a.omega != b.omega)
                return b.omega < a.omega; // non-increasing omega
            return a.x < b.x;
        });

        std::vector<bool> used(static_cast<std::size_t>(g.vertex_count()), false);
        for (const auto& e : entries) {
            run.defect_log[static_cast<std::size_t>(e.x)] = e.omega;
            std::vector<int> live;
            for (int v : e.neighborhood)
                if (!used[static_cast<std::size_t>(v)])
                    live.push_back(v);
            int target;
            if (e.neighborhood.empty()) {
                target = vi[static_cast<std::size_t>(rng.below(vi.size()))];
                run.case_log[static_cast<std::size_t>(e.x)] = GreedyCase::EmptyNeighborhood;
            } else if (2 * live.size() < e.neighborhood.size()) {
                target = e.neighborhood[static_cast<std::size_t>(rng.below(e.neighborhood.size()))];
                run.case_log[static_cast<std::size_t>(e.x)] = GreedyCase::Depleted;
            } else {
                target = live[static_cast<std::size_t>(rng.below(live.size()))];
                run.case_log[static_cast<std::size_t>(e.x)] = GreedyCase::Fresh;
            }
            run.psi[static_cast<std::size_t>(e.x)] = target;
            used[static_cast<std::size_t>(target)] = true;
        }
    }
    return run;
}

// True iff every part's defect-power sum stays within half its threshold.
// Requires the run to be total and theta_i >= 2|W_i| for all i < K.
inline bool check_embedding_conditions(const GreedyRun& run, const EmbeddingSetup& setup, unsigned s)
{
    if (!run.total())
        throw PreconditionError("check_embedding_conditions: map is not total");
    for (int i = 0; i + 1 < setup.K; ++i) {
        const auto size_wi = setup.pattern.layout()->part(i).size();
        if (setup.thetas[static_cast<std::size_t>(i)] < Rational(2 * static_cast<long long>(size_wi)))
            throw PreconditionError("check_embedding_conditions: theta_i < 2|W_i|");
    }
    for (int i = 0; i + 1 < setup.K; ++i) {
        Defect sum = Defect::zero();
        for (int x : setup.pattern.layout()->part(i)) {
            sum += run.defect_log[static_cast<std::size_t>(x)].pow(s);
            if (sum.is_infinite())
                return false;
        }
        if (Defect(setup.thetas[static_cast<std::size_t>(i)] / 2) < sum)
            return false;
    }
    return true;
}

// Refinement W_i^(j) of the pattern's parts, peeling vertices of skeleton
// degree below 4d level by level.
struct HPartition {
    int T = 0;
    std::vector<std::vector<std::vector<int>>> blocks; // [i][j], i in [0,T), j in [0,k)
};

// The four conclusions the refinement guarantees; the integer form of (i) is
// 2^T <= n (waived for the trivial n <= 1 case).
inline bool check_h_partition(const Hypergraph& h, int d, const HPartition& part)
{
    const int n = h.vertex_count();
    const int k = h.layout()->part_count();
    const int T = part.T;
    if (T < 1 || static_cast<int>(part.blocks.size()) != T)
        return false;
    if (T > 1 && (T >= 63 || (1LL << T) > n))
        return false; // (i)
    std::vector<int> owner(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < T; ++i) {
        if (static_cast<int>(part.blocks[static_cast<std::size_t>(i)].size()) != k)
            return false;
        for (int j = 0; j < k; ++j) {
            const auto& blk = part.blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            // (ii): |W_i^(j)| <= 2^{-i} * 2n  (1-based i in the statement)
            if (static_cast<long long>(blk.size()) * (1LL << i) > static_cast<long long>(n))
                return false;
            for (int v : blk) {
                if (owner[static_cast<std::size_t>(v)] != -1)
                    return false;
                if (h.layout()->part_of(v) != j)
                    return false; // block must refine W_j
                owner[static_cast<std::size_t>(v)] = i;
            }
        }
    }
    for (int v = 0; v < n; ++v)
        if (owner[static_cast<std::size_t>(v)] == -1)
            return false; // (iii)
    Hypergraph skel1 = skeleton(h, std::min(1, h.uniformity() - 1));
    for (int v = 0; v < n; ++v) {
        int level = owner[static_cast<std::size_t>(v)];
        std::set<int> later;
        for (int ei : skel1.incidence()[static_cast<std::size_t>(v)])
            for (int u : skel1.edge(ei))
                if (u != v && owner[static_cast<std::size_t>(u)] >= level)
                    later.insert(u);
        if (static_cast<int>(later.size()) > 4 * d)
            return false; // (iv)
    }
    return true;
}

inline HPartition h_partition(const Hypergraph& h, int d)
{
    if (!h.layout())
        throw LayoutError("h_partition: pattern has no layout");
    if (h.uniformity() < 2)
        throw ArgumentError("h_partition: requires k >= 2");
    if (d < 1 || d < skeletal_degeneracy(h, 1).value)
        throw DegeneracyError("h_partition: requires d >= max(1, d_1(H))");
    const int n = h.vertex_count();
    const int k = h.layout()->part_count();
    Hypergraph skel1 = skeleton(h, 1);

    std::vector<bool> in_u(static_cast<std::size_t>(n), true);
    std::vector<int> level(static_cast<std::size_t>(n), -1);
    HPartition out;
    int t = 0;
    int remaining = n;
    while (remaining > 0) {
        // vertices of degree >= 4d in the skeleton induced on U_t survive
        std::vector<bool> next(static_cast<std::size_t>(n), false);
        int next_count = 0;
        for (int v = 0; v < n; ++v) {
            if (!in_u[static_cast<std::size_t>(v)])
                continue;
            std::set<int> nbrs;
            for (int ei : skel1.incidence()[static_cast<std::size_t>(v)])
                for (int u : skel1.edge(ei))
                    if (u != v && in_u[static_cast<std::size_t>(u)])
                        nbrs.insert(u);
            if (static_cast<int>(nbrs.size()) >= 4 * d) {
                next[static_cast<std::size_t>(v)] = true;
                ++next_count;
            }
        }
        for (int v = 0; v < n; ++v)
            if (in_u[static_cast<std::size_t>(v)] && !next[static_cast<std::size_t>(v)])
                level[static_cast<std::size_t>(v)] = t;
        remaining = next_count;
        in_u = std::move(next);
        ++t;
        if (t > n + 1)
            throw Error("h_partition: refinement did not terminate");
    }
    out.T = t;
    out.blocks.assign(static_cast<std::size_t>(t),
                      std::vector<std::vector<int>>(static_cast<std::size_t>(k)));
    for (int v = 0; v < n; ++v)
        out.blocks[static_cast<std::size_t>(level[static_cast<std::size_t>(v)])]
                  [static_cast<std::size_t>(h.layout()->part_of(v))]
                      .push_back(v);
    if (!check_h_partition(h, d, out))
        throw Error("h_partition: constructed refinement fails its own checks");
    return out;
}

struct GPartitionParams {
    int T = 1;
    int d = 1;
    unsigned t = 1;
    Rational theta = 1;
    std::vector<Rational> p;
    Rational epsilon = Rational(1, 2);
    Rational epsilon_prime = Rational(1, 2);
    int retries = 16;
    std::uint64_t exact_cap = 100'000;   // full tuple enumeration up to this count
    std::uint64_t sample_count = 10'000; // samples when above the cap
};

struct GPartitionResult {
    bool ok = false;
    std::vector<std::vector<std::vector<int>>> blocks; // [i][j]
    nlohmann::json diagnostics;
};

namespace detail {

struct MuEstimate {
    Defect value;
    bool sampled = false;
};

// mu_{theta,t} over the product of the given pools (tuples with
// repetition); exact when the domain is small, sampled otherwise.
inline MuEstimate mu_over_product(const Hypergraph& g, const PartialEdgeSet& pe,
                                  const std::vector<const std::vector<int>*>& pools,
                                  const std::vector<int>& vi, const Rational& theta, unsigned t,
                                  std::uint64_t exact_cap, std::uint64_t sample_count, Rng& rng)
{
    double total = 1;
    for (const auto* pool : pools) {
        if (pool->empty())
            return MuEstimate{Defect::infinity(), false}; // empty domain: treat as infinite
        total *= static_cast<double>(pool->size());
    }
    std::unordered_map<std::vector<int>, Defect, VecHash> memo;
    auto eval = [&](const std::vector<int>& q_raw) {
        std::vector<int> q(q_raw);
        std::sort(q.begin(), q.end());
        q.erase(std::unique(q.begin(), q.end()), q.end());
        auto it = memo.find(q);
        if (it == memo.end()) {
            Defect w = set_defect_in(g, pe, q, vi, theta).pow(t);
            it = memo.emplace(std::move(q), w).first;
        }
        return it->second;
    };
    if (total <= static_cast<double>(exact_cap)) {
        Defect sum = Defect::zero();
        std::vector<std::size_t> odo(pools.size(), 0);
        long long count = 0;
        std::vector<int> q;
        while (true) {
            q.clear();
            for (std::size_t a = 0; a < pools.size(); ++a)
                q.push_back((*pools[a])[odo[a]]);
            sum += eval(q);
            ++count;
            if (sum.is_infinite())
                return MuEstimate{Defect::infinity(), false};
            std::size_t a = 0;
            while (a < pools.size() && ++odo[a] == pools[a]->size()) {
                odo[a] = 0;
                ++a;
            }
            if (a == pools.size())
                break;
        }
        return MuEstimate{sum.divided_by(Rational(count)), false};
    }
    Defect sum = Defect::zero();
    std::vector<int> q;
    for (std::uint64_t s = 0; s < sample_count; ++s) {
        q.clear();
        for (const auto* pool : pools)
            q.push_back((*pool)[static_cast<std::size_t>(rng.below(pool->size()))]);
        sum += eval(q);
        if (sum.is_infinite())
            return MuEstimate{Defect::infinity(), true};
    }
    return MuEstimate{sum.divided_by(Rational(static_cast<long long>(sample_count))), true};
}

} // namespace detail

// Randomized construction of the disjoint sets V_i^(j): trim the heavy
// vertices R_i, assign each remaining vertex of B_j to V_i^(j) with
// probability p_i/2, then verify the size window and the average-defect
// bound directly, retrying on failure. Hypothesis violations are reported
// in the diagnostics but do not abort the attempt.
inline GPartitionResult g_partition(const Hypergraph& g, const GPartitionParams& prm,
                                    std::uint64_t seed)
{
    if (!g.layout())
        throw LayoutError("g_partition: hypergraph has no layout");
    const int k = g.layout()->part_count();
    const int T = prm.T;
    const int d = prm.d;
    if (static_cast<int>(prm.p.size()) != T)
        throw ArgumentError("g_partition: p schedule size must equal T");

    GPartitionResult res;
    auto& diag = res.diagnostics;
    diag["hypothesis_violations"] = nlohmann::json::array();
    diag["sampled"] = false;

    std::size_t m = 0;
    for (int j = 0; j < k; ++j)
        m = std::max(m, g.layout()->part(j).size());
    const Rational m_rat(static_cast<long long>(m));

    Rational psum = 0;
    for (const auto& pi : prm.p)
        psum += pi;
    if (psum > 1)
        diag["hypothesis_violations"].push_back("sum of p_i exceeds 1");
    const double p_floor = std::pow(static_cast<double>(m), -1.0 / (10.0 * d));
    for (const auto& pi : prm.p)
        if (pi.convert_to<double>() < p_floor)
            diag["hypothesis_violations"].push_back("p_i below m^{-1/(10d)}");
    for (int j = 0; j < k; ++j) {
        Rational size(static_cast<long long>(g.layout()->part(j).size()));
        if (size < prm.epsilon * m_rat)
            diag["hypothesis_violations"].push_back("part size below epsilon*m");
    }
    if (prm.theta < prm.epsilon * m_rat)
        diag["hypothesis_violations"].push_back("theta below epsilon*m");

    PartialEdgeSet pe = PartialEdgeSet::of(g);
    Rng rng(seed);

    // base average defects mu_{theta,t}(A_{-j}^d, A_j; G)
    std::vector<detail::MuEstimate> mu_base(static_cast<std::size_t>(k));
    std::vector<std::vector<int>> co_parts(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        co_parts[static_cast<std::size_t>(j)] = g.layout()->co_part(j);
        std::vector<const std::vector<int>*> pools(static_cast<std::size_t>(d),
                                                   &co_parts[static_cast<std::size_t>(j)]);
        mu_base[static_cast<std::size_t>(j)] =
            detail::mu_over_product(g, pe, pools, g.layout()->part(j), prm.theta, prm.t,
                                    prm.exact_cap, prm.sample_count, rng);
        if (mu_base[static_cast<std::size_t>(j)].sampled)
            diag["sampled"] = true;
        if (!(mu_base[static_cast<std::size_t>(j)].value < Defect(Rational(1, 2))))
            diag["hypothesis_violations"].push_back("mu(A_-" + std::to_string(j) +
                                                    ") not below 1/2");
    }

    // trim: vertices whose tuple-sum of omega^t is at least |A_-i|^{d-5/8}
    std::vector<std::set<int>> r_sets(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const auto& pool = co_parts[static_cast<std::size_t>(i)];
        if (pool.empty())
            continue;
        const double threshold =
            std::pow(static_cast<double>(pool.size()), static_cast<double>(d) - 5.0 / 8.0);
        std::map<int, double> per_vertex;
        double domain = std::pow(static_cast<double>(pool.size()), d);
        std::unordered_map<std::vector<int>, Defect, VecHash> memo;
        auto add_tuple = [&](const std::vector<int>& q_raw, double weight) {
            std::vector<int> q(q_raw);
            std::sort(q.begin(), q.end());
            q.erase(std::unique(q.begin(), q.end()), q.end());
            auto it = memo.find(q);
            if (it == memo.end()) {
                Defect w = set_defect_in(g, pe, q, g.layout()->part(i), prm.theta).pow(prm.t);
                it = memo.emplace(q, w).first;
            }
            double val = it->second.is_infinite() ? std::numeric_limits<double>::infinity()
                                                  : it->second.to_double();
            for (int v : q)
                per_vertex[v] += weight * val;
        };
        if (domain <= static_cast<double>(prm.exact_cap)) {
            std::vector<std::size_t> odo(static_cast<std::size_t>(d), 0);
            std::vector<int> q;
            while (true) {
                q.clear();
                for (std::size_t a = 0; a < odo.size(); ++a)
                    q.push_back(pool[odo[a]]);
                add_tuple(q, 1.0);
                std::size_t a = 0;
                while (a < odo.size() && ++odo[a] == pool.size()) {
                    odo[a] = 0;
                    ++a;
                }
                if (a == odo.size())
                    break;
            }
        } else {
            diag["sampled"] = true;
            const double scale = domain / static_cast<double>(prm.sample_count);
            std::vector<int> q;
            for (std::uint64_t s = 0; s < prm.sample_count; ++s) {
                q.clear();
                for (int a = 0; a < d; ++a)
                    q.push_back(pool[static_cast<std::size_t>(rng.below(pool.size()))]);
                add_tuple(q, scale);
            }
        }
        for (const auto& [v, sum] : per_vertex)
            if (sum >= threshold)
                r_sets[static_cast<std::size_t>(i)].insert(v);
    }

    std::vector<std::vector<int>> b_sets(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        for (int v : g.layout()->part(j)) {
            bool trimmed = false;
            for (int i = 0; i < k && !trimmed; ++i)
                if (i != j && r_sets[static_cast<std::size_t>(i)].count(v))
                    trimmed = true;
            if (!trimmed)
                b_sets[static_cast<std::size_t>(j)].push_back(v);
        }
    }
    diag["trimmed"] = nlohmann::json::array();
    for (int j = 0; j < k; ++j)
        diag["trimmed"].push_back(g.layout()->part(j).size() - b_sets[static_cast<std::size_t>(j)].size());

    // rational cumulative assignment thresholds q_i = p_i / 2
    std::vector<double> cumulative;
    {
        double acc = 0;
        for (const auto& pi : prm.p) {
            acc += pi.convert_to<double>() / 2.0;
            cumulative.push_back(acc);
        }
    }

    for (int attempt = 1; attempt <= std::max(1, prm.retries); ++attempt) {
        diag["attempts"] = attempt;
        std::vector<std::vector<std::vector<int>>> blocks(
            static_cast<std::size_t>(T),
            std::vector<std::vector<int>>(static_cast<std::size_t>(k)));
        for (int j = 0; j < k; ++j) {
            for (int v : b_sets[static_cast<std::size_t>(j)]) {
                double u = rng.unit();
                for (int i = 0; i < T; ++i) {
                    if (u < cumulative[static_cast<std::size_t>(i)]) {
                        blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].push_back(v);
                        break;
                    }
                }
            }
        }

        // conclusion (i): size window
        bool ok = true;
        std::string why;
        for (int i = 0; i < T && ok; ++i)
            for (int j = 0; j < k && ok; ++j) {
                Rational size(static_cast<long long>(
                    blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].size()));
                Rational aj(static_cast<long long>(g.layout()->part(j).size()));
                if (size * 4 < prm.p[static_cast<std::size_t>(i)] * aj ||
                    size > prm.p[static_cast<std::size_t>(i)] * aj) {
                    ok = false;
                    why = "size window violated at block (" + std::to_string(i) + "," +
                          std::to_string(j) + ")";
                }
            }

        // conclusion (ii): average defect bound over index tuples
        if (ok) {
            std::vector<std::array<int, 2>> all_blocks;
            for (int i = 0; i < T; ++i)
                for (int j = 0; j < k; ++j)
                    all_blocks.push_back({i, j});
            double combos = static_cast<double>(T) * k *
                            std::pow(static_cast<double>(T) * (k - 1), d);
            bool sample_combos = combos > static_cast<double>(prm.exact_cap);
            if (sample_combos)
                diag["sampled"] = true;

            auto check_combo = [&](int i, int j, const std::vector<std::array<int, 2>>& qblocks) {
                std::vector<const std::vector<int>*> pools;
                for (const auto& [ia, ja] : qblocks)
                    pools.push_back(&blocks[static_cast<std::size_t>(ia)][static_cast<std::size_t>(ja)]);
                Rational theta_i = prm.p[static_cast<std::size_t>(i)] * prm.theta / 4;
                detail::MuEstimate mu = detail::mu_over_product(
                    g, pe, pools, blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                    theta_i, prm.t, prm.exact_cap, prm.sample_count, rng);
                if (mu.sampled)
                    diag["sampled"] = true;
                Defect bound;
                if (mu_base[static_cast<std::size_t>(j)].value.is_infinite()) {
                    return true; // degenerate bound
                }
                Rational rhs_mu = Rational(8) * rat_pow(Rational(1) / prm.epsilon, d) *
                                  int_pow(BigInt(k), d) * mu_base[static_cast<std::size_t>(j)].value.value();
                Rational rhs = std::max(prm.epsilon_prime, rhs_mu);
                return !(Defect(rhs) < mu.value);
            };

            if (!sample_combos) {
                for (int i = 0; i < T && ok; ++i)
                    for (int j = 0; j < k && ok; ++j) {
                        // odometer over d choices of (i_a, j_a) with j_a != j
                        std::vector<std::array<int, 2>> choices;
                        for (int ia = 0; ia < T; ++ia)
                            for (int ja = 0; ja < k; ++ja)
                                if (ja != j)
                                    choices.push_back({ia, ja});
                        if (choices.empty())
                            continue;
                        std::vector<std::size_t> odo(static_cast<std::size_t>(d), 0);
                        while (ok) {
                            std::vector<std::array<int, 2>> qblocks;
                            for (std::size_t a = 0; a < odo.size(); ++a)
                                qblocks.push_back(choices[odo[a]]);
                            if (!check_combo(i, j, qblocks)) {
                                ok = false;
                                why = "average defect bound violated";
                            }
                            std::size_t a = 0;
                            while (a < odo.size() && ++odo[a] == choices.size()) {
                                odo[a] = 0;
                                ++a;
                            }
                            if (a == odo.size())
                                break;
                        }
                    }
            } else {
                for (std::uint64_t s = 0; s < prm.sample_count && ok; ++s) {
                    int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(T)));
                    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
                    std::vector<std::array<int, 2>> qblocks;
                    for (int a = 0; a < d; ++a) {
                        int ia = static_cast<int>(rng.below(static_cast<std::uint64_t>(T)));
                        int ja = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
                        while (ja == j)
                            ja = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
                        qblocks.push_back({ia, ja});
                    }
                    if (!check_combo(i, j, qblocks)) {
                        ok = false;
                        why = "average defect bound violated (sampled)";
                    }
                }
            }
        }

        if (ok) {
            res.ok = true;
            res.blocks = std::move(blocks);
            return res;
        }
        diag["last_failure"] = why;
    }
    res.ok = false;
    return res;
}

inline Defect setup_mu_t(const EmbeddingSetup& setup, int x, unsigned t, std::uint64_t cap)
{
    const int part = setup.pattern.layout()->part_of(x);
    if (part == setup.K - 1)
        return Defect::zero(); // last-part vertices carry no defect
    const auto& f = setup.fwd[static_cast<std::size_t>(x)];
    std::vector<const std::vector<int>*> pools;
    for (int u : f)
        pools.push_back(&setup.host.layout()->part(setup.pattern.layout()->part_of(u)));
    PartialEdgeSet pe = PartialEdgeSet::of(setup.host);
    Rng rng(0);
    detail::MuEstimate mu = detail::mu_over_product(
        setup.host, pe, pools, setup.host.layout()->part(part),
        setup.thetas[static_cast<std::size_t>(part)], t, cap, std::min<std::uint64_t>(cap, 10'000),
        rng);
    return mu.value;
}

// Overridable knobs of the end-to-end pipeline. The paper-default
// constants are astronomically small at desk scale, so theta and t are
// usually supplied explicitly; without overrides a run below the
// theta >= 1 threshold fails fast with a "subasymptotic" diagnostic.
struct PipelineOverrides {
    std::optional<Rational> theta;
    std::optional<unsigned> t;          // pruning tuple length, default 16d
    std::optional<unsigned> s_exponent; // condition-check exponent, default 2d
    std::optional<Rational> epsilon;
    std::optional<Rational> epsilon_prime;
    int prune_retries = 8;
    int embed_retries = 16;
    int gpart_retries = 16;
    std::uint64_t exact_cap = 100'000;
    std::uint64_t sample_count = 10'000;
};

struct PipelineRun {
    bool ok = false;
    std::optional<Embedding> embedding; // into the original host
    std::string failed_stage;
    nlohmann::json diagnostics;
};

// h_partition -> simultaneous_prune -> g_partition -> build_setup ->
// random_greedy_embed -> verify, with per-stage diagnostics. Returns a
// verified embedding of H into G or the stage that broke.
inline PipelineRun linear_turan_pipeline(const Hypergraph& g, const Hypergraph& h,
                                         const PipelineOverrides& ov, std::uint64_t seed)
{
    PipelineRun run;
    auto& diag = run.diagnostics;

    const int k = g.uniformity();
    if (h.uniformity() != k) {
        run.failed_stage = "preconditions";
        diag["error"] = "uniformity mismatch";
        return run;
    }
    if (!g.layout() || g.layout()->part_count() != k || !h.layout() ||
        h.layout()->part_count() != k) {
        run.failed_stage = "preconditions";
        diag["error"] = "both sides need k-part layouts";
        return run;
    }
    const std::size_t n = g.layout()->part(0).size();
    for (int i = 1; i < k; ++i)
        if (g.layout()->part(i).size() != n) {
            run.failed_stage = "preconditions";
            diag["error"] = "host parts must have equal sizes";
            return run;
        }

    if (h.edge_count() == 0) {
        // no constraints: any injection embeds
        if (h.vertex_count() > g.vertex_count()) {
            run.failed_stage = "preconditions";
            diag["error"] = "pattern larger than host";
            return run;
        }
        Embedding emb;
        for (int v = 0; v < h.vertex_count(); ++v)
            emb.map.push_back(v);
        run.ok = true;
        run.embedding = emb;
        return run;
    }

    const int d = skeletal_degeneracy(h, 1).value;
    diag["d"] = d;
    const unsigned t = ov.t.value_or(16u * static_cast<unsigned>(d));
    const unsigned s = ov.s_exponent.value_or(2u * static_cast<unsigned>(d));
    diag["t"] = t;
    diag["s"] = s;

    // eta and theta from the default formulas, in log2 space
    const double density = static_cast<double>(g.edge_count()) /
                           std::pow(static_cast<double>(n), static_cast<double>(k));
    const double log2p = std::log2(std::max(density, 1e-300));
    const double exponent =
        4.0 * d / (k - 1) * std::pow(16.0 * d + 1.0, static_cast<double>(k));
    const double log2eta = exponent * log2p - (std::pow(2.0, 4.0 * d) + 1.0) -
                           (4.0 * d + 1.0) * std::log2(static_cast<double>(k));
    diag["log2_eta"] = log2eta;

    Rational theta;
    if (ov.theta) {
        theta = *ov.theta;
    } else {
        const double log2theta = 3.0 * log2eta + std::log2(static_cast<double>(n));
        if (log2theta < 0.0) {
            run.failed_stage = "theta";
            diag["regime"] = "subasymptotic";
            diag["log2_theta"] = log2theta;
            return run;
        }
        theta = rational_from_double(std::exp2(std::min(log2theta, 60.0)));
    }
    diag["theta"] = rational_to_string(theta);

    // pattern refinement
    HPartition hp;
    try {
        hp = h_partition(h, d);
    } catch (const Error& e) {
        run.failed_stage = "h_partition";
        diag["error"] = e.what();
        return run;
    }
    const int T = hp.T;
    diag["T"] = T;

    // pad empty last-level blocks with fresh isolated pattern vertices
    Hypergraph h_ext = h;
    {
        std::vector<std::vector<int>> parts = h.layout()->parts();
        int next = h.vertex_count();
        for (int j = 0; j < k; ++j) {
            if (hp.blocks[static_cast<std::size_t>(T - 1)][static_cast<std::size_t>(j)].empty()) {
                hp.blocks[static_cast<std::size_t>(T - 1)][static_cast<std::size_t>(j)].push_back(next);
                parts[static_cast<std::size_t>(j)].push_back(next);
                ++next;
            }
        }
        if (next != h.vertex_count())
            h_ext = Hypergraph(k, next, h.edges(), PartiteLayout(next, parts));
    }

    // an unlucky tuple draw can kill every edge at once; retry within budget
    SimulPruneResult sp;
    int prune_attempts = 0;
    for (int attempt = 0; attempt < std::max(1, ov.prune_retries); ++attempt) {
        prune_attempts = attempt + 1;
        sp = simultaneous_prune(g, static_cast<int>(t),
                                derive_seed(seed, "prune" + std::to_string(attempt)));
        if (sp.pruned.edge_count() > 0)
            break;
    }
    diag["prune_attempts"] = prune_attempts;
    diag["pruned_edges"] = sp.pruned.edge_count();
    if (sp.pruned.edge_count() == 0) {
        run.failed_stage = "simultaneous_prune";
        diag["error"] = "pruning emptied the host";
        return run;
    }

    // g_partition parameters
    GPartitionParams gp;
    gp.T = T;
    gp.d = 4 * d;
    gp.t = t;
    gp.theta = theta;
    gp.retries = ov.gpart_retries;
    gp.exact_cap = ov.exact_cap;
    gp.sample_count = ov.sample_count;
    {
        // p_i = c 2^{-i/(80d)} normalized to sum to 1 (dyadic approximations)
        double csum = 0;
        for (int i = 1; i <= T; ++i)
            csum += std::exp2(-static_cast<double>(i) / (80.0 * d));
        for (int i = 1; i <= T; ++i)
            gp.p.push_back(rational_from_double(std::exp2(-static_cast<double>(i) / (80.0 * d)) /
                                                csum * (1.0 - 1e-9)));
        const double theta_d = theta.convert_to<double>();
        const double n_d = static_cast<double>(
            std::max<std::size_t>(std::size_t(1), sp.pruned.layout()->part(0).size()));
        gp.epsilon = ov.epsilon ? *ov.epsilon
                                : rational_from_double(std::min(1.0, theta_d / n_d));
        if (gp.epsilon <= 0)
            gp.epsilon = Rational(1, 1000);
        gp.epsilon_prime = ov.epsilon_prime
                               ? *ov.epsilon_prime
                               : rational_from_double(std::max(
                                     1e-12, std::exp2(std::max(-40.0, (34.0 * d / 3.0) *
                                                                    std::log2(std::min(
                                                                        theta_d / n_d, 0.999))))));
    }
    GPartitionResult gpr = g_partition(sp.pruned, gp, derive_seed(seed, "gpartition"));
    diag["g_partition"] = gpr.diagnostics;
    if (!gpr.ok) {
        run.failed_stage = "g_partition";
        return run;
    }

    // hosts and patterns over the lex-ordered blocks
    std::vector<std::vector<int>> host_blocks;
    std::vector<std::vector<int>> pattern_blocks;
    std::vector<Rational> thetas;
    std::vector<int> classes;
    for (int i = 0; i < T; ++i)
        for (int j = 0; j < k; ++j) {
            host_blocks.push_back(gpr.blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            pattern_blocks.push_back(hp.blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            classes.push_back(j);
            if (!(i == T - 1 && j == k - 1))
                thetas.push_back(gp.p[static_cast<std::size_t>(i)] * theta / 4);
        }

    CompactedHypergraph host_cmp = induced_compact(sp.pruned, host_blocks);
    // drop isolated vertices of the restricted host (the Setup forbids them)
    {
        std::vector<std::vector<int>> live_parts;
        for (int p = 0; p < host_cmp.graph.layout()->part_count(); ++p) {
            std::vector<int> part;
            for (int v : host_cmp.graph.layout()->part(p))
                if (!host_cmp.graph.is_isolated(v))
                    part.push_back(v);
            live_parts.push_back(std::move(part));
        }
        CompactedHypergraph trimmed = induced_compact(host_cmp.graph, live_parts);
        std::vector<int> composed;
        for (int v = 0; v < trimmed.graph.vertex_count(); ++v)
            composed.push_back(host_cmp.to_old[static_cast<std::size_t>(
                trimmed.to_old[static_cast<std::size_t>(v)])]);
        host_cmp.graph = std::move(trimmed.graph);
        host_cmp.to_old = std::move(composed);
    }

    Hypergraph pattern_setup(k, h_ext.vertex_count(), h_ext.edges(),
                             PartiteLayout(h_ext.vertex_count(), pattern_blocks));

    EmbeddingSetup setup;
    try {
        setup = build_setup(host_cmp.graph, pattern_setup, {}, thetas, 4 * d, classes);
    } catch (const SetupError& e) {
        run.failed_stage = "build_setup";
        diag["error"] = e.what();
        return run;
    }

    diag["attempts"] = 0;
    for (int attempt = 0; attempt < std::max(1, ov.embed_retries); ++attempt) {
        diag["attempts"] = attempt + 1;
        GreedyRun greedy = random_greedy_embed(setup, derive_seed(seed, "embed" + std::to_string(attempt)));
        bool theta_ok = true;
        for (int i = 0; i + 1 < setup.K && theta_ok; ++i)
            if (setup.thetas[static_cast<std::size_t>(i)] <
                Rational(2 * static_cast<long long>(setup.pattern.layout()->part(i).size())))
                theta_ok = false;
        diag["theta_condition"] = theta_ok;
        if (theta_ok)
            diag["conditions"] = check_embedding_conditions(greedy, setup, s);
        {
            nlohmann::json cases = nlohmann::json::array();
            nlohmann::json defects = nlohmann::json::array();
            for (std::size_t v = 0; v < greedy.psi.size(); ++v) {
                cases.push_back(static_cast<int>(greedy.case_log[v]));
                defects.push_back(greedy.defect_log[v].str());
            }
            diag["case_log"] = cases;
            diag["defect_log"] = defects;
        }
        Embedding cand{greedy.psi, true};
        if (cand.verify(setup.pattern, setup.host)) {
            // map back: setup/pattern ids -> pruned ids -> original ids
            Embedding final_emb;
            final_emb.part_respecting = true;
            bool valid = true;
            for (int v = 0; v < h.vertex_count(); ++v) {
                int img = greedy.psi[static_cast<std::size_t>(v)];
                int pruned_id = host_cmp.to_old[static_cast<std::size_t>(img)];
                int orig = sp.to_old[static_cast<std::size_t>(pruned_id)];
                final_emb.map.push_back(orig);
                if (orig < 0 || orig >= g.vertex_count())
                    valid = false;
            }
            if (valid && final_emb.verify(h, g)) {
                run.ok = true;
                run.embedding = std::move(final_emb);
                return run;
            }
        }
    }
    run.failed_stage = "embed";
    return run;
}

} // namespace skeletal
