#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "skeletal/defect.hpp"
#include "skeletal/degeneracy.hpp"
#include "skeletal/generators.hpp"
#include "skeletal/hypergraph.hpp"
#include "skeletal/json_io.hpp"

#include "support/naive.hpp"

using namespace skeletal;

namespace {

Hypergraph single_triple() { return Hypergraph(3, 3, {{0, 1, 2}}); }

std::set<std::vector<int>> edge_set(const Hypergraph& g)
{
    return std::set<std::vector<int>>(g.edges().begin(), g.edges().end());
}

} // namespace

TEST_CASE("hypergraph invariants are enforced")
{
    CHECK_THROWS_AS(Hypergraph(3, 3, {{0, 1}}), ArgumentError);
    CHECK_THROWS_AS(Hypergraph(3, 3, {{0, 1, 3}}), ArgumentError);
    CHECK_THROWS_AS(Hypergraph(3, 3, {{0, 1, 1}}), ArgumentError);
    CHECK_THROWS_AS(Hypergraph(2, 3, {{0, 1}, {1, 0}}), ArgumentError);
    // layout: edge crossing a part twice
    CHECK_THROWS_AS(Hypergraph(2, 4, {{0, 1}}, PartiteLayout(4, {{0, 1}, {2, 3}})), LayoutError);
    // edges are stored sorted regardless of input order
    Hypergraph g(3, 4, {{2, 0, 3}});
    CHECK(g.edges().front() == std::vector<int>{0, 2, 3});
}

TEST_CASE("skeleton of a single 3-edge is a triangle")
{
    Hypergraph tri = skeleton(single_triple(), 1);
    CHECK(tri.uniformity() == 2);
    CHECK(edge_set(tri) == std::set<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("skeleton of K^(3)_{2,2,2} is the complete 3-partite graph")
{
    Hypergraph h = complete_kpartite({2, 2, 2});
    Hypergraph s = skeleton(h, 1);
    CHECK(s.edge_count() == 12); // K_{2,2,2}
    for (const auto& e : s.edges())
        CHECK(h.layout()->part_of(e[0]) != h.layout()->part_of(e[1]));
}

TEST_CASE("skeleton of the hedgehog H_2^(3)")
{
    Hypergraph h = bipartite_hedgehog(3, 2);
    REQUIRE(h.vertex_count() == 8);
    REQUIRE(h.edge_count() == 4);
    Hypergraph s = skeleton(h, 1);
    CHECK(s.vertex_count() == 8);
    CHECK(s.edge_count() == 12);
}

TEST_CASE("skeleton chain idempotence on random instances")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Hypergraph h = naive::random_hypergraph(4, 9, 12, seed);
        for (int j = 1; j < 4; ++j)
            for (int i = 1; i <= j; ++i) {
                Hypergraph direct = skeleton(h, i);
                Hypergraph chained = skeleton(skeleton(h, j), i);
                CHECK(edge_set(direct) == edge_set(chained));
            }
    }
}

TEST_CASE("skeleton matches the naive enumeration")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Hypergraph h = naive::random_hypergraph(3, 8, 10, seed);
        auto ours = edge_set(skeleton(h, 1));
        auto theirs = naive::skeleton_edges(h, 1);
        CHECK(ours == std::set<std::vector<int>>(theirs.begin(), theirs.end()));
    }
}

TEST_CASE("partial edges")
{
    CHECK(partial_edges(Hypergraph(3, 5, {})).size() == 0);
    PartialEdgeSet pe = partial_edges(single_triple());
    CHECK(pe.size() == 8); // powerset of one edge
    CHECK(pe.contains_empty());
    CHECK(pe.contains({0, 1, 2}));

    Hypergraph two(2, 4, {{0, 1}, {2, 3}});
    PartialEdgeSet pe2 = partial_edges(two);
    CHECK(pe2.size() == 7); // empty set, four singletons, two pairs

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Hypergraph h = naive::random_hypergraph(3, 7, 8, seed);
        auto ours = partial_edges(h);
        auto theirs = naive::partial_edges(h);
        REQUIRE(ours.size() == theirs.size());
        for (const auto& m : theirs)
            CHECK(ours.contains(m));
        // downward closure
        for (const auto& m : ours.members())
            for (std::size_t drop = 0; drop < m.size(); ++drop) {
                std::vector<int> sub;
                for (std::size_t i = 0; i < m.size(); ++i)
                    if (i != drop)
                        sub.push_back(m[i]);
                CHECK(ours.contains(sub));
            }
    }
}

TEST_CASE("pe_restricted")
{
    Hypergraph g = single_triple();
    PartialEdgeSet empty_q = pe_restricted(g, {});
    CHECK(empty_q.size() == 1);
    CHECK(empty_q.contains_empty());

    PartialEdgeSet full = pe_restricted(g, {0, 1, 2});
    CHECK(full.size() == 8);

    // Q of two vertices spanning no pair-edge: empty set plus singletons
    Hypergraph two(2, 4, {{0, 1}, {2, 3}});
    PartialEdgeSet q = pe_restricted(two, {0, 2});
    CHECK(q.size() == 3);
    CHECK(q.contains({0}));
    CHECK(q.contains({2}));

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Hypergraph h = naive::random_hypergraph(3, 7, 8, seed);
        std::vector<int> all;
        for (int v = 0; v < h.vertex_count(); ++v)
            all.push_back(v);
        CHECK(pe_restricted(h, all).size() == partial_edges(h).size());
    }
}

TEST_CASE("common neighborhood")
{
    Hypergraph g = single_triple();
    PartialEdgeSet fam;
    fam.insert({0});
    fam.insert({1});
    CHECK(common_neighborhood(g, fam) == std::vector<int>{2});

    // the family containing only the empty set: all non-isolated vertices
    Hypergraph h(3, 5, {{0, 1, 2}});
    PartialEdgeSet just_empty;
    just_empty.insert({});
    CHECK(common_neighborhood(h, just_empty) == std::vector<int>{0, 1, 2});

    PartialEdgeSet too_big;
    too_big.insert({0, 1, 2});
    CHECK_THROWS_AS(common_neighborhood(h, too_big), SizeError);

    // definition replay on random instances
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        Hypergraph r = naive::random_hypergraph(3, 8, 10, seed);
        PartialEdgeSet pe = partial_edges(r);
        // pick a couple of small members as the family
        std::vector<std::vector<int>> family;
        for (const auto& m : pe.sorted_members())
            if (m.size() == 1 || m.size() == 2) {
                family.push_back(m);
                if (family.size() == 2)
                    break;
            }
        if (family.empty())
            continue;
        PartialEdgeSet famset;
        for (const auto& f : family)
            famset.insert(f);
        CHECK(common_neighborhood(r, famset) == naive::common_neighborhood(r, family));
    }
}

TEST_CASE("common neighborhood is antitone in the family")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Hypergraph r = naive::random_hypergraph(3, 8, 12, seed);
        auto members = partial_edges(r).sorted_members();
        PartialEdgeSet small, big;
        int added = 0;
        for (const auto& m : members) {
            if (m.size() >= 1 && m.size() <= 2) {
                big.insert(m);
                if (added < 1)
                    small.insert(m);
                ++added;
                if (added == 3)
                    break;
            }
        }
        if (added < 2)
            continue;
        auto ns = common_neighborhood(r, small);
        auto nb = common_neighborhood(r, big);
        for (int v : nb)
            CHECK(std::find(ns.begin(), ns.end(), v) != ns.end());
    }
}

TEST_CASE("degeneracy certificates")
{
    // path P_4
    Hypergraph p4(2, 4, {{0, 1}, {1, 2}, {2, 3}});
    auto cert = degeneracy(p4);
    CHECK(cert.value == 1);
    CHECK(verify_degeneracy_order(p4, cert.order, cert.value));
    CHECK(verify_degeneracy_witness(p4, cert.witness, cert.value));

    // K_5
    std::vector<std::vector<int>> k5;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            k5.push_back({i, j});
    Hypergraph k5g(2, 5, k5);
    CHECK(degeneracy(k5g).value == 4);

    // K_4^(3): all triples of 4 vertices
    std::vector<std::vector<int>> t;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            for (int c = b + 1; c < 4; ++c)
                t.push_back({a, b, c});
    Hypergraph k43(3, 4, t);
    auto c43 = degeneracy(k43);
    CHECK(c43.value == 3);
    CHECK(c43.witness.size() == 4);

    // duality on random instances: witness min degree = value = max closed count
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Hypergraph h = naive::random_hypergraph(3, 9, 14, seed);
        auto c = degeneracy(h);
        CHECK(verify_degeneracy_order(h, c.order, c.value));
        CHECK(verify_degeneracy_witness(h, c.witness, c.value));
        if (c.value > 0) {
            // both sides are tight: the order closes exactly value edges
            // somewhere, and the witness min degree is exactly value
            CHECK_FALSE(verify_degeneracy_order(h, c.order, c.value - 1));
            CHECK_FALSE(verify_degeneracy_witness(h, c.witness, c.value + 1));
        }
    }
}

TEST_CASE("skeletal degeneracy closed forms")
{
    CHECK(skeletal_degeneracy(complete_kpartite({2, 2, 2}), 1).value == 4);
    CHECK(skeletal_degeneracy(bipartite_hedgehog(4, 3), 3).value == 1);
    CHECK(skeletal_degeneracy(bipartite_hedgehog(3, 4), 1).value == 4);
    CHECK_THROWS_AS(skeletal_degeneracy(single_triple(), 0), IndexError);
    CHECK_THROWS_AS(skeletal_degeneracy(single_triple(), 3), IndexError);
}

TEST_CASE("skeletal degeneracy sandwich")
{
    // d_1 <= d_max <= ceil(d_1^{k-1} / (k-1)!)
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        int k = 2 + static_cast<int>(seed % 3);
        Hypergraph h = naive::random_hypergraph(k, 10, 14, seed);
        int d1 = skeletal_degeneracy(h, 1).value;
        int dmax = max_skeletal_degeneracy(h);
        CHECK(d1 <= dmax);
        long long num = 1, den = 1;
        for (int i = 0; i < k - 1; ++i) {
            num *= d1;
            den *= (i + 1);
        }
        CHECK(dmax <= (num + den - 1) / den);
    }
}

TEST_CASE("simultaneous ordering trace bound")
{
    // single k-edge: any ordering closes at most one trace per vertex
    Hypergraph one = single_triple();
    auto ord1 = simultaneous_ordering(one);
    for (long long c : trace_counts_along_order(one, ord1))
        CHECK(c <= 9 * (3 - 1));

    Hypergraph k222 = complete_kpartite({2, 2, 2});
    auto ord = simultaneous_ordering(k222);
    long long bound = 9LL * max_skeletal_degeneracy(k222);
    CHECK(bound == 36);
    for (long long c : trace_counts_along_order(k222, ord))
        CHECK(c <= bound);

    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        Hypergraph h = naive::random_hypergraph(3, 10, 20, seed);
        auto o = simultaneous_ordering(h);
        long long b = 9LL * max_skeletal_degeneracy(h);
        for (long long c : trace_counts_along_order(h, o))
            CHECK(c <= b);
    }
}

TEST_CASE("edge count bound")
{
    CHECK(edge_count_bound_check(single_triple()));
    CHECK(edge_count_bound_check(complete_kpartite({2, 2, 2})));
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        int k = 2 + static_cast<int>(seed % 3);
        Hypergraph h = naive::random_hypergraph(k, 12, 20, seed);
        CHECK(edge_count_bound_check(h));
    }
}

TEST_CASE("json round trip and diagnostics")
{
    Hypergraph h = complete_kpartite({2, 3});
    json j = to_json(h);
    Hypergraph back = hypergraph_from_json(j);
    CHECK(back == h);
    CHECK(back.layout().has_value());

    json bad = j;
    bad["edges"].push_back(bad["edges"][0]);
    auto diags = validate_hypergraph_json(bad);
    REQUIRE_FALSE(diags.empty());
    CHECK(diags.front().path.find("edges[") == 0);
    CHECK(diags.front().message == "duplicate edge");

    json unsorted = j;
    unsorted["edges"][0] = std::vector<int>{3, 0};
    diags = validate_hypergraph_json(unsorted);
    REQUIRE_FALSE(diags.empty());

    // edge crossing a part twice under a partite declaration
    json crossing;
    crossing["k"] = 2;
    crossing["n"] = 4;
    crossing["parts"] = std::vector<std::vector<int>>{{0, 1}, {2, 3}};
    crossing["edges"] = std::vector<std::vector<int>>{{0, 1}};
    diags = validate_hypergraph_json(crossing);
    REQUIRE_FALSE(diags.empty());
    CHECK(diags.front().message.find("twice") != std::string::npos);
}
