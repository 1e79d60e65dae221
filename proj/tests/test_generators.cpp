#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "skeletal/degeneracy.hpp"
#include "skeletal/generators.hpp"

#include "support/naive.hpp"
#include "support/stats.hpp"

using namespace skeletal;

TEST_CASE("complete k-partite")
{
    Hypergraph one = complete_kpartite({1, 1, 1});
    CHECK(one.edge_count() == 1);
    CHECK(one.vertex_count() == 3);

    Hypergraph k222 = complete_kpartite({2, 2, 2});
    CHECK(k222.edge_count() == 8);
    CHECK(skeletal_degeneracy(k222, 1).value == 4);

    Hypergraph k23 = complete_kpartite({2, 3});
    CHECK(k23.edge_count() == 6);

    CHECK_THROWS_AS(complete_kpartite({}), ArgumentError);
    CHECK_THROWS_AS(complete_kpartite({2}), ArgumentError);
    CHECK_THROWS_AS(complete_kpartite({2, 0}), ArgumentError);
}

TEST_CASE("bipartite hedgehog")
{
    Hypergraph h32 = bipartite_hedgehog(3, 2);
    CHECK(h32.vertex_count() == 8);
    CHECK(h32.edge_count() == 4);
    CHECK(h32.layout()->part_count() == 3);

    // k = 2 degenerates to K_{d,d}
    Hypergraph h2 = bipartite_hedgehog(2, 3);
    Hypergraph kdd = complete_kpartite({3, 3});
    CHECK(std::set<std::vector<int>>(h2.edges().begin(), h2.edges().end()) ==
          std::set<std::vector<int>>(kdd.edges().begin(), kdd.edges().end()));

    Hypergraph h43 = bipartite_hedgehog(4, 3);
    CHECK(h43.vertex_count() == 2 * 3 + 2 * 9);
    CHECK(skeletal_degeneracy(h43, 3).value == 1);
    CHECK(skeletal_degeneracy(h43, 1).value == 3);

    CHECK_THROWS_AS(bipartite_hedgehog(1, 2), ArgumentError);
}

TEST_CASE("erdos renyi extremes and determinism")
{
    CHECK(erdos_renyi(3, 10, 0.0, 7).edge_count() == 0);
    CHECK(erdos_renyi(3, 10, 1.0, 7).edge_count() == binomial(10, 3));
    CHECK(erdos_renyi(3, 12, 0.4, 42).edges() == erdos_renyi(3, 12, 0.4, 42).edges());
    CHECK(erdos_renyi(3, 12, 0.4, 42).edges() != erdos_renyi(3, 12, 0.4, 43).edges());
}

TEST_CASE("erdos renyi edge count concentration", "[statistical]")
{
    // statistical: mean edge count over 200 seeds within 4 standard errors
    const long long total = binomial(30, 3);
    std::vector<double> counts;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
        counts.push_back(static_cast<double>(erdos_renyi(3, 30, 0.5, seed).edge_count()));
    double expect = 0.5 * static_cast<double>(total);
    double sigma = std::sqrt(static_cast<double>(total) * 0.25);
    double se = sigma / std::sqrt(200.0);
    CHECK(std::abs(teststats::mean(counts) - expect) <= 4.0 * se);
}

TEST_CASE("latin squares")
{
    LatinSquare cyc = LatinSquare::cyclic(4);
    CHECK(cyc.valid());
    LatinSquare rnd = LatinSquare::random(5, 11);
    CHECK(rnd.valid());

    Hypergraph h1 = latin_square_hypergraph(LatinSquare::cyclic(1));
    CHECK(h1.edge_count() == 1);

    LatinSquare l2;
    l2.d = 2;
    l2.cells = {{0, 1}, {1, 0}};
    Hypergraph h2 = latin_square_hypergraph(l2);
    CHECK(h2.edge_count() == 4);
    // 1-skeleton is K_{2,2,2}, so d_1 = 4; ordinary degeneracy is 2
    CHECK(skeletal_degeneracy(h2, 1).value == 4);
    CHECK(skeletal_degeneracy(h2, 2).value == 2);

    // linearity: any two vertices lie in at most one common edge
    Hypergraph h3 = latin_square_hypergraph(LatinSquare::cyclic(3));
    CHECK(h3.edge_count() == 9);
    for (int u = 0; u < h3.vertex_count(); ++u)
        for (int v = u + 1; v < h3.vertex_count(); ++v) {
            int common = 0;
            for (const auto& e : h3.edges())
                if (std::binary_search(e.begin(), e.end(), u) &&
                    std::binary_search(e.begin(), e.end(), v))
                    ++common;
            CHECK(common <= 1);
        }
}

TEST_CASE("augment with anchors")
{
    Hypergraph one = complete_kpartite({1, 1, 1});
    Hypergraph anchored = augment_with_anchors(one);
    CHECK(anchored.vertex_count() == 6);
    CHECK(anchored.edge_count() == 8); // 2^3 substitution patterns of a single edge

    // K^(2)_{2,2}: substitution patterns collide beyond the full-anchor
    // edge because distinct edges share (k-1)-subsets; enumeration gives 9
    Hypergraph k22 = complete_kpartite({2, 2});
    Hypergraph a22 = augment_with_anchors(k22);
    CHECK(a22.vertex_count() == 6);
    CHECK(a22.edge_count() == 9);

    // d_1(anchored) <= d_1(H) + k on random partite instances
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Hypergraph h = naive::random_partite(3, 3, 0.5, seed);
        if (h.edge_count() == 0)
            continue;
        Hypergraph a = augment_with_anchors(h);
        CHECK(skeletal_degeneracy(a, 1).value <= skeletal_degeneracy(h, 1).value + 3);
    }

    CHECK_THROWS_AS(augment_with_anchors(Hypergraph(2, 2, {{0, 1}})), LayoutError);
}

TEST_CASE("lift to uniformity")
{
    Hypergraph tri(3, 3, {{0, 1, 2}});
    std::vector<int> coloring{0, 1, 2};
    Hypergraph same = lift_to_uniformity(tri, 3, coloring);
    CHECK(same.edge_count() == 1);
    CHECK(same.vertex_count() == 3);

    Hypergraph four = lift_to_uniformity(tri, 4, coloring);
    CHECK(four.uniformity() == 4);
    CHECK(four.vertex_count() == 4);
    CHECK(four.edge_count() == 1);

    // K_{2,2} lifted to 3-uniform: one auxiliary per edge, d_1 unchanged
    Hypergraph k22 = complete_kpartite({2, 2});
    std::vector<int> col{0, 0, 1, 1};
    Hypergraph lifted = lift_to_uniformity(k22, 3, col);
    CHECK(lifted.vertex_count() == 8);
    CHECK(lifted.edge_count() == 4);
    CHECK(skeletal_degeneracy(lifted, 1).value == 2);

    // restriction of lifted edges to original vertices reproduces the
    // original edges
    std::set<std::vector<int>> traces;
    for (const auto& e : lifted.edges()) {
        std::vector<int> t;
        for (int v : e)
            if (v < k22.vertex_count())
                t.push_back(v);
        traces.insert(t);
    }
    CHECK(traces == std::set<std::vector<int>>(k22.edges().begin(), k22.edges().end()));

    // improper colorings are rejected
    CHECK_THROWS_AS(lift_to_uniformity(k22, 3, std::vector<int>{0, 0, 0, 1}), ColoringError);
}

TEST_CASE("random equipartition")
{
    // complete K_6^(3) into 3 parts of 2: always 8 transversal edges
    std::vector<std::vector<int>> all;
    detail::for_each_combination(6, 3, [&](const std::vector<int>& e) { all.push_back(e); });
    Hypergraph k63(3, 6, all);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto [g, layout] = random_equipartition(k63, 3, seed);
        CHECK(g.edge_count() == 8);
        CHECK(layout.part_count() == 3);
    }

    CHECK(random_equipartition(Hypergraph(3, 6, {}), 3, 1).first.edge_count() == 0);
    CHECK_THROWS_AS(random_equipartition(k63, 4, 1), ArgumentError);

    // statistical: expected retained fraction k!(n/k)^k / (n)_k over 500 seeds
    Hypergraph host = naive::random_hypergraph(3, 12, 120, 5);
    const double frac = 6.0 * 64.0 / (12.0 * 11.0 * 10.0);
    std::vector<double> retained;
    for (std::uint64_t seed = 0; seed < 500; ++seed)
        retained.push_back(
            static_cast<double>(random_equipartition(host, 3, seed).first.edge_count()));
    double expect = frac * static_cast<double>(host.edge_count());
    CHECK(std::abs(teststats::mean(retained) - expect) <= 0.05 * expect);
}

TEST_CASE("generator outputs validate")
{
    for (const Hypergraph& g :
         {complete_kpartite({2, 3, 2}), bipartite_hedgehog(4, 2), erdos_renyi(3, 10, 0.5, 3),
          latin_square_hypergraph(LatinSquare::cyclic(3))}) {
        for (const auto& e : g.edges()) {
            CHECK(static_cast<int>(e.size()) == g.uniformity());
            CHECK(std::is_sorted(e.begin(), e.end()));
        }
        if (g.layout())
            for (const auto& e : g.edges()) {
                std::set<int> parts;
                for (int v : e)
                    parts.insert(g.layout()->part_of(v));
                CHECK(static_cast<int>(parts.size()) == g.uniformity());
            }
    }
}
