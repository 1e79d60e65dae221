#include <catch2/catch_amalgamated.hpp>

#include "skeletal/generators.hpp"
#include "skeletal/oracle.hpp"
#include "skeletal/turan.hpp"

#include "support/naive.hpp"

using namespace skeletal;

TEST_CASE("min degree subhypergraph")
{
    // K^(3)_{2,2,2} with i=1, d=4: the whole skeleton is the 4-core
    Hypergraph h = complete_kpartite({2, 2, 2});
    auto core = min_degree_subhypergraph(h, 1, 4);
    REQUIRE(core.has_value());
    CHECK(core->edge_count() == 12);

    CHECK_FALSE(min_degree_subhypergraph(h, 1, 5).has_value());

    // hedgehog H_3^(3): middle vertices peel away, leaving K_{3,3}
    Hypergraph hero = bipartite_hedgehog(3, 3);
    auto k33 = min_degree_subhypergraph(hero, 1, 3);
    REQUIRE(k33.has_value());
    CHECK(k33->edge_count() == 9);
    for (const auto& e : k33->edges()) {
        CHECK(e[0] < 3);
        CHECK(e[1] >= 3);
        CHECK(e[1] < 6);
    }
}

TEST_CASE("clique lifting step")
{
    // G_1 = K_4 graph, k = 3: the 3-cliques are the four triangles
    std::vector<std::vector<int>> k4;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            k4.push_back({i, j});
    Hypergraph g1(2, 4, k4);
    std::vector<std::vector<int>> cliques;
    detail::enumerate_cliques(g1, 3, [&](const std::vector<int>& c) { cliques.push_back(c); });
    CHECK(cliques.size() == 4);

    // 3-uniform host: 4-sets all of whose triples are edges
    std::vector<std::vector<int>> all;
    detail::for_each_combination(5, 3, [&](const std::vector<int>& e) { all.push_back(e); });
    Hypergraph k53(3, 5, all);
    long long full = 0;
    detail::enumerate_cliques(k53, 4, [&](const std::vector<int>&) { ++full; });
    CHECK(full == 5); // C(5,4)

    all.erase(std::remove(all.begin(), all.end(), std::vector<int>{0, 1, 2}), all.end());
    Hypergraph missing(3, 5, all);
    std::set<std::vector<int>> remaining;
    detail::enumerate_cliques(missing, 4, [&](const std::vector<int>& c) { remaining.insert(c); });
    // the two 4-sets through {0,1,2} are gone
    CHECK(remaining == std::set<std::vector<int>>{{0, 1, 3, 4}, {0, 2, 3, 4}, {1, 2, 3, 4}});
}

TEST_CASE("deletion construction (complete family) produces C4-free graphs")
{
    Hypergraph c4pattern = complete_kpartite({2, 2});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto [g, report] = deletion_construction_complete(2, 2, 16, seed);
        CHECK(report.hfree_verified == VerifyState::Verified);
        CHECK(report.final_edges == report.sampled_edges - report.removed);
        CHECK_FALSE(find_embedding(c4pattern, g).has_value());
    }
}

TEST_CASE("deletion construction tiny regime is H-free")
{
    // p * C(n,k) < 1 regime: usually empty, always H-free
    auto [g, report] = deletion_construction_complete(2, 2, 4, 3);
    CHECK(report.hfree_verified == VerifyState::Verified);
    CHECK(report.regime == "subasymptotic");
}

TEST_CASE("deletion construction (skeletal family)")
{
    Hypergraph h = complete_kpartite({3, 3, 3});
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        auto [g, report] = deletion_construction_skeletal(h, 1, 6, 18, seed);
        CHECK(report.hfree_verified == VerifyState::Verified);
        CHECK(report.final_edges == report.sampled_edges - report.removed);
        // counting step: cliques removed at most C(n, k-r) per removed edge
        long long z = report.clique_count_before - binomial(18, 1) * report.removed;
        CHECK(report.clique_count_after >= z);
    }
    CHECK_THROWS_AS(deletion_construction_skeletal(h, 1, 3, 12, 0), PreconditionError);
    CHECK_THROWS_AS(deletion_construction_skeletal(h, 1, 7, 12, 0), PreconditionError);
}

TEST_CASE("deletion construction i = k-1 removes within H itself")
{
    // i = k-1: F is a subhypergraph of H and the lifting step is the
    // identity on k-uniform hosts, so the output is H-free directly
    Hypergraph h = complete_kpartite({2, 2});
    auto [g, report] = deletion_construction_skeletal(h, 1, 2, 10, 5);
    CHECK(report.hfree_verified == VerifyState::Verified);
    CHECK_FALSE(find_embedding(h, g).has_value());
}
