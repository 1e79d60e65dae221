#include <catch2/catch_amalgamated.hpp>

#include "skeletal/generators.hpp"
#include "skeletal/oracle.hpp"

#include "support/naive.hpp"

using namespace skeletal;

namespace {

Hypergraph triangle() { return Hypergraph(2, 3, {{0, 1}, {0, 2}, {1, 2}}); }

Hypergraph four_cycle() { return Hypergraph(2, 4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

Hypergraph complete_graph(int n)
{
    std::vector<std::vector<int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            e.push_back({i, j});
    return Hypergraph(2, n, e);
}

Hypergraph path(int n)
{
    std::vector<std::vector<int>> e;
    for (int i = 0; i + 1 < n; ++i)
        e.push_back({i, i + 1});
    return Hypergraph(2, n, e);
}

} // namespace

TEST_CASE("find_embedding basics")
{
    Hypergraph edge(3, 3, {{0, 1, 2}});
    Hypergraph host(3, 5, {{1, 2, 4}});
    auto emb = find_embedding(edge, host);
    REQUIRE(emb.has_value());
    CHECK(emb->verify(edge, host));

    CHECK(find_embedding(four_cycle(), complete_graph(4)).has_value());
    CHECK_FALSE(find_embedding(triangle(), four_cycle()).has_value());
    CHECK_THROWS_AS(find_embedding(edge, complete_graph(4)), UniformityError);
}

TEST_CASE("find_embedding respects parts")
{
    Hypergraph pattern(2, 2, {{0, 1}}, PartiteLayout(2, {{0}, {1}}));
    // host edge goes from part 1 to part 0 only
    Hypergraph host(2, 4, {{1, 2}}, PartiteLayout(4, {{0, 1}, {2, 3}}));
    auto emb = find_embedding(pattern, host, true);
    REQUIRE(emb.has_value());
    CHECK(emb->map[0] == 1);
    CHECK(emb->map[1] == 2);
    CHECK(emb->verify(pattern, host));
}

TEST_CASE("find_embedding agrees with the all-injections oracle")
{
    Hypergraph pattern = complete_kpartite({2, 2, 2});
    int found_count = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Hypergraph host = erdos_renyi(3, 8, 0.3, seed);
        bool ours = find_embedding(pattern, host).has_value();
        bool theirs = naive::embeds_by_injection(pattern, host);
        CHECK(ours == theirs);
        if (ours)
            ++found_count;
    }
    // sanity: the sweep should not be vacuous in either direction
    CHECK(found_count < 100);
}

TEST_CASE("brute force turan values")
{
    Hypergraph single(2, 2, {{0, 1}});
    CHECK(brute_force_turan(4, single).value == 0);

    // Mantel: ex(n, K_3) = floor(n^2/4)
    CHECK(brute_force_turan(4, triangle()).value == 4);
    CHECK(brute_force_turan(5, triangle()).value == 6);
    TuranResult r6 = brute_force_turan(6, triangle());
    CHECK(r6.value == 9);
    CHECK(r6.exhaustive);
    CHECK_FALSE(find_embedding(triangle(), r6.witness).has_value());

    CHECK(brute_force_turan(4, four_cycle()).value == 4);

    // monotone in n
    CHECK(brute_force_turan(3, triangle()).value <= brute_force_turan(4, triangle()).value);

    // cap behavior
    CHECK_THROWS_AS(brute_force_turan(9, triangle()), ArgumentError);
    TuranResult capped = brute_force_turan(6, triangle(), std::uint64_t(50));
    CHECK_FALSE(capped.exhaustive);
    CHECK(capped.value <= 9);
}

TEST_CASE("brute force ramsey")
{
    Hypergraph single3(3, 3, {{0, 1, 2}});
    RamseyResult r = brute_force_ramsey(single3, 2, 6);
    REQUIRE(r.value.has_value());
    CHECK(*r.value == 3);

    RamseyResult p3 = brute_force_ramsey(path(3), 2, 5);
    REQUIRE(p3.value.has_value());
    CHECK(*p3.value == 3);

    RamseyResult k3 = brute_force_ramsey(triangle(), 2, 6);
    REQUIRE(k3.value.has_value());
    CHECK(*k3.value == 6);
    REQUIRE(k3.witness.has_value());
    // the failing witness at N = 5 has no monochromatic triangle and both
    // color classes 2-regular (the pentagon coloring)
    const EdgeColoring& w = *k3.witness;
    CHECK(w.N == 5);
    CHECK_FALSE(find_monochromatic_copy(w, triangle()).has_value());
    for (int c = 0; c < 2; ++c) {
        Hypergraph cls = w.color_class(c);
        for (int v = 0; v < 5; ++v)
            CHECK(cls.degree(v) == 2);
    }

    RamseyResult unknown = brute_force_ramsey(triangle(), 2, 5);
    CHECK_FALSE(unknown.value.has_value());
    CHECK(unknown.n_max == 5);
    REQUIRE(unknown.witness.has_value());
}

TEST_CASE("find monochromatic copy")
{
    // single color: anything embeddable is found in color 0
    EdgeColoring mono(4, 2, 1, std::vector<int>(6, 0));
    auto hit = find_monochromatic_copy(mono, triangle());
    REQUIRE(hit.has_value());
    CHECK(hit->first == 0);
    CHECK(hit->second.verify(triangle(), mono.color_class(0)));

    // pentagon coloring of K_5 has no monochromatic triangle
    std::vector<int> colors(10, 1);
    std::vector<std::vector<int>> cycle{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}};
    for (const auto& e : cycle)
        colors[static_cast<std::size_t>(detail::subset_rank(e, 5))] = 0;
    EdgeColoring pentagon(5, 2, 2, colors);
    CHECK_FALSE(find_monochromatic_copy(pentagon, triangle()).has_value());

    // random 2-colorings of K_6 always contain a monochromatic triangle
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        EdgeColoring f = EdgeColoring::random(6, 2, 2, seed);
        auto found = find_monochromatic_copy(f, triangle());
        REQUIRE(found.has_value());
        CHECK(found->second.verify(triangle(), f.color_class(found->first)));
    }
}

TEST_CASE("subset rank and unrank are inverse")
{
    const int N = 9, k = 3;
    for (long long r = 0; r < binomial(N, k); ++r) {
        auto s = detail::subset_unrank(r, N, k);
        CHECK(detail::subset_rank(s, N) == r);
        CHECK(std::is_sorted(s.begin(), s.end()));
    }
}
