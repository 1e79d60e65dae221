#include <catch2/catch_amalgamated.hpp>

#include "skeletal/defect.hpp"
#include "skeletal/generators.hpp"

#include "support/naive.hpp"

using namespace skeletal;

TEST_CASE("omega piecewise values")
{
    CHECK(omega_theta(0, Rational(10)).is_infinite());
    CHECK(omega_theta(5, Rational(10)) == Defect(Rational(2)));
    CHECK(omega_theta(10, Rational(10)).is_zero());
    CHECK(omega_theta(11, Rational(10)).is_zero());
    CHECK(omega_theta(3, Rational(7, 2)) == Defect(Rational(7, 6)));
    CHECK_THROWS_AS(omega_theta(3, Rational(0)), ArgumentError);
    CHECK_THROWS_AS(omega_theta(-1, Rational(2)), ArgumentError);
}

TEST_CASE("omega is non-increasing and scale invariant")
{
    const Rational theta(17, 3);
    Defect prev = Defect::infinity();
    for (long long x = 0; x <= 10; ++x) {
        Defect cur = omega_theta(x, theta);
        CHECK(cur <= prev);
        prev = cur;
    }
    // omega_{c theta}(c x) = omega_theta(x) for integer c > 0 and integral cx
    for (long long x = 1; x <= 8; ++x)
        for (long long c = 1; c <= 4; ++c)
            CHECK(omega_theta(c * x, Rational(c) * Rational(5)) == omega_theta(x, Rational(5)));
    // finite nonzero values always exceed 1
    for (long long x = 1; x < 6; ++x) {
        Defect w = omega_theta(x, Rational(6));
        if (!w.is_zero())
            CHECK(Defect(Rational(1)) < w);
    }
}

TEST_CASE("defect arithmetic is exact and absorbing")
{
    Defect inf = Defect::infinity();
    Defect two(Rational(2));
    CHECK((inf + two).is_infinite());
    CHECK((two + two) == Defect(Rational(4)));
    CHECK(inf.pow(5).is_infinite());
    CHECK(two.pow(10) == Defect(Rational(1024)));
    CHECK(Defect(Rational(3, 2)).pow(3) == Defect(Rational(27, 8)));
    CHECK(two < inf);
    CHECK(two.divided_by(Rational(4)) == Defect(Rational(1, 2)));
}

TEST_CASE("set defect on complete hosts and full edges")
{
    Hypergraph g = complete_kpartite({4, 4, 4});
    // complete host: common neighborhood of a cross pair is the whole part
    CHECK(set_defect(g, {4, 8}, 0, Rational(4)).is_zero());
    CHECK(set_defect(g, {4, 8}, 0, Rational(5)) == Defect(Rational(5, 4)));
    // Q must avoid the target part
    CHECK_THROWS_AS(set_defect(g, {0}, 0, Rational(2)), ArgumentError);

    // Q containing a full edge has no extension: needs K > k parts so the
    // target part can avoid Q
    Hypergraph three(2, 6, {{0, 2}, {2, 4}, {0, 4}},
                     PartiteLayout(6, {{0, 1}, {2, 3}, {4, 5}}));
    CHECK(set_defect(three, {2, 4}, 0, Rational(2)).is_infinite());
}

TEST_CASE("set defect against the naive reimplementation")
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Hypergraph g = naive::random_partite(2, 6, 0.55, seed);
        Rng rng(seed + 1000);
        std::vector<int> q;
        int qsize = 1 + rng.below_int(3);
        const auto& pool = g.layout()->part(1);
        for (int i = 0; i < qsize; ++i)
            q.push_back(pool[static_cast<std::size_t>(rng.below(pool.size()))]);
        std::sort(q.begin(), q.end());
        q.erase(std::unique(q.begin(), q.end()), q.end());
        Rational theta(1 + rng.below_int(8), 1 + rng.below_int(3));
        CHECK(set_defect(g, q, 0, theta) == naive::set_defect(g, q, 0, theta));
    }
}

TEST_CASE("set defect is monotone under set inclusion")
{
    int checked = 0;
    for (std::uint64_t seed = 0; checked < 500; ++seed) {
        Hypergraph g = naive::random_partite(3, 4, 0.5, seed);
        Rng rng(seed + 77);
        const auto& p1 = g.layout()->part(1);
        const auto& p2 = g.layout()->part(2);
        std::vector<int> small{p1[static_cast<std::size_t>(rng.below(p1.size()))]};
        std::vector<int> big(small);
        big.push_back(p2[static_cast<std::size_t>(rng.below(p2.size()))]);
        std::sort(big.begin(), big.end());
        Rational theta(3 + rng.below_int(5));
        CHECK(set_defect(g, small, 0, theta) <= set_defect(g, big, 0, theta));
        ++checked;
    }
}

TEST_CASE("average defect")
{
    Hypergraph g = complete_kpartite({3, 3});
    std::vector<VertexSet> qs{{3}, {4}, {5}};
    CHECK(average_defect(g, qs, 0, Rational(3), 2).is_zero());
    CHECK_THROWS_AS(average_defect(g, {}, 0, Rational(3), 2), ArgumentError);

    // one infinite member forces an infinite average
    Hypergraph sparse(2, 6, {{0, 2}, {2, 4}, {0, 4}},
                      PartiteLayout(6, {{0, 1}, {2, 3}, {4, 5}}));
    std::vector<VertexSet> mix{{2}, {2, 4}};
    CHECK(average_defect(sparse, mix, 0, Rational(2), 1).is_infinite());

    // matches an independent sum of naive defects
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Hypergraph r = naive::random_partite(2, 6, 0.5, seed);
        std::vector<VertexSet> tuples;
        for (int v : r.layout()->part(1))
            tuples.push_back({v});
        Defect ours = average_defect(r, tuples, 0, Rational(4), 2);
        Defect sum = Defect::zero();
        for (const auto& q : tuples)
            sum += naive::set_defect(r, q, 0, Rational(4)).pow(2);
        CHECK(ours == sum.divided_by(Rational(static_cast<long long>(tuples.size()))));
    }
}

TEST_CASE("defect lower bound check holds on random instances")
{
    int checked = 0;
    for (std::uint64_t seed = 0; checked < 200; ++seed) {
        Hypergraph g = naive::random_partite(2, 5, 0.6, seed);
        std::vector<VertexSet> tuples;
        for (int v : g.layout()->part(1))
            tuples.push_back({v});
        Rng rng(seed);
        Rational theta(1 + rng.below_int(6));
        CHECK(defect_lower_bound_check(g, tuples, 0, theta, 1 + rng.below_int(3)));
        ++checked;
    }
}

TEST_CASE("defect moment sum")
{
    // complete host: all defects 0
    Hypergraph g = complete_kpartite({3, 3});
    CHECK(defect_moment_sum(g, 0, 1, Rational(3), 2).is_zero());

    // matches the straightforward tuple sum on a random host
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Hypergraph r = naive::random_partite(2, 6, 0.5, seed);
        Defect ours = defect_moment_sum(r, 0, 2, Rational(3), 2);
        Defect expect = Defect::zero();
        const auto& pool = r.layout()->part(1);
        for (int a : pool)
            for (int b : pool) {
                std::vector<int> q{a, b};
                std::sort(q.begin(), q.end());
                q.erase(std::unique(q.begin(), q.end()), q.end());
                expect += naive::set_defect(r, q, 0, Rational(3)).pow(2);
                if (expect.is_infinite())
                    break;
            }
        CHECK(ours == expect);
    }

    CHECK_THROWS_AS(defect_moment_sum(complete_kpartite({30, 30}), 0, 8, Rational(3), 2),
                    BudgetExceeded);
}
