#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "mhd/core.hpp"

using namespace mhd;

TEST_CASE("product space encodes and decodes every alternative") {
    for (auto sizes : {std::vector<int>{3, 2}, {2, 2, 2}, {4, 3}}) {
        ProductSpace space(sizes);
        int expected = 1;
        for (int k : sizes) expected *= k;
        CHECK(space.alt_count() == expected);
        for (int idx = 0; idx < space.alt_count(); ++idx) {
            Alt a = space.decode(idx);
            CHECK(space.encode(a) == idx);
        }
        // row-major: component 0 most significant
        CHECK(space.decode(0) == Alt(sizes.size(), 0));
        CHECK(space.decode(space.alt_count() - 1)[0] == sizes[0] - 1);
    }
}

TEST_CASE("product space rejects bad shapes and indices") {
    CHECK_THROWS_AS(ProductSpace({3}), InputError);
    CHECK_THROWS_AS(ProductSpace({3, 1}), InputError);
    ProductSpace space({3, 2});
    CHECK_THROWS_AS(space.decode(6), InputError);
    CHECK_THROWS_AS(space.decode(-1), InputError);
    CHECK_THROWS_AS(space.encode({3, 0}), InputError);
    CHECK_THROWS_AS(space.encode({0, 0, 0}), InputError);
    CHECK_THROWS_AS(space.size(2), InputError);
}

TEST_CASE("preference construction validates permutations") {
    ProductSpace space({2, 2});
    CHECK_THROWS_AS(Preference::from_ranking(space, {0, 1, 2}), InputError);
    CHECK_THROWS_AS(Preference::from_ranking(space, {0, 1, 2, 2}), InputError);
    CHECK_THROWS_AS(Preference::from_ranking(space, {0, 1, 2, 4}), InputError);
    auto p = Preference::from_ranking(space, {2, 0, 3, 1});
    CHECK(p.peak() == 2);
    CHECK(p.rank_of(3) == 2);
    CHECK(p.prefers(0, 1));
    CHECK(!p.prefers(1, 0));
}

TEST_CASE("reversal is an involution and flips every comparison") {
    ProductSpace space({3, 2});
    std::vector<int> ranking(6);
    std::iota(ranking.begin(), ranking.end(), 0);
    do {
        auto p = Preference::from_ranking(space, ranking);
        auto r = p.reversed();
        CHECK(r.reversed() == p);
        CHECK(is_complete_reversal(p, r));
        CHECK(is_complete_reversal(r, p));
        for (int a = 0; a < 6; ++a)
            for (int b = a + 1; b < 6; ++b) CHECK(p.prefers(a, b) == r.prefers(b, a));
    } while (std::next_permutation(ranking.begin(), ranking.begin() + 3));  // sample of orders
}

TEST_CASE("intervals are symmetric and nested") {
    ProductSpace space({5, 2});
    CHECK(interval(space, 0, 1, 3) == std::vector<int>{1, 2, 3});
    CHECK(interval(space, 0, 3, 1) == std::vector<int>{1, 2, 3});
    CHECK(interval(space, 0, 2, 2) == std::vector<int>{2});
    CHECK(interior_interval(space, 0, 1, 3) == std::vector<int>{2});
    CHECK(interior_interval(space, 0, 3, 1) == std::vector<int>{2});
    CHECK(interior_interval(space, 0, 2, 3).empty());
    CHECK_THROWS_AS(interval(space, 0, 0, 5), InputError);
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
            for (int x = 0; x < 5; ++x) {
                CHECK(in_interval(a, x, b) == in_interval(b, x, a));
                CHECK(in_interior(a, x, b) == in_interior(b, x, a));
                if (in_interior(a, x, b)) CHECK(in_interval(a, x, b));
            }
}

TEST_CASE("disagreement and similarity") {
    CHECK(disagreement_set({0, 1, 2}, {0, 1, 2}).empty());
    CHECK(disagreement_set({0, 1, 2}, {1, 1, 0}) == std::vector<int>{0, 2});
    CHECK(is_similar({0, 1}, {0, 0}));
    CHECK(!is_similar({0, 1}, {1, 0}));
    CHECK(!is_similar({0, 1}, {0, 1}));
    CHECK_THROWS_AS(disagreement_set({0, 1}, {0, 1, 2}), InputError);
}

TEST_CASE("induced marginal reads the order at the peak's other coordinates") {
    ProductSpace space({3, 2});
    // best first: (0,0) (2,0) (0,1) (1,0) (2,1) (1,1)
    auto p = Preference::from_ranking(
        space, {space.encode({0, 0}), space.encode({2, 0}), space.encode({0, 1}),
                space.encode({1, 0}), space.encode({2, 1}), space.encode({1, 1})});
    auto m0 = induce_marginal(space, p, 0);
    CHECK(m0.ranking == std::vector<int>{0, 2, 1});
    auto m1 = induce_marginal(space, p, 1);
    CHECK(m1.ranking == std::vector<int>{0, 1});
    // at the coordinates of (.,1) the first component reads differently
    auto m0_away = induce_marginal_at(space, p, 0, {0, 1});
    CHECK(m0_away.ranking == std::vector<int>{0, 2, 1});
    CHECK(induce_marginal_at(space, p, 0, {2, 0}).ranking == m0.ranking);
}

TEST_CASE("induced marginal domain deduplicates and sorts") {
    ProductSpace space({2, 2});
    auto p = Preference::from_ranking(space, {0, 1, 2, 3});
    auto q = Preference::from_ranking(space, {0, 2, 1, 3});
    Domain d(space, {p, q});
    auto ds1 = induced_marginal_domain(d, 1);
    CHECK(ds1.size() == 1);  // both induce 0 above 1 on the second component
    auto ds0 = induced_marginal_domain(d, 0);
    CHECK(ds0.size() == 1);
    CHECK(marginal_index(ds0, ds0[0]) == 0);
    auto rev = ds0[0].reversed();
    CHECK(marginal_index(ds0, rev) == -1);
}

TEST_CASE("domains reject duplicates and mismatched preferences") {
    ProductSpace space({2, 2});
    auto p = Preference::from_ranking(space, {0, 1, 2, 3});
    CHECK_THROWS_AS(Domain(space, {p, p}), InputError);
    ProductSpace other({3, 2});
    auto q = Preference::from_ranking(other, {0, 1, 2, 3, 4, 5});
    CHECK_THROWS_AS(Domain(space, {q}), InputError);
}
