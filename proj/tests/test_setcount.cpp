#include "quasihom/setcount.hpp"

#include "quasihom/generators.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

using quasihom::FiniteGroup;
using quasihom::FiniteGroupMap;
using quasihom::Rat;
using quasihom::ScalarIntervalMap;
using quasihom::SparseVec;
using quasihom::WindowedMap;
namespace setcount = quasihom::setcount;

namespace {

using Pair = std::pair<std::int64_t, std::int64_t>;

// The 5-periodic extension of the centered map on Z/5 to [1, 10].
ScalarIntervalMap lifted_centered_5() {
    return setcount::periodic_lift(quasihom::generators::centered_rep_map(2));
}

}  // namespace

TEST_CASE("interval sets of the lifted centered map", "[setcount]") {
    const ScalarIntervalMap f = lifted_centered_5();

    CHECK(setcount::zero_set(f) == std::vector<std::int64_t>{5});
    CHECK(setcount::p1_set(f) == std::vector<std::int64_t>{2});
    CHECK(setcount::pa_set(f).empty());
    CHECK(setcount::np_set(f).empty());

    const std::vector<Pair> expected = {{1, 2}, {2, 1}, {2, 2}, {3, 3}, {3, 4}, {4, 3}};
    CHECK(setcount::problem_set(f) == expected);
    CHECK(setcount::problem_count(f) == 6);
}

TEST_CASE("np differs from pa when f(a) is nonzero", "[setcount]") {
    // f(x) = x: f(x+a) = f(x) + f(a) everywhere but f(x+a) != f(x).
    const auto f = ScalarIntervalMap::build(4, [](std::int64_t x) { return Rat(x); });
    CHECK(setcount::pa_set(f).empty());
    CHECK(setcount::np_set(f) == std::vector<std::int64_t>{1, 2, 3, 4});
    CHECK(setcount::problem_count(f) == 0);
}

TEST_CASE("group problem set of the two-value map on Z/3", "[setcount]") {
    FiniteGroupMap g(FiniteGroup({3}));
    g.set(1, Rat(1));
    g.set(2, Rat(1));

    const auto problems = setcount::group_problem_set(g);
    const std::vector<std::pair<std::uint64_t, std::uint64_t>> expected = {
        {1, 1}, {1, 2}, {2, 1}, {2, 2}};
    CHECK(problems == expected);
    CHECK(setcount::group_zero_set(g) == std::vector<std::uint64_t>{0});
}

TEST_CASE("problem count is partition independent", "[setcount]") {
    const auto g = FiniteGroupMap::build(FiniteGroup({12}), [](std::uint64_t b) {
        return Rat(static_cast<std::int64_t>((b * b) % 5) - 2);
    });
    const setcount::GridCount base = setcount::group_problem_count(g, nullptr, 1, 5);
    CHECK(base.count > 0);
    for (unsigned jobs : {2u, 3u, 5u, 8u, 24u}) {
        const setcount::GridCount part = setcount::group_problem_count(g, nullptr, jobs, 5);
        CHECK(part.count == base.count);
        CHECK(part.witnesses == base.witnesses);
        CHECK(part.truncated == base.truncated);
    }

    SECTION("uncapped witnesses enumerate the whole set") {
        const setcount::GridCount full = setcount::group_problem_count(g, nullptr, 4, 0);
        CHECK(full.witnesses.size() == full.count);
        CHECK_FALSE(full.truncated);
    }
}

TEST_CASE("excluding sums shrinks the problem set", "[setcount]") {
    const FiniteGroupMap g = quasihom::generators::centered_rep_map(3);

    const auto all = setcount::group_problem_set(g);
    CHECK(all.size() == 12);  // k(k+1) for k = 3

    // No problem pair of the centered map sums to 0, so excluding 0 keeps all.
    CHECK(setcount::group_problem_set_excluding(g, {0}).size() == 12);

    // Excluding every wrap target empties it.
    std::vector<std::uint64_t> everything;
    for (std::uint64_t b = 0; b < g.order(); ++b)
        everything.push_back(b);
    CHECK(setcount::group_problem_set_excluding(g, everything).empty());

    SECTION("subsets must contain group elements") {
        CHECK_THROWS_AS(setcount::group_problem_set_excluding(g, {7}),
                        std::invalid_argument);
    }

    SECTION("excluded listings are subsets of the full listing") {
        const auto excluded = setcount::group_problem_set_excluding(g, {1, 3});
        for (const auto& pair : excluded)
            CHECK(std::find(all.begin(), all.end(), pair) != all.end());
    }
}

TEST_CASE("set report aggregates the five counts", "[setcount]") {
    const ScalarIntervalMap f = lifted_centered_5();
    const setcount::SetReport report = setcount::set_report(f);

    CHECK(report.z == 1);
    CHECK(report.p1 == 1);
    CHECK(report.pa == 0);
    CHECK(report.np == 0);
    CHECK(report.p == 6);
    CHECK_FALSE(report.ps.has_value());

    REQUIRE(report.z_list.has_value());
    CHECK(*report.z_list == std::vector<std::int64_t>{5});
    REQUIRE(report.p_list.has_value());
    CHECK(report.p_list->size() == 6);

    SECTION("listings above the threshold are dropped") {
        const setcount::SetReport small = setcount::set_report(f, 3);
        CHECK(small.p == 6);
        CHECK_FALSE(small.p_list.has_value());
        CHECK(small.z_list.has_value());
    }
}

TEST_CASE("component extraction from a windowed map", "[setcount]") {
    const WindowedMap f = WindowedMap::build(1, 6, 2, [](std::int64_t x) {
        SparseVec v(2);
        v.set(1, Rat(x));
        v.set(2, Rat((Rat(x, 2)).floor()));
        return v;
    });
    const ScalarIntervalMap c2 = setcount::component_interval_map(f, 2);
    CHECK(c2.a() == 3);
    CHECK(c2.at(5) == Rat(2));
    CHECK(setcount::component_interval_map(f, 1).at(6) == Rat(6));

    CHECK_THROWS_AS(setcount::component_interval_map(f, 3), std::invalid_argument);
    const WindowedMap shifted = WindowedMap::build(0, 6, 1,
                                                   [](std::int64_t) { return SparseVec(1); });
    CHECK_THROWS_AS(setcount::component_interval_map(shifted, 1), std::invalid_argument);
    const WindowedMap odd = WindowedMap::build(1, 5, 1,
                                               [](std::int64_t) { return SparseVec(1); });
    CHECK_THROWS_AS(setcount::component_interval_map(odd, 1), std::invalid_argument);
}

TEST_CASE("periodic lift", "[setcount]") {
    const FiniteGroupMap g = quasihom::generators::centered_rep_map(3);
    const ScalarIntervalMap lift = setcount::periodic_lift(g);
    CHECK(lift.a() == 7);
    for (std::int64_t x = 1; x <= 14; ++x)
        CHECK(lift.at(x) == g.at(static_cast<std::uint64_t>(x % 7)));
    // The lift's problem count on [a]^2 equals the group problem count.
    CHECK(setcount::problem_count(lift) == 12);

    CHECK_THROWS_AS(setcount::periodic_lift(FiniteGroupMap(FiniteGroup({2, 3}))),
                    std::invalid_argument);
    CHECK_THROWS_AS(setcount::periodic_lift(FiniteGroupMap(FiniteGroup({1}))),
                    std::invalid_argument);
}
