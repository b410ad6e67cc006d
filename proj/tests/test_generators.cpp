#include "quasihom/generators.hpp"

#include "quasihom/setcount.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

using quasihom::FiniteGroupMap;
using quasihom::ModWindowedMap;
using quasihom::Rat;
using quasihom::SparseVec;
using quasihom::WindowedMap;
namespace generators = quasihom::generators;
namespace setcount = quasihom::setcount;

TEST_CASE("noise stream is a pinned splitmix64", "[generators]") {
    generators::NoiseStream s(42);
    CHECK(s.next() == 13679457532755275413ull);
    CHECK(s.next() == 2949826092126892291ull);
    CHECK(s.next() == 5139283748462763858ull);

    SECTION("same seed, same stream") {
        generators::NoiseStream a(7), b(7);
        for (int i = 0; i < 20; ++i)
            CHECK(a.next() == b.next());
    }

    SECTION("different seeds diverge") {
        generators::NoiseStream a(1), b(2);
        CHECK(a.next() != b.next());
    }
}

TEST_CASE("noise draws stay in their pinned ranges", "[generators]") {
    generators::NoiseStream s(123);
    for (int i = 0; i < 200; ++i) {
        const Rat noise = s.next_noise();
        CHECK_FALSE(noise.is_zero());
        CHECK(quasihom::abs(noise) <= Rat(3));
        CHECK(quasihom::abs(noise) >= Rat(1, 8));
        const auto den = noise.den();
        CHECK((den == 1 || den == 2 || den == 4 || den == 8));
    }
    for (int i = 0; i < 200; ++i) {
        const Rat slope = s.next_slope();
        CHECK(quasihom::abs(slope) <= Rat(4));
        CHECK(slope.den() <= 5);
    }
    for (int i = 0; i < 100; ++i)
        CHECK(s.next_below(6) < 6);

    SECTION("first draws for a fixed seed are frozen") {
        generators::NoiseStream noise(42);
        CHECK(noise.next_noise() == Rat(-1, 2));
        CHECK(noise.next_noise() == Rat(1));
        CHECK(noise.next_noise() == Rat(-1, 8));
        CHECK(noise.next_noise() == Rat(1, 8));
        generators::NoiseStream slopes(7);
        CHECK(slopes.next_slope() == Rat(-1, 5));
        CHECK(slopes.next_slope() == Rat(-1));
        CHECK(slopes.next_slope() == Rat(3));
        CHECK(slopes.next_slope() == Rat(1));
    }
}

TEST_CASE("centered representative maps", "[generators]") {
    SECTION("odd: representatives in {-k, ..., k}") {
        const FiniteGroupMap g = generators::centered_rep_map(1);
        CHECK(g.order() == 3);
        CHECK(g.at(0) == Rat(0));
        CHECK(g.at(1) == Rat(1));
        CHECK(g.at(2) == Rat(-1));
        CHECK(setcount::group_problem_count(g).count == 2);  // k(k+1)
        CHECK_THROWS_AS(generators::centered_rep_map(0), std::invalid_argument);
    }

    SECTION("even: representatives in {-k+1, ..., k}") {
        const FiniteGroupMap g = generators::centered_rep_map_even(2);
        CHECK(g.order() == 4);
        CHECK(g.at(0) == Rat(0));
        CHECK(g.at(1) == Rat(1));
        CHECK(g.at(2) == Rat(2));
        CHECK(g.at(3) == Rat(-1));
        CHECK(setcount::group_problem_count(g).count == 4);  // k^2
        CHECK_THROWS_AS(generators::centered_rep_map_even(0), std::invalid_argument);
    }
}

TEST_CASE("the three-coordinate staircase family", "[generators]") {
    const WindowedMap f = generators::example_1_6(3, -30, 30);
    CHECK(f.dim() == 3);
    CHECK(f.at(5) == SparseVec(3, {{1, Rat(2)}, {2, Rat(1)}, {3, Rat(1)}}));
    CHECK(f.at(-5) == SparseVec(3, {{1, Rat(-2)}, {2, Rat(-1)}, {3, Rat(1)}}));
    CHECK(f.at(0) == SparseVec(3, {{3, Rat(1)}}));
    CHECK(f.at(1) == SparseVec(3));
    CHECK(quasihom::max_defect(f).max_defect == 1);

    SECTION("alpha overrides replace the default at multiples of five") {
        const WindowedMap g =
            generators::example_1_6(4, -10, 10, {{0, Rat(7, 2)}}, Rat(2));
        CHECK(g.at(0).get(3) == Rat(7, 2));
        CHECK(g.at(5).get(3) == Rat(2));
        CHECK(g.at(7).get(3) == Rat(0));
    }

    SECTION("zero alpha clears the third coordinate") {
        const WindowedMap g = generators::example_1_6(3, -10, 10, {}, Rat(0));
        CHECK(g.at(5).get(3).is_zero());
    }

    SECTION("validation") {
        CHECK_THROWS_AS(generators::example_1_6(2, -10, 10), std::invalid_argument);
        CHECK_THROWS_AS(generators::example_1_6(3, -10, 10, {{3, Rat(1)}}),
                        std::invalid_argument);
    }
}

TEST_CASE("floor_slopes splits the coordinate budget", "[generators]") {
    const WindowedMap f =
        generators::floor_slopes(3, 1, {Rat(3), Rat(-1, 3)}, {Rat(1, 2)}, -50, 50);
    CHECK(f.at(5) == SparseVec(3, {{1, Rat(2)}, {2, Rat(15)}, {3, Rat(-5, 3)}}));
    CHECK(f.at(-5) == SparseVec(3, {{1, Rat(-3)}, {2, Rat(-15)}, {3, Rat(5, 3)}}));
    CHECK(quasihom::is_quasihomomorphism(f, 1));
    CHECK(quasihom::max_defect(f).max_defect == 1);

    CHECK_THROWS_AS(generators::floor_slopes(3, 4, {}, {}, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generators::floor_slopes(3, 1, {Rat(1)}, {Rat(1), Rat(2)}, 0, 1),
                    std::invalid_argument);
}

TEST_CASE("bounded_support_noise perturbs only the support", "[generators]") {
    const SparseVec v(4, {{1, Rat(1, 2)}, {4, Rat(-2)}});
    const WindowedMap f = generators::bounded_support_noise(4, 2, v, {2, 3}, 9, -20, 20);

    SECTION("off-support coordinates follow the line exactly") {
        for (std::int64_t x = -20; x <= 20; ++x) {
            CHECK(f.at(x).get(1) == Rat(x) * Rat(1, 2));
            CHECK(f.at(x).get(4) == Rat(x) * Rat(-2));
        }
    }

    SECTION("support coordinates carry nonzero noise") {
        CHECK(hamming_weight(f.at(0)) == 2);  // noise alone at x = 0
        for (std::int64_t x = -20; x <= 20; ++x) {
            CHECK(f.at(x).get(2) != Rat(0));
            CHECK(f.at(x).get(3) != Rat(0));
        }
    }

    SECTION("same seed reproduces the same map") {
        const WindowedMap g = generators::bounded_support_noise(4, 2, v, {2, 3}, 9, -20, 20);
        for (std::int64_t x = -20; x <= 20; ++x)
            CHECK(f.at(x) == g.at(x));
    }

    SECTION("validation") {
        CHECK_THROWS_AS(generators::bounded_support_noise(4, 1, v, {2, 3}, 9, -5, 5),
                        std::invalid_argument);
        CHECK_THROWS_AS(generators::bounded_support_noise(4, 2, v, {0}, 9, -5, 5),
                        std::invalid_argument);
        CHECK_THROWS_AS(generators::bounded_support_noise(4, 2, v, {5}, 9, -5, 5),
                        std::invalid_argument);
        CHECK_THROWS_AS(generators::bounded_support_noise(3, 2, v, {2}, 9, -5, 5),
                        std::invalid_argument);
    }
}

TEST_CASE("mixed_map stays within its defect budget", "[generators]") {
    const WindowedMap f = generators::mixed_map(4, 3, 11, -30, 30);
    CHECK(f.dim() == 4);
    CHECK(quasihom::max_defect(f).max_defect <= 3);

    SECTION("deterministic in the seed") {
        const WindowedMap g = generators::mixed_map(4, 3, 11, -30, 30);
        for (std::int64_t x = -30; x <= 30; ++x)
            CHECK(f.at(x) == g.at(x));
        const WindowedMap h = generators::mixed_map(4, 3, 12, -30, 30);
        bool differs = false;
        for (std::int64_t x = -30; x <= 30 && !differs; ++x)
            differs = !(h.at(x) == f.at(x));
        CHECK(differs);
    }

    CHECK_THROWS_AS(generators::mixed_map(1, 3, 11, -5, 5), std::invalid_argument);
}

TEST_CASE("mod_instance produces certified-shape residue maps", "[generators]") {
    const ModWindowedMap f = generators::mod_instance(7, 3, 2, 5, 20);
    CHECK(f.p() == 7);
    CHECK(f.lo() == -20);
    CHECK(f.hi() == 20);
    CHECK(f.dim() == 3);
    CHECK(quasihom::mod_max_defect(f) <= 2);

    SECTION("deterministic in the seed") {
        const ModWindowedMap g = generators::mod_instance(7, 3, 2, 5, 20);
        for (std::int64_t x = -20; x <= 20; ++x)
            CHECK(f.at(x) == g.at(x));
    }

    CHECK_THROWS_AS(generators::mod_instance(1, 3, 2, 5, 20), std::invalid_argument);
    CHECK_THROWS_AS(generators::mod_instance(7, 3, 2, 5, 7), std::invalid_argument);
    CHECK_THROWS_AS(generators::mod_instance(7, 0, 2, 5, 20), std::invalid_argument);
}

TEST_CASE("kind names round-trip", "[generators]") {
    using generators::Kind;
    for (Kind k : {Kind::kCenteredOdd, Kind::kCenteredEven, Kind::kExample16,
                   Kind::kFloorSlopes, Kind::kBoundedSupport, Kind::kMixed})
        CHECK(generators::kind_from_name(generators::kind_name(k)) == k);
    CHECK(generators::kind_name(Kind::kExample16) == "EXAMPLE_1_6");
    CHECK_THROWS_AS(generators::kind_from_name("NOPE"), std::invalid_argument);
}

TEST_CASE("sample dispatches on the spec kind", "[generators]") {
    generators::GeneratorSpec odd;
    odd.kind = generators::Kind::kCenteredOdd;
    odd.k = 2;
    const generators::GeneratedMap g = generators::sample(odd);
    REQUIRE(std::holds_alternative<FiniteGroupMap>(g));
    CHECK(std::get<FiniteGroupMap>(g).order() == 5);

    generators::GeneratorSpec mixed;
    mixed.kind = generators::Kind::kMixed;
    mixed.n = 3;
    mixed.c = 1;
    mixed.lo = -10;
    mixed.hi = 10;
    mixed.seed = 4;
    const generators::GeneratedMap f = generators::sample(mixed);
    REQUIRE(std::holds_alternative<WindowedMap>(f));
    CHECK(std::get<WindowedMap>(f).dim() == 3);

    generators::GeneratorSpec support;
    support.kind = generators::Kind::kBoundedSupport;
    support.n = 2;
    support.c = 1;
    support.lo = -5;
    support.hi = 5;
    support.seed = 3;
    support.exact_slopes = {Rat(1), Rat(0)};
    support.support = {2};
    const generators::GeneratedMap b = generators::sample(support);
    REQUIRE(std::holds_alternative<WindowedMap>(b));
    CHECK(std::get<WindowedMap>(b).at(1).get(1) == Rat(1));
}
