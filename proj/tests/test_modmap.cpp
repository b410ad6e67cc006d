#include "quasihom/modmap.hpp"

#include "quasihom/generators.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

using quasihom::ModWindowedMap;
using quasihom::Rat;
using quasihom::SparseVec;
using quasihom::WindowedMap;
namespace certify = quasihom::certify;
namespace generators = quasihom::generators;

namespace {

ModWindowedMap residue_line(std::int64_t p, std::int64_t lo, std::int64_t hi) {
    return ModWindowedMap::build(p, lo, hi, 1,
                                 [](std::int64_t x) { return std::vector<std::int64_t>{x}; });
}

}  // namespace

TEST_CASE("is_prime", "[modmap]") {
    for (std::int64_t p : {2, 3, 5, 7, 11, 13, 97})
        CHECK(quasihom::is_prime(p));
    for (std::int64_t n : {-3, 0, 1, 4, 9, 57, 91})
        CHECK_FALSE(quasihom::is_prime(n));
}

TEST_CASE("mod map stores canonical residues", "[modmap]") {
    CHECK(ModWindowedMap::mod(-7, 5) == 3);
    CHECK(ModWindowedMap::mod(-1, 5) == 4);
    CHECK(ModWindowedMap::mod(12, 5) == 2);

    const ModWindowedMap f = residue_line(5, -7, 7);
    CHECK(f.p() == 5);
    CHECK(f.dim() == 1);
    CHECK(f.at(-7)[0] == 3);
    CHECK(f.at(6)[0] == 1);
    CHECK_THROWS_AS(f.at(8), std::out_of_range);

    CHECK_THROWS_AS(ModWindowedMap::build(1, 0, 1, 1,
                                          [](std::int64_t) {
                                              return std::vector<std::int64_t>{0};
                                          }),
                    std::invalid_argument);
    CHECK_THROWS_AS(ModWindowedMap::build(5, 2, 1, 1,
                                          [](std::int64_t) {
                                              return std::vector<std::int64_t>{0};
                                          }),
                    std::invalid_argument);
    CHECK_THROWS_AS(ModWindowedMap::build(5, 0, 1, 2,
                                          [](std::int64_t) {
                                              return std::vector<std::int64_t>{0};
                                          }),
                    std::invalid_argument);
}

TEST_CASE("mod defect", "[modmap]") {
    SECTION("the residue line is additive mod p") {
        const ModWindowedMap f = residue_line(5, -7, 7);
        CHECK(quasihom::mod_defect(f, 3, 4) == 0);
        CHECK(quasihom::mod_max_defect(f) == 0);
    }

    SECTION("a floor staircase has defect one") {
        const ModWindowedMap f = ModWindowedMap::build(3, -6, 6, 1, [](std::int64_t x) {
            return std::vector<std::int64_t>{static_cast<std::int64_t>(Rat(x, 2).floor())};
        });
        CHECK(quasihom::mod_defect(f, 1, 1) == 1);
        CHECK(quasihom::mod_max_defect(f) == 1);
    }
}

TEST_CASE("mod_weight_minus_multiple", "[modmap]") {
    const ModWindowedMap f = ModWindowedMap::build(5, -4, 4, 2, [](std::int64_t x) {
        return std::vector<std::int64_t>{x, 2 * x + 1};
    });
    // f(3) = (3, 2), 3*f(1) = (3, 9): the second coordinate differs mod 5.
    CHECK(quasihom::mod_weight_minus_multiple(f, 3, 3, 1) == 1);
    // f(2) = (2, 0), 2*f(1) = (2, 6 = 1): differs in the second coordinate.
    CHECK(quasihom::mod_weight_minus_multiple(f, 2, 2, 1) == 1);
    // x = 0 against k = 0: f(0) = (0, 1) has one nonzero coordinate.
    CHECK(quasihom::mod_weight_minus_multiple(f, 0, 0, 1) == 1);
}

TEST_CASE("mod_reduce inverts denominators", "[modmap]") {
    const WindowedMap f = WindowedMap::build(-3, 3, 2, [](std::int64_t x) {
        SparseVec v(2);
        v.set(1, Rat(x, 2));    // 2^(-1) = 3 mod 5
        v.set(2, Rat(7, 3));    // 7/3 = 2*2 = 4 mod 5
        return v;
    });
    const ModWindowedMap m = quasihom::mod_reduce(f, 5);
    CHECK(m.at(1)[0] == 3);
    CHECK(m.at(2)[0] == 1);   // 2/2 = 1
    CHECK(m.at(-1)[0] == 2);  // -3 mod 5
    CHECK(m.at(1)[1] == 4);
    CHECK(m.at(0)[1] == 4);

    SECTION("denominator divisible by p is rejected") {
        WindowedMap bad = WindowedMap::build(-1, 1, 1, [](std::int64_t) {
            SparseVec v(1);
            v.set(1, Rat(1, 5));
            return v;
        });
        CHECK_THROWS_AS(quasihom::mod_reduce(bad, 5), std::invalid_argument);
    }

    SECTION("modulus below 2 is rejected") {
        CHECK_THROWS_AS(quasihom::mod_reduce(f, 1), std::invalid_argument);
    }
}

TEST_CASE("REMARK_FINCHAR holds on generated mod instances", "[modmap]") {
    const ModWindowedMap f = generators::mod_instance(5, 3, 2, 42, 25);
    const certify::Certificate cert = certify::certify_finite_char(f, 5, 2);

    CHECK(cert.claim_id == "REMARK_FINCHAR");
    CHECK(cert.rhs == Rat(16));  // 2(p-1)c = 2*4*2
    CHECK(cert.holds);
    CHECK(cert.param("p") == Rat(5));
    CHECK(cert.param("c") == Rat(2));
    CHECK(cert.param("x_max") == Rat(20));
    CHECK(cert.lhs <= cert.rhs);

    SECTION("the additive-mod-p line is at distance zero") {
        const ModWindowedMap line = residue_line(7, -10, 10);
        const certify::Certificate zero = certify::certify_finite_char(line, 7, 0);
        CHECK(zero.lhs == Rat(0));
        CHECK(zero.holds);
    }
}

TEST_CASE("REMARK_FINCHAR validates its inputs", "[modmap]") {
    const ModWindowedMap f = generators::mod_instance(5, 2, 1, 1, 12);

    CHECK_THROWS_AS(certify::certify_finite_char(f, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(certify::certify_finite_char(f, 7, 1), std::invalid_argument);
    CHECK_THROWS_AS(certify::certify_finite_char(f, 5, -1), std::invalid_argument);

    SECTION("window must be symmetric and wide enough") {
        const ModWindowedMap narrow = residue_line(5, -5, 5);
        CHECK_THROWS_AS(certify::certify_finite_char(narrow, 5, 1), std::invalid_argument);
        const ModWindowedMap skewed = residue_line(5, -6, 7);
        CHECK_THROWS_AS(certify::certify_finite_char(skewed, 5, 1), std::invalid_argument);
    }

    SECTION("defect budget must be met") {
        const ModWindowedMap staircase =
            ModWindowedMap::build(5, -8, 8, 1, [](std::int64_t x) {
                return std::vector<std::int64_t>{static_cast<std::int64_t>(Rat(x, 2).floor())};
            });
        CHECK_THROWS_AS(certify::certify_finite_char(staircase, 5, 0), std::invalid_argument);
    }
}
