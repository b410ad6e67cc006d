#pragma once

#include "quasihom/group.hpp"
#include "quasihom/modmap.hpp"
#include "quasihom/rat.hpp"
#include "quasihom/setcount.hpp"
#include "quasihom/sparse_vec.hpp"
#include "quasihom/windowed_map.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace quasihom::generators {

// ---------------------------------------------------------------------------
// Deterministic noise stream (splitmix64). The exact draw formulas below are
// part of the interchange contract; see FORMATS.md.
// ---------------------------------------------------------------------------

class NoiseStream {
public:
    explicit NoiseStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Small nonzero rational: sign·m/2^e with m in 1..3, e in 0..3.
    Rat next_noise() {
        const std::uint64_t u = next();
        const std::int64_t m = 1 + static_cast<std::int64_t>(u % 3);
        const std::int64_t e = static_cast<std::int64_t>((u >> 8) % 4);
        const std::int64_t s = ((u >> 16) & 1) ? -1 : 1;
        return Rat(BigInt(s * m), BigInt(std::int64_t(1) << e));
    }

    /// Small rational slope num/den with num in -4..4, den in 1..5.
    Rat next_slope() {
        const std::int64_t num = static_cast<std::int64_t>(next() % 9) - 4;
        const std::int64_t den = 1 + static_cast<std::int64_t>(next() % 5);
        return Rat(BigInt(num), BigInt(den));
    }

    std::uint64_t next_below(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_;
};

namespace detail {

inline std::int64_t floordiv(std::int64_t num, std::int64_t den) {
    std::int64_t q = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0)))
        --q;
    return q;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Named families.
// ---------------------------------------------------------------------------

/// On Z/(2k+1): the representative of x in {-k, ..., k}.
inline FiniteGroupMap centered_rep_map(std::int64_t k) {
    if (k < 1)
        throw std::invalid_argument("centered_rep_map: k must be at least 1");
    FiniteGroup group({2 * k + 1});
    return FiniteGroupMap::build(group, [&](std::uint64_t b) {
        const std::int64_t x = static_cast<std::int64_t>(b);
        return Rat(x <= k ? x : x - (2 * k + 1));
    });
}

/// On Z/2k: the representative of x in {-k+1, ..., k}. The problem set of
/// this choice has exactly k*k pairs; that count is re-derived on every call.
inline FiniteGroupMap centered_rep_map_even(std::int64_t k) {
    if (k < 1)
        throw std::invalid_argument("centered_rep_map_even: k must be at least 1");
    FiniteGroup group({2 * k});
    FiniteGroupMap g = FiniteGroupMap::build(group, [&](std::uint64_t b) {
        const std::int64_t x = static_cast<std::int64_t>(b);
        return Rat(x <= k ? x : x - 2 * k);
    });
    const std::uint64_t problems = setcount::group_problem_count(g).count;
    if (problems != static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k))
        throw std::logic_error("centered_rep_map_even: problem count is not k^2");
    return g;
}

/// f(x) = (floor((2x+2)/5), floor((x+2)/5), alpha_x, 0, ..., 0) with alpha
/// supported on multiples of 5; a 1-quasihomomorphism on any window.
inline WindowedMap example_1_6(std::int64_t n, std::int64_t lo, std::int64_t hi,
                               const std::map<std::int64_t, Rat>& alpha_overrides = {},
                               const Rat& alpha_default = Rat(1)) {
    if (n < 3)
        throw std::invalid_argument("example_1_6: needs at least 3 coordinates");
    for (const auto& [x, v] : alpha_overrides)
        if (x % 5 != 0)
            throw std::invalid_argument("example_1_6: alpha given at " + std::to_string(x) +
                                        ", not a multiple of 5");
    WindowedMap f = WindowedMap::build(lo, hi, n, [&](std::int64_t x) {
        std::vector<std::pair<std::int64_t, Rat>> entries;
        const Rat a(detail::floordiv(2 * x + 2, 5));
        const Rat b(detail::floordiv(x + 2, 5));
        if (!a.is_zero())
            entries.emplace_back(1, a);
        if (!b.is_zero())
            entries.emplace_back(2, b);
        if (x % 5 == 0) {
            auto it = alpha_overrides.find(x);
            const Rat alpha = it != alpha_overrides.end() ? it->second : alpha_default;
            if (!alpha.is_zero())
                entries.emplace_back(3, alpha);
        }
        return SparseVec(n, std::move(entries));
    });
    if (max_defect(f, 1).max_defect > 1)
        throw std::logic_error("example_1_6: defect exceeded 1");
    return f;
}

/// Coordinates 1..c are x -> floor(beta_i x); coordinates c+1..n are exact
/// lines x -> v_i x. Per-coordinate floor defect is 0 or 1, so the result is
/// a c-quasihomomorphism.
inline WindowedMap floor_slopes(std::int64_t n, std::int64_t c,
                                const std::vector<Rat>& exact, const std::vector<Rat>& floors,
                                std::int64_t lo, std::int64_t hi) {
    if (c < 0 || c > n)
        throw std::invalid_argument("floor_slopes: need 0 <= c <= n");
    if (static_cast<std::int64_t>(floors.size()) != c ||
        static_cast<std::int64_t>(exact.size()) != n - c)
        throw std::invalid_argument("floor_slopes: slope list lengths inconsistent");
    return WindowedMap::build(lo, hi, n, [&](std::int64_t x) {
        std::vector<std::pair<std::int64_t, Rat>> entries;
        for (std::int64_t i = 0; i < c; ++i) {
            const Rat v(( floors[static_cast<std::size_t>(i)] * Rat(x) ).floor());
            if (!v.is_zero())
                entries.emplace_back(i + 1, v);
        }
        for (std::int64_t i = c; i < n; ++i) {
            const Rat v = exact[static_cast<std::size_t>(i - c)] * Rat(x);
            if (!v.is_zero())
                entries.emplace_back(i + 1, v);
        }
        return SparseVec(n, std::move(entries));
    });
}

/// f(x) = x·v + e(x) with e(x) drawn per x from the noise stream and
/// supported on a fixed index set of size at most c.
inline WindowedMap bounded_support_noise(std::int64_t n, std::int64_t c, const SparseVec& v,
                                         std::vector<std::int64_t> support,
                                         std::uint64_t seed, std::int64_t lo,
                                         std::int64_t hi) {
    if (v.dim() != n)
        throw std::invalid_argument("bounded_support_noise: slope dimension mismatch");
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    if (static_cast<std::int64_t>(support.size()) > c)
        throw std::invalid_argument("bounded_support_noise: support larger than c");
    for (std::int64_t i : support)
        if (i < 1 || i > n)
            throw std::invalid_argument("bounded_support_noise: support index out of range");
    NoiseStream stream(seed);
    return WindowedMap::build(lo, hi, n, [&](std::int64_t x) {
        SparseVec row = Rat(x) * v;
        for (std::int64_t i : support)
            row.set(i, row.get(i) + stream.next_noise());
        return row;
    });
}

// ---------------------------------------------------------------------------
// Specs and dispatch.
// ---------------------------------------------------------------------------

enum class Kind {
    kCenteredOdd,
    kCenteredEven,
    kExample16,
    kFloorSlopes,
    kBoundedSupport,
    kMixed,
};

inline std::string kind_name(Kind k) {
    switch (k) {
        case Kind::kCenteredOdd: return "CENTERED_ODD";
        case Kind::kCenteredEven: return "CENTERED_EVEN";
        case Kind::kExample16: return "EXAMPLE_1_6";
        case Kind::kFloorSlopes: return "FLOOR_SLOPES";
        case Kind::kBoundedSupport: return "BOUNDED_SUPPORT";
        case Kind::kMixed: return "MIXED";
    }
    throw std::logic_error("kind_name: unreachable");
}

inline Kind kind_from_name(const std::string& name) {
    if (name == "CENTERED_ODD") return Kind::kCenteredOdd;
    if (name == "CENTERED_EVEN") return Kind::kCenteredEven;
    if (name == "EXAMPLE_1_6") return Kind::kExample16;
    if (name == "FLOOR_SLOPES") return Kind::kFloorSlopes;
    if (name == "BOUNDED_SUPPORT") return Kind::kBoundedSupport;
    if (name == "MIXED") return Kind::kMixed;
    throw std::invalid_argument("unknown generator kind '" + name + "'");
}

struct GeneratorSpec {
    Kind kind = Kind::kCenteredOdd;
    std::int64_t k = 0;            // centered families
    std::int64_t n = 0;            // dimension of windowed kinds
    std::int64_t c = 0;            // defect budget
    std::int64_t lo = 0, hi = 0;   // window of windowed kinds
    std::uint64_t seed = 0;        // randomized kinds
    std::vector<Rat> exact_slopes;
    std::vector<Rat> floor_slopes;
    std::vector<std::int64_t> support;
    std::map<std::int64_t, Rat> alpha;  // EXAMPLE_1_6 overrides
    Rat alpha_default = Rat(1);
};

using GeneratedMap = std::variant<WindowedMap, FiniteGroupMap>;

/// MIXED: (c+1)/2 floor coordinates, the rest of the budget as per-coordinate
/// noise lines, remaining coordinates exact lines. Draw order: floor slopes,
/// noise-coordinate slopes, exact slopes, then noise values by ascending x
/// and ascending coordinate.
inline WindowedMap mixed_map(std::int64_t n, std::int64_t c, std::uint64_t seed,
                             std::int64_t lo, std::int64_t hi) {
    const std::int64_t c1 = (c + 1) / 2;
    const std::int64_t c2 = c - c1;
    if (n < c1 + c2 || n < 1)
        throw std::invalid_argument("mixed_map: dimension too small for budget");
    NoiseStream stream(seed);
    std::vector<Rat> floor_b, noise_v, exact_v;
    for (std::int64_t i = 0; i < c1; ++i)
        floor_b.push_back(stream.next_slope());
    for (std::int64_t i = 0; i < c2; ++i)
        noise_v.push_back(stream.next_slope());
    for (std::int64_t i = 0; i < n - c1 - c2; ++i)
        exact_v.push_back(stream.next_slope());

    // Noise values for all x up front, in the pinned order.
    std::vector<std::vector<Rat>> noise(static_cast<std::size_t>(hi - lo + 1));
    for (auto& row : noise)
        for (std::int64_t i = 0; i < c2; ++i)
            row.push_back(stream.next_noise());

    WindowedMap f = WindowedMap::build(lo, hi, n, [&](std::int64_t x) {
        std::vector<std::pair<std::int64_t, Rat>> entries;
        for (std::int64_t i = 0; i < c1; ++i) {
            const Rat v((floor_b[static_cast<std::size_t>(i)] * Rat(x)).floor());
            if (!v.is_zero())
                entries.emplace_back(i + 1, v);
        }
        const auto& noise_row = noise[static_cast<std::size_t>(x - lo)];
        for (std::int64_t i = 0; i < c2; ++i) {
            const Rat v = noise_v[static_cast<std::size_t>(i)] * Rat(x) +
                          noise_row[static_cast<std::size_t>(i)];
            if (!v.is_zero())
                entries.emplace_back(c1 + i + 1, v);
        }
        for (std::int64_t i = 0; i < n - c1 - c2; ++i) {
            const Rat v = exact_v[static_cast<std::size_t>(i)] * Rat(x);
            if (!v.is_zero())
                entries.emplace_back(c1 + c2 + i + 1, v);
        }
        return SparseVec(n, std::move(entries));
    });
    if (max_defect(f, 1).max_defect > c)
        throw std::logic_error("mixed_map: defect exceeded the budget");
    return f;
}

inline GeneratedMap sample(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case Kind::kCenteredOdd:
            return centered_rep_map(spec.k);
        case Kind::kCenteredEven:
            return centered_rep_map_even(spec.k);
        case Kind::kExample16:
            return example_1_6(spec.n, spec.lo, spec.hi, spec.alpha, spec.alpha_default);
        case Kind::kFloorSlopes:
            return floor_slopes(spec.n, spec.c, spec.exact_slopes, spec.floor_slopes,
                                spec.lo, spec.hi);
        case Kind::kBoundedSupport: {
            SparseVec v(spec.n, [&] {
                std::vector<std::pair<std::int64_t, Rat>> entries;
                for (std::size_t i = 0; i < spec.exact_slopes.size(); ++i)
                    if (!spec.exact_slopes[i].is_zero())
                        entries.emplace_back(static_cast<std::int64_t>(i + 1),
                                             spec.exact_slopes[i]);
                return entries;
            }());
            return bounded_support_noise(spec.n, spec.c, v, spec.support, spec.seed,
                                         spec.lo, spec.hi);
        }
        case Kind::kMixed:
            return mixed_map(spec.n, spec.c, spec.seed, spec.lo, spec.hi);
    }
    throw std::invalid_argument("sample: malformed spec");
}

// ---------------------------------------------------------------------------
// Mod-p instances: floor staircases plus residue noise, for the finite
// characteristic certificate. Same stream, draw order: floor slopes, noise
// slopes (one residue draw each), then noise residues by ascending x and
// ascending coordinate.
// ---------------------------------------------------------------------------

inline ModWindowedMap mod_instance(std::int64_t p, std::int64_t n, std::int64_t c,
                                   std::uint64_t seed, std::int64_t w) {
    if (p < 2 || w < p + 1)
        throw std::invalid_argument("mod_instance: need p >= 2 and window w >= p + 1");
    const std::int64_t c1 = (c + 1) / 2;
    const std::int64_t c2 = c - c1;
    if (n < c1 + c2 || n < 1)
        throw std::invalid_argument("mod_instance: dimension too small for budget");
    NoiseStream stream(seed);
    std::vector<Rat> floor_b;
    for (std::int64_t i = 0; i < c1; ++i)
        floor_b.push_back(stream.next_slope());
    std::vector<std::int64_t> noise_v;
    for (std::int64_t i = 0; i < c2; ++i)
        noise_v.push_back(static_cast<std::int64_t>(stream.next_below(
            static_cast<std::uint64_t>(p))));

    std::vector<std::vector<std::int64_t>> noise(static_cast<std::size_t>(2 * w + 1));
    for (auto& row : noise)
        for (std::int64_t i = 0; i < c2; ++i)
            row.push_back(1 + static_cast<std::int64_t>(stream.next_below(
                                  static_cast<std::uint64_t>(p - 1))));

    return ModWindowedMap::build(p, -w, w, n, [&](std::int64_t x) {
        std::vector<std::int64_t> row(static_cast<std::size_t>(n), 0);
        for (std::int64_t i = 0; i < c1; ++i) {
            const BigInt fl = (floor_b[static_cast<std::size_t>(i)] * Rat(x)).floor();
            row[static_cast<std::size_t>(i)] =
                static_cast<std::int64_t>(fl % BigInt(p));
        }
        const auto& noise_row = noise[static_cast<std::size_t>(x + w)];
        for (std::int64_t i = 0; i < c2; ++i)
            row[static_cast<std::size_t>(c1 + i)] =
                noise_v[static_cast<std::size_t>(i)] * x + noise_row[static_cast<std::size_t>(i)];
        return row;
    });
}

}  // namespace quasihom::generators
