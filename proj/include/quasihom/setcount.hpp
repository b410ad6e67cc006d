#pragma once

#include "quasihom/group.hpp"
#include "quasihom/interval_map.hpp"
#include "quasihom/windowed_map.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

namespace quasihom::setcount {

// ---------------------------------------------------------------------------
// Sets of a scalar map on [1, 2a]. All x range over [1, a]; sums x+y, x+1 and
// x+a stay inside [1, 2a], so no evaluation ever leaves the interval.
// ---------------------------------------------------------------------------

/// { x in [a] | f(x) = 0 }
inline std::vector<std::int64_t> zero_set(const ScalarIntervalMap& f) {
    std::vector<std::int64_t> zs;
    for (std::int64_t x = 1; x <= f.a(); ++x)
        if (f.at(x).is_zero())
            zs.push_back(x);
    return zs;
}

/// { (x, y) in [a]^2 | f(x+y) != f(x) + f(y) }, row-major.
inline std::vector<std::pair<std::int64_t, std::int64_t>> problem_set(
    const ScalarIntervalMap& f) {
    std::vector<std::pair<std::int64_t, std::int64_t>> ps;
    for (std::int64_t x = 1; x <= f.a(); ++x)
        for (std::int64_t y = 1; y <= f.a(); ++y)
            if (f.at(x + y) != f.at(x) + f.at(y))
                ps.emplace_back(x, y);
    return ps;
}

inline std::uint64_t problem_count(const ScalarIntervalMap& f) {
    std::uint64_t n = 0;
    for (std::int64_t x = 1; x <= f.a(); ++x)
        for (std::int64_t y = 1; y <= f.a(); ++y)
            if (f.at(x + y) != f.at(x) + f.at(y))
                ++n;
    return n;
}

/// { x in [a] | f(x+1) != f(x) + f(1) }
inline std::vector<std::int64_t> p1_set(const ScalarIntervalMap& f) {
    std::vector<std::int64_t> s;
    for (std::int64_t x = 1; x <= f.a(); ++x)
        if (f.at(x + 1) != f.at(x) + f.at(1))
            s.push_back(x);
    return s;
}

/// { x in [a] | f(x+a) != f(x) + f(a) }
inline std::vector<std::int64_t> pa_set(const ScalarIntervalMap& f) {
    std::vector<std::int64_t> s;
    for (std::int64_t x = 1; x <= f.a(); ++x)
        if (f.at(x + f.a()) != f.at(x) + f.at(f.a()))
            s.push_back(x);
    return s;
}

/// { x in [a] | f(x+a) != f(x) }; equals pa_set exactly when f(a) = 0.
inline std::vector<std::int64_t> np_set(const ScalarIntervalMap& f) {
    std::vector<std::int64_t> s;
    for (std::int64_t x = 1; x <= f.a(); ++x)
        if (f.at(x + f.a()) != f.at(x))
            s.push_back(x);
    return s;
}

// ---------------------------------------------------------------------------
// Pair-grid counting over a finite abelian group.
// ---------------------------------------------------------------------------

struct GridCount {
    std::uint64_t count = 0;
    /// First witnesses in row-major order (b outer, c inner), up to the cap;
    /// cap 0 keeps everything.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> witnesses;
    bool truncated = false;
};

namespace detail {

inline std::vector<std::uint8_t> subset_mask(const FiniteGroup& group,
                                             const std::vector<std::uint64_t>& subset) {
    std::vector<std::uint8_t> mask(group.order(), 0);
    for (std::uint64_t s : subset) {
        if (s >= group.order())
            throw std::invalid_argument("subset contains a non-element of the group");
        mask[s] = 1;
    }
    return mask;
}

// Scans rows [row_begin, row_end); counts pairs (b, c) with
// g(b+c) != g(b) + g(c), restricted to b+c outside the mask when one is given.
inline GridCount scan_rows(const FiniteGroupMap& g, const std::vector<std::uint8_t>* mask,
                           std::uint64_t row_begin, std::uint64_t row_end,
                           std::size_t witness_cap) {
    GridCount out;
    const FiniteGroup& group = g.group();
    for (std::uint64_t b = row_begin; b < row_end; ++b) {
        for (std::uint64_t c = 0; c < group.order(); ++c) {
            const std::uint64_t sum = group.add(b, c);
            if (mask && (*mask)[sum])
                continue;
            if (g.at(sum) != g.at(b) + g.at(c)) {
                ++out.count;
                if (witness_cap == 0 || out.witnesses.size() < witness_cap)
                    out.witnesses.emplace_back(b, c);
                else
                    out.truncated = true;
            }
        }
    }
    return out;
}

}  // namespace detail

/// Counts the problem pairs of g, optionally excluding pairs whose sum lies in
/// `exclude`. The row range is partitioned across `jobs` workers; the merged
/// result is identical for every partitioning, including the witness prefix.
inline GridCount group_problem_count(const FiniteGroupMap& g,
                                     const std::vector<std::uint64_t>* exclude = nullptr,
                                     unsigned jobs = 1, std::size_t witness_cap = 0) {
    const std::uint64_t rows = g.order();
    std::optional<std::vector<std::uint8_t>> mask;
    if (exclude)
        mask = detail::subset_mask(g.group(), *exclude);
    const auto* mask_ptr = mask ? &*mask : nullptr;

    if (jobs <= 1 || rows < 2)
        return detail::scan_rows(g, mask_ptr, 0, rows, witness_cap);

    if (jobs > rows)
        jobs = static_cast<unsigned>(rows);
    std::vector<GridCount> parts(jobs);
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) {
        const std::uint64_t begin = rows * t / jobs;
        const std::uint64_t end = rows * (t + 1) / jobs;
        workers.emplace_back([&, t, begin, end] {
            parts[t] = detail::scan_rows(g, mask_ptr, begin, end, witness_cap);
        });
    }
    for (auto& w : workers)
        w.join();

    GridCount merged;
    for (const auto& part : parts) {
        merged.count += part.count;
        merged.truncated = merged.truncated || part.truncated;
        for (const auto& w : part.witnesses) {
            if (witness_cap == 0 || merged.witnesses.size() < witness_cap)
                merged.witnesses.push_back(w);
            else
                merged.truncated = true;
        }
    }
    return merged;
}

/// { (b, c) | g(b+c) != g(b) + g(c) } as an explicit row-major listing.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> group_problem_set(
    const FiniteGroupMap& g) {
    return group_problem_count(g).witnesses;
}

/// Same, additionally requiring b+c to avoid `exclude`; always a subset of
/// group_problem_set(g).
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> group_problem_set_excluding(
    const FiniteGroupMap& g, const std::vector<std::uint64_t>& exclude) {
    return group_problem_count(g, &exclude).witnesses;
}

inline std::vector<std::uint64_t> group_zero_set(const FiniteGroupMap& g) {
    std::vector<std::uint64_t> zs;
    for (std::uint64_t b = 0; b < g.order(); ++b)
        if (g.at(b).is_zero())
            zs.push_back(b);
    return zs;
}

// ---------------------------------------------------------------------------
// Aggregated report.
// ---------------------------------------------------------------------------

/// Exact cardinalities of every set of one map; listings are dropped above
/// the threshold to bound memory.
struct SetReport {
    std::uint64_t z = 0, p = 0, p1 = 0, pa = 0, np = 0;
    std::optional<std::uint64_t> ps;  // group maps with an excluded subset only
    std::optional<std::vector<std::int64_t>> z_list, p1_list, pa_list, np_list;
    std::optional<std::vector<std::pair<std::int64_t, std::int64_t>>> p_list;
};

inline constexpr std::uint64_t kDefaultListingThreshold = 1000000;

inline SetReport set_report(const ScalarIntervalMap& f,
                            std::uint64_t listing_threshold = kDefaultListingThreshold) {
    SetReport r;
    auto zs = zero_set(f);
    auto p1s = p1_set(f);
    auto pas = pa_set(f);
    auto nps = np_set(f);
    auto ps = problem_set(f);
    r.z = zs.size();
    r.p1 = p1s.size();
    r.pa = pas.size();
    r.np = nps.size();
    r.p = ps.size();
    if (r.z <= listing_threshold)
        r.z_list = std::move(zs);
    if (r.p1 <= listing_threshold)
        r.p1_list = std::move(p1s);
    if (r.pa <= listing_threshold)
        r.pa_list = std::move(pas);
    if (r.np <= listing_threshold)
        r.np_list = std::move(nps);
    if (r.p <= listing_threshold)
        r.p_list = std::move(ps);
    return r;
}

// ---------------------------------------------------------------------------
// Bridges between group maps, interval maps and windowed maps.
// ---------------------------------------------------------------------------

/// Coordinate i of a windowed map on [1, 2a], as a scalar interval map.
inline ScalarIntervalMap component_interval_map(const WindowedMap& f, std::int64_t i) {
    if (f.lo() != 1 || f.hi() < 2 || f.hi() % 2 != 0)
        throw std::invalid_argument("component_interval_map: window must be [1, 2a]");
    if (i < 1 || i > f.dim())
        throw std::invalid_argument("component_interval_map: coordinate out of range");
    const std::int64_t a = f.hi() / 2;
    return ScalarIntervalMap::build(a, [&](std::int64_t x) { return f.at(x).get(i); });
}

/// The a-periodic extension of a cyclic-group map to [1, 2a]:
/// L(x) = g(x mod a). Its problem set on [a]^2 matches the group problem set
/// of g because every sum stays within [2, 2a].
inline ScalarIntervalMap periodic_lift(const FiniteGroupMap& g) {
    if (g.group().moduli().size() != 1)
        throw std::invalid_argument("periodic_lift: group must be cyclic");
    const std::int64_t a = g.group().moduli()[0];
    if (a <= 1)
        throw std::invalid_argument("periodic_lift: group order must exceed 1");
    return ScalarIntervalMap::build(a, [&](std::int64_t x) {
        return g.at(static_cast<std::uint64_t>(x % a));
    });
}

}  // namespace quasihom::setcount
