#pragma once

#include "quasihom/rat.hpp"
#include "quasihom/sparse_vec.hpp"
#include "quasihom/windowed_map.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace quasihom::approx {

enum class Method { kExhaustive, kGreedy };

inline std::string method_name(Method m) {
    return m == Method::kExhaustive ? "EXHAUSTIVE" : "GREEDY";
}

struct ApproxResult {
    SparseVec slope{1};  // placeholder until a search fills it in
    std::int64_t quality = 0;
    Method method = Method::kGreedy;
    bool optimal = false;  // true only for an exhaustive pass over its candidates
};

/// max over the window of w_H(f(x) - x·v).
inline std::int64_t quality(const WindowedMap& f, const SparseVec& v) {
    if (v.dim() != f.dim())
        throw std::invalid_argument("quality: dimension mismatch");
    std::int64_t best = 0;
    for (std::int64_t x = f.lo(); x <= f.hi(); ++x)
        best = std::max(best,
                        static_cast<std::int64_t>(hamming_distance(f.at(x), Rat(x) * v)));
    return best;
}

/// {f_i(x)/x : x in window, x != 0} plus 0, deduplicated and sorted. Any
/// slope outside this set mismatches coordinate i at every nonzero x, so
/// restricting a search to it loses nothing on the window.
inline std::vector<Rat> candidate_slopes(const WindowedMap& f, std::int64_t i) {
    if (i < 1 || i > f.dim())
        throw std::invalid_argument("candidate_slopes: coordinate out of range");
    if (f.lo() == 0 && f.hi() == 0)
        throw std::invalid_argument("candidate_slopes: window has no nonzero point");
    std::vector<Rat> cands;
    cands.emplace_back(0);
    for (std::int64_t x = f.lo(); x <= f.hi(); ++x)
        if (x != 0)
            cands.push_back(f.at(x).get(i) / Rat(x));
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    return cands;
}

namespace detail {

/// Candidates for one coordinate in tie-break order: f_i(1) first when the
/// window contains 1, the rest ascending.
inline std::vector<Rat> ordered_candidates(const WindowedMap& f, std::int64_t i) {
    std::vector<Rat> cands = candidate_slopes(f, i);
    if (f.contains(1)) {
        const Rat preferred = f.at(1).get(i);
        auto it = std::find(cands.begin(), cands.end(), preferred);
        if (it != cands.end())
            std::rotate(cands.begin(), it, it + 1);
    }
    return cands;
}

/// mismatch[j][xi] = 1 iff candidate j disagrees with f_i at window point xi.
inline std::vector<std::vector<std::uint8_t>> mismatch_table(const WindowedMap& f,
                                                             std::int64_t i,
                                                             const std::vector<Rat>& cands) {
    const std::size_t len = static_cast<std::size_t>(f.hi() - f.lo() + 1);
    std::vector<std::vector<std::uint8_t>> table(cands.size(),
                                                 std::vector<std::uint8_t>(len, 0));
    for (std::size_t j = 0; j < cands.size(); ++j) {
        for (std::int64_t x = f.lo(); x <= f.hi(); ++x) {
            const bool hit = f.at(x).get(i) != cands[j] * Rat(x);
            table[j][static_cast<std::size_t>(x - f.lo())] = hit ? 1 : 0;
        }
    }
    return table;
}

inline SparseVec slope_from_choice(std::int64_t dim,
                                   const std::vector<std::vector<Rat>>& cands,
                                   const std::vector<std::size_t>& choice) {
    std::vector<std::pair<std::int64_t, Rat>> entries;
    for (std::size_t i = 0; i < choice.size(); ++i) {
        const Rat& v = cands[i][choice[i]];
        if (!v.is_zero())
            entries.emplace_back(static_cast<std::int64_t>(i + 1), v);
    }
    return SparseVec(dim, std::move(entries));
}

}  // namespace detail

/// Minimizes quality over the full candidate product. The product is visited
/// in tie-break order and only a strictly better quality replaces the
/// incumbent, so the first optimum in that order wins.
inline ApproxResult best_slope_exhaustive(const WindowedMap& f, std::uint64_t budget) {
    if (budget == 0)
        throw std::invalid_argument("best_slope_exhaustive: budget must be positive");
    const std::int64_t n = f.dim();
    std::vector<std::vector<Rat>> cands;
    std::uint64_t product = 1;
    for (std::int64_t i = 1; i <= n; ++i) {
        cands.push_back(detail::ordered_candidates(f, i));
        if (product > budget / cands.back().size())
            throw std::runtime_error("best_slope_exhaustive: candidate product exceeds budget");
        product *= cands.back().size();
    }

    std::vector<std::vector<std::vector<std::uint8_t>>> tables;
    for (std::int64_t i = 1; i <= n; ++i)
        tables.push_back(detail::mismatch_table(f, i, cands[static_cast<std::size_t>(i - 1)]));

    const std::size_t len = static_cast<std::size_t>(f.hi() - f.lo() + 1);
    std::vector<std::size_t> choice(static_cast<std::size_t>(n), 0);
    std::vector<std::size_t> best_choice = choice;
    std::int64_t best_quality = -1;
    std::vector<const std::uint8_t*> rows(static_cast<std::size_t>(n));

    for (;;) {
        for (std::size_t i = 0; i < choice.size(); ++i)
            rows[i] = tables[i][choice[i]].data();
        std::int64_t worst = 0;
        for (std::size_t xi = 0; xi < len; ++xi) {
            std::int64_t s = 0;
            for (std::size_t i = 0; i < rows.size(); ++i)
                s += rows[i][xi];
            if (s > worst) {
                worst = s;
                if (best_quality >= 0 && worst >= best_quality)
                    break;  // cannot beat the incumbent
            }
        }
        if (best_quality < 0 || worst < best_quality) {
            best_quality = worst;
            best_choice = choice;
            if (best_quality == 0)
                break;
        }
        // Odometer step, last coordinate fastest.
        bool wrapped = true;
        for (std::size_t pos = choice.size(); pos > 0; --pos) {
            if (++choice[pos - 1] < cands[pos - 1].size()) {
                wrapped = false;
                break;
            }
            choice[pos - 1] = 0;
        }
        if (wrapped)
            break;
    }

    ApproxResult out;
    out.slope = detail::slope_from_choice(n, cands, best_choice);
    out.quality = best_quality;
    out.method = Method::kExhaustive;
    out.optimal = true;
    return out;
}

/// Per coordinate independently, picks the candidate with the fewest
/// mismatching window points (same tie-break order). The resulting quality
/// upper-bounds the true min-max optimum.
inline ApproxResult best_slope_greedy(const WindowedMap& f) {
    if (!f.contains(1))
        throw std::invalid_argument("best_slope_greedy: window must contain 1");
    const std::int64_t n = f.dim();
    std::vector<std::vector<Rat>> chosen_cands;
    std::vector<std::size_t> choice;
    for (std::int64_t i = 1; i <= n; ++i) {
        const std::vector<Rat> cands = detail::ordered_candidates(f, i);
        std::size_t best_j = 0;
        std::uint64_t best_misses = ~std::uint64_t{0};
        for (std::size_t j = 0; j < cands.size(); ++j) {
            std::uint64_t misses = 0;
            for (std::int64_t x = f.lo(); x <= f.hi(); ++x)
                if (f.at(x).get(i) != cands[j] * Rat(x))
                    ++misses;
            if (misses < best_misses) {
                best_misses = misses;
                best_j = j;
            }
        }
        chosen_cands.push_back(cands);
        choice.push_back(best_j);
    }

    ApproxResult out;
    out.slope = detail::slope_from_choice(n, chosen_cands, choice);
    out.quality = quality(f, out.slope);
    out.method = Method::kGreedy;
    out.optimal = false;
    return out;
}

// ---------------------------------------------------------------------------
// The factor-2 comparison: f(1) is at most twice as far from f as the best
// homomorphism found.
// ---------------------------------------------------------------------------

struct Factor2Report {
    std::int64_t q1 = 0;     // quality of the slope f(1)
    std::int64_t qbest = 0;  // best quality found (never worse than q1)
    Rat ratio;               // q1/qbest, by convention 1 when qbest = 0
    ApproxResult best;
};

inline Factor2Report factor2_report(const WindowedMap& f,
                                    std::uint64_t budget = 1000000) {
    if (!f.contains(1))
        throw std::invalid_argument("factor2_report: window must contain 1");
    Factor2Report rep;
    rep.q1 = quality(f, f.at(1));
    try {
        rep.best = best_slope_exhaustive(f, budget);
    } catch (const std::runtime_error&) {
        rep.best = best_slope_greedy(f);
    }
    rep.qbest = std::min(rep.best.quality, rep.q1);
    rep.ratio = rep.qbest == 0 ? Rat(1) : Rat(rep.q1) / Rat(rep.qbest);
    if (rep.q1 > 2 * rep.qbest)
        throw std::logic_error("factor2_report: f(1) more than twice the best quality");
    return rep;
}

}  // namespace quasihom::approx
