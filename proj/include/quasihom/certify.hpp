#pragma once

#include "quasihom/group.hpp"
#include "quasihom/interval_map.hpp"
#include "quasihom/rat.hpp"
#include "quasihom/setcount.hpp"
#include "quasihom/windowed_map.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace quasihom::certify {

inline constexpr std::size_t kDefaultWitnessCap = 100;

// ---------------------------------------------------------------------------
// Certificates: both sides of one inequality, evaluated exactly.
// ---------------------------------------------------------------------------

struct Certificate {
    std::string claim_id;
    // Ordered (name, value) pairs; exact rationals only.
    std::vector<std::pair<std::string, Rat>> params;
    Rat lhs;
    Rat rhs;
    bool holds = false;    // the claim's inequality, evaluated exactly
    bool vacuous = false;  // precondition fails; rhs clamped to 0
    // Meaning depends on the claim: problem pairs for the counting claims,
    // (x, weight) argmax entries for the distance claims.
    std::vector<std::pair<std::int64_t, std::int64_t>> witnesses;
    bool witnesses_truncated = false;

    const Rat& param(const std::string& name) const {
        for (const auto& [k, v] : params)
            if (k == name)
                return v;
        throw std::out_of_range("certificate has no parameter '" + name + "'");
    }
};

namespace detail {

/// (t/2)·(t/2 + 1), the quadratic lower bound shared by the counting claims.
inline Rat quadratic_bound(const Rat& t) {
    const Rat half = t / Rat(2);
    return half * (half + Rat(1));
}

inline void cap_pair_witnesses(Certificate& cert,
                               const std::vector<std::pair<std::int64_t, std::int64_t>>& all,
                               std::size_t cap) {
    if (cap == 0 || all.size() <= cap) {
        cert.witnesses = all;
        return;
    }
    cert.witnesses.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(cap));
    cert.witnesses_truncated = true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Counting claims on finite abelian groups.
// ---------------------------------------------------------------------------

/// |P(g)| >= ((a - z)/2)·((a - z)/2 + 1) where z = |Z(g)|.
inline Certificate certify_prop_2_1(const FiniteGroupMap& g, unsigned jobs = 1,
                                    std::size_t witness_cap = kDefaultWitnessCap) {
    Certificate cert;
    cert.claim_id = "PROP_2_1";
    const std::uint64_t a = g.order();
    const std::uint64_t z = setcount::group_zero_set(g).size();
    setcount::GridCount grid = setcount::group_problem_count(g, nullptr, jobs, witness_cap);

    cert.params.emplace_back("a", Rat(BigInt(a)));
    cert.params.emplace_back("z", Rat(BigInt(z)));
    cert.params.emplace_back("q", Rat(BigInt(z), BigInt(a)));
    cert.lhs = Rat(BigInt(grid.count));
    cert.rhs = detail::quadratic_bound(Rat(BigInt(a) - BigInt(z)));
    cert.holds = cert.lhs >= cert.rhs;
    for (const auto& [b, c] : grid.witnesses)
        cert.witnesses.emplace_back(static_cast<std::int64_t>(b), static_cast<std::int64_t>(c));
    cert.witnesses_truncated = grid.truncated;
    return cert;
}

/// |P_S(g)| >= ((a - z - 2s)/2)·((a - z - 2s)/2 + 1); vacuous when
/// a - z - 2s <= 0, i.e. when |S|/a >= (1 - |Z|/a)/2.
inline Certificate certify_prop_2_3(const FiniteGroupMap& g,
                                    const std::vector<std::uint64_t>& subset, unsigned jobs = 1,
                                    std::size_t witness_cap = kDefaultWitnessCap) {
    Certificate cert;
    cert.claim_id = "PROP_2_3";
    const std::uint64_t a = g.order();
    const std::uint64_t z = setcount::group_zero_set(g).size();
    // Distinct elements only; the mask built by the counter validates range.
    std::vector<std::uint64_t> s_sorted = subset;
    std::sort(s_sorted.begin(), s_sorted.end());
    s_sorted.erase(std::unique(s_sorted.begin(), s_sorted.end()), s_sorted.end());
    const std::uint64_t s = s_sorted.size();
    setcount::GridCount grid = setcount::group_problem_count(g, &s_sorted, jobs, witness_cap);

    cert.params.emplace_back("a", Rat(BigInt(a)));
    cert.params.emplace_back("z", Rat(BigInt(z)));
    cert.params.emplace_back("s", Rat(BigInt(s)));
    cert.params.emplace_back("q", Rat(BigInt(z), BigInt(a)));
    cert.params.emplace_back("p", Rat(BigInt(s), BigInt(a)));
    cert.lhs = Rat(BigInt(grid.count));
    const BigInt t = BigInt(a) - BigInt(z) - 2 * BigInt(s);
    if (t <= 0) {
        cert.vacuous = true;
        cert.rhs = Rat(0);
    } else {
        cert.rhs = detail::quadratic_bound(Rat(t));
    }
    cert.holds = cert.lhs >= cert.rhs;
    for (const auto& [b, c] : grid.witnesses)
        cert.witnesses.emplace_back(static_cast<std::int64_t>(b), static_cast<std::int64_t>(c));
    cert.witnesses_truncated = grid.truncated;
    return cert;
}

// ---------------------------------------------------------------------------
// Counting claims on interval maps [2a] -> Q.
// ---------------------------------------------------------------------------

namespace detail {

/// The restriction of f to [a], viewed as a map on Z/a; residue 0 stands for
/// the interval point a.
inline FiniteGroupMap cyclic_restriction(const ScalarIntervalMap& f) {
    FiniteGroup group({f.a()});
    return FiniteGroupMap::build(group, [&](std::uint64_t r) {
        return f.at(r == 0 ? f.a() : static_cast<std::int64_t>(r));
    });
}

}  // namespace detail

/// |P(f)| >= (a - z - 2m)^2/4 + (a - z - 2m)/2 with z = |Z(f)|, m = |NP(f)|;
/// vacuous when a - z - 2m <= 0.
inline Certificate certify_cor_2_5(const ScalarIntervalMap& f,
                                   std::size_t witness_cap = kDefaultWitnessCap) {
    Certificate cert;
    cert.claim_id = "COR_2_5";
    const std::int64_t a = f.a();
    const std::uint64_t z = setcount::zero_set(f).size();
    const std::vector<std::int64_t> np = setcount::np_set(f);
    const std::uint64_t m = np.size();
    const auto problems = setcount::problem_set(f);

    cert.params.emplace_back("a", Rat(a));
    cert.params.emplace_back("z", Rat(BigInt(z)));
    cert.params.emplace_back("m", Rat(BigInt(m)));
    cert.params.emplace_back("q", Rat(BigInt(z), BigInt(a)));
    cert.params.emplace_back("p", Rat(BigInt(m), BigInt(a)));
    cert.lhs = Rat(BigInt(problems.size()));
    const BigInt t = BigInt(a) - BigInt(z) - 2 * BigInt(m);
    if (t <= 0) {
        cert.vacuous = true;
        cert.rhs = Rat(0);
    } else {
        // (t/2)(t/2 + 1) = t^2/4 + t/2.
        cert.rhs = detail::quadratic_bound(Rat(t));
        // Mirror the derivation: the wrap-around problem pairs avoiding NP(f)
        // are a subset of P(f), and they already meet the bound.
        FiniteGroupMap cyc = detail::cyclic_restriction(f);
        std::vector<std::uint64_t> np_residues;
        np_residues.reserve(np.size());
        for (std::int64_t x : np)
            np_residues.push_back(static_cast<std::uint64_t>(x % a));
        setcount::GridCount ps = setcount::group_problem_count(cyc, &np_residues);
        if (Rat(BigInt(ps.count)) < cert.rhs || ps.count > problems.size())
            throw std::logic_error("COR_2_5: internal wrap-around count out of bounds");
        cert.params.emplace_back("ps", Rat(BigInt(ps.count)));
    }
    cert.holds = cert.lhs >= cert.rhs;
    detail::cap_pair_witnesses(cert, problems, witness_cap);
    return cert;
}

/// r(x) = a·f(x) - x·f(a); r(a) = 0 and P, P_1, P_a are unchanged.
inline ScalarIntervalMap reduce_to_zero_at_a(const ScalarIntervalMap& f) {
    const Rat fa = f.at(f.a());
    const Rat a_rat(f.a());
    return ScalarIntervalMap::build(
        f.a(), [&](std::int64_t x) { return a_rat * f.at(x) - Rat(x) * fa; });
}

/// |P(f)| >= (a - |P_1| - 2|P_a|)^2 / 4, for f with f(a) != a·f(1);
/// vacuous when a - |P_1| - 2|P_a| <= 0.
inline Certificate certify_prop_3_2(const ScalarIntervalMap& f,
                                    std::size_t witness_cap = kDefaultWitnessCap) {
    const std::int64_t a = f.a();
    if (f.at(a) == Rat(a) * f.at(1))
        throw std::invalid_argument("certify_prop_3_2: requires f(a) != a*f(1)");

    Certificate cert;
    cert.claim_id = "PROP_3_2";
    const std::uint64_t q1 = setcount::p1_set(f).size();
    const std::uint64_t pa = setcount::pa_set(f).size();
    const auto problems = setcount::problem_set(f);

    cert.params.emplace_back("a", Rat(a));
    cert.params.emplace_back("p1", Rat(BigInt(q1)));
    cert.params.emplace_back("pa", Rat(BigInt(pa)));
    cert.params.emplace_back("q", Rat(BigInt(q1), BigInt(a)));
    cert.params.emplace_back("p", Rat(BigInt(pa), BigInt(a)));
    cert.lhs = Rat(BigInt(problems.size()));
    const BigInt t = BigInt(a) - BigInt(q1) - 2 * BigInt(pa);
    if (t <= 0) {
        cert.vacuous = true;
        cert.rhs = Rat(0);
    } else {
        cert.rhs = Rat(t * t, BigInt(4));

        // Mirror the derivation: shift to r with r(a) = 0, check that the
        // shift preserves all three sets, that the zeros of r are no more
        // numerous than P_1(r) (chain of zeros), and that NP(r) = P_a(r).
        const ScalarIntervalMap r = reduce_to_zero_at_a(f);
        if (!r.at(a).is_zero())
            throw std::logic_error("PROP_3_2: reduction failed to vanish at a");
        if (setcount::problem_set(r) != problems || setcount::p1_set(r) != setcount::p1_set(f) ||
            setcount::pa_set(r) != setcount::pa_set(f))
            throw std::logic_error("PROP_3_2: reduction changed a problem set");
        if (setcount::zero_set(r).size() > setcount::p1_set(r).size())
            throw std::logic_error("PROP_3_2: zero count exceeds P_1 count after reduction");
        if (setcount::np_set(r) != setcount::pa_set(r))
            throw std::logic_error("PROP_3_2: NP and P_a disagree after reduction");
        Certificate inner = certify_cor_2_5(r, 0);
        if (!inner.vacuous && inner.rhs < cert.rhs)
            throw std::logic_error("PROP_3_2: inner bound weaker than stated bound");
        if (inner.vacuous || !inner.holds)
            throw std::logic_error("PROP_3_2: inner corollary failed");
    }
    cert.holds = cert.lhs >= cert.rhs;
    detail::cap_pair_witnesses(cert, problems, witness_cap);
    return cert;
}

// ---------------------------------------------------------------------------
// Distance claims on windowed maps Z -> Q^n.
// ---------------------------------------------------------------------------

namespace detail {

struct DistanceScan {
    std::int64_t max_weight = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> argmax;  // (x, weight)
    bool truncated = false;
};

/// max over the window of w_H(f(x) - x·v).
inline DistanceScan scan_distance_to_line(const WindowedMap& f, const SparseVec& v,
                                          std::size_t witness_cap) {
    DistanceScan scan;
    for (std::int64_t x = f.lo(); x <= f.hi(); ++x) {
        const std::int64_t w =
            static_cast<std::int64_t>(hamming_distance(f.at(x), Rat(x) * v));
        if (w > scan.max_weight) {
            scan.max_weight = w;
            scan.argmax.clear();
            scan.truncated = false;
        }
        if (w == scan.max_weight) {
            if (witness_cap == 0 || scan.argmax.size() < witness_cap)
                scan.argmax.emplace_back(x, w);
            else
                scan.truncated = true;
        }
    }
    return scan;
}

}  // namespace detail

/// max_x w_H(F(x) - x·F(1)) <= 28c over the window, for a c-quasihomomorphism.
inline Certificate certify_main_theorem(const WindowedMap& f, std::int64_t c,
                                        std::size_t witness_cap = kDefaultWitnessCap) {
    if (c < 0)
        throw std::invalid_argument("certify_main_theorem: c must be nonnegative");
    if (!f.contains(0) || !f.contains(1))
        throw std::invalid_argument("certify_main_theorem: window must contain 0 and 1");
    DefectReport defects = max_defect(f, 1);
    if (defects.max_defect > c)
        throw std::invalid_argument("certify_main_theorem: map is not a " + std::to_string(c) +
                                    "-quasihomomorphism on the window");

    Certificate cert;
    cert.claim_id = "MAIN_THM";
    const SparseVec& f1 = f.at(1);
    detail::DistanceScan scan = detail::scan_distance_to_line(f, f1, witness_cap);

    // For negative x whose mirror lies in the window, the distance is also
    // controlled by d(x) <= defect(x, -x) + w_H(f(0)) + d(-x); check that
    // route pointwise.
    const std::int64_t w0 = static_cast<std::int64_t>(hamming_weight(f.at(0)));
    for (std::int64_t x = f.lo(); x < 0; ++x) {
        if (!f.contains(-x))
            continue;
        const std::int64_t dx =
            static_cast<std::int64_t>(hamming_distance(f.at(x), Rat(x) * f1));
        const std::int64_t dmx =
            static_cast<std::int64_t>(hamming_distance(f.at(-x), Rat(-x) * f1));
        const std::int64_t mid = defect(f, x, -x);
        if (dx > mid + w0 + dmx)
            throw std::logic_error("MAIN_THM: negative-argument route violated");
    }

    cert.params.emplace_back("c", Rat(c));
    cert.params.emplace_back("max_defect", Rat(defects.max_defect));
    cert.lhs = Rat(scan.max_weight);
    cert.rhs = Rat(28) * Rat(c);
    cert.holds = cert.lhs <= cert.rhs;
    cert.witnesses = std::move(scan.argmax);
    cert.witnesses_truncated = scan.truncated;
    return cert;
}

/// With C' = max_x w_H(F(x) - x·v): max_x w_H(F(x) - x·F(1)) <= 2C'.
inline Certificate certify_factor2(const WindowedMap& f, const SparseVec& v,
                                   std::size_t witness_cap = kDefaultWitnessCap) {
    if (!f.contains(1))
        throw std::invalid_argument("certify_factor2: window must contain 1");
    if (v.dim() != f.dim())
        throw std::invalid_argument("certify_factor2: dimension mismatch");

    Certificate cert;
    cert.claim_id = "REMARK_FACTOR2";
    const SparseVec& f1 = f.at(1);
    detail::DistanceScan to_v = detail::scan_distance_to_line(f, v, 1);
    detail::DistanceScan to_f1 = detail::scan_distance_to_line(f, f1, witness_cap);

    // Pointwise: w_H(f(x) - x·f(1)) <= w_H(f(x) - x·v) + w_H(x·v - x·f(1)).
    for (std::int64_t x = f.lo(); x <= f.hi(); ++x) {
        const SparseVec xv = Rat(x) * v;
        const std::int64_t left =
            static_cast<std::int64_t>(hamming_distance(f.at(x), Rat(x) * f1));
        const std::int64_t right =
            static_cast<std::int64_t>(hamming_distance(f.at(x), xv)) +
            static_cast<std::int64_t>(hamming_distance(xv, Rat(x) * f1));
        if (left > right)
            throw std::logic_error("REMARK_FACTOR2: pointwise route violated");
    }

    cert.params.emplace_back("cprime", Rat(to_v.max_weight));
    cert.lhs = Rat(to_f1.max_weight);
    cert.rhs = Rat(2) * Rat(to_v.max_weight);
    cert.holds = cert.lhs <= cert.rhs;
    cert.witnesses = std::move(to_f1.argmax);
    cert.witnesses_truncated = to_f1.truncated;
    return cert;
}

// ---------------------------------------------------------------------------
// Level decomposition and the arithmetic of its lower bounds.
// ---------------------------------------------------------------------------

/// Positive-value class structure of a scalar group map.
struct LevelDecomposition {
    std::vector<Rat> values;           // distinct positive values, decreasing
    std::vector<std::uint64_t> sizes;  // class sizes, parallel to values
    std::uint64_t n = 0;               // number of points with positive value
    std::uint64_t n_prime = 0;         // number of points with negative value
};

inline LevelDecomposition level_decomposition(const FiniteGroupMap& g) {
    LevelDecomposition d;
    std::map<Rat, std::uint64_t> classes;  // positive values only
    for (std::uint64_t b = 0; b < g.order(); ++b) {
        const Rat& v = g.at(b);
        if (v > Rat(0)) {
            ++classes[v];
            ++d.n;
        } else if (v < Rat(0)) {
            ++d.n_prime;
        }
    }
    for (auto it = classes.rbegin(); it != classes.rend(); ++it) {
        d.values.push_back(it->first);
        d.sizes.push_back(it->second);
    }
    return d;
}

/// Σ_i n_i·(n_i + … + n_k).
inline BigInt staircase_sum(const std::vector<std::uint64_t>& sizes) {
    BigInt total = 0, suffix = 0;
    for (std::uint64_t v : sizes)
        suffix += BigInt(v);
    for (std::uint64_t v : sizes) {
        total += BigInt(v) * suffix;
        suffix -= BigInt(v);
    }
    return total;
}

/// Σ over the prefix where the suffix sum still covers the shift:
/// Σ_{i <= k'} n_i·(n_i + … + n_k − s).
inline BigInt shifted_staircase_sum(const std::vector<std::uint64_t>& sizes,
                                    const BigInt& shift) {
    BigInt total = 0, suffix = 0;
    for (std::uint64_t v : sizes)
        suffix += BigInt(v);
    for (std::uint64_t v : sizes) {
        if (suffix - shift < 0)
            break;
        total += BigInt(v) * (suffix - shift);
        suffix -= BigInt(v);
    }
    return total;
}

/// (n − s)·(n − s + 1)/2.
inline BigInt shifted_triangle(const BigInt& n, const BigInt& shift) {
    const BigInt t = n - shift;
    return t * (t + 1) / 2;
}

/// (n² + n'²)/2 >= ((n + n')/2)², i.e. 2(n² + n'²) >= (n + n')².
inline bool cauchy_schwarz_step(const BigInt& n, const BigInt& n_prime) {
    return 2 * (n * n + n_prime * n_prime) >= (n + n_prime) * (n + n_prime);
}

}  // namespace quasihom::certify
