#pragma once

#include "quasihom/certify.hpp"
#include "quasihom/rat.hpp"
#include "quasihom/windowed_map.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quasihom {

inline bool is_prime(std::int64_t p) {
    if (p < 2)
        return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

/// A map from an integer window into (Z/p)^n; entries are residues in [0, p).
class ModWindowedMap {
public:
    static ModWindowedMap build(std::int64_t p, std::int64_t lo, std::int64_t hi,
                                std::int64_t dim,
                                const std::function<std::vector<std::int64_t>(std::int64_t)>& fn) {
        if (p < 2)
            throw std::invalid_argument("ModWindowedMap: modulus must be at least 2");
        if (lo > hi)
            throw std::invalid_argument("ModWindowedMap: empty window");
        if (dim < 0)
            throw std::invalid_argument("ModWindowedMap: negative dimension");
        ModWindowedMap f;
        f.p_ = p;
        f.lo_ = lo;
        f.hi_ = hi;
        f.dim_ = dim;
        f.values_.reserve(static_cast<std::size_t>(hi - lo + 1));
        for (std::int64_t x = lo; x <= hi; ++x) {
            std::vector<std::int64_t> row = fn(x);
            if (static_cast<std::int64_t>(row.size()) != dim)
                throw std::invalid_argument("ModWindowedMap: row has wrong dimension");
            for (auto& r : row)
                r = mod(r, p);
            f.values_.push_back(std::move(row));
        }
        return f;
    }

    std::int64_t p() const { return p_; }
    std::int64_t lo() const { return lo_; }
    std::int64_t hi() const { return hi_; }
    std::int64_t dim() const { return dim_; }
    bool contains(std::int64_t x) const { return lo_ <= x && x <= hi_; }

    const std::vector<std::int64_t>& at(std::int64_t x) const {
        if (!contains(x))
            throw std::out_of_range("ModWindowedMap: " + std::to_string(x) +
                                    " outside window");
        return values_[static_cast<std::size_t>(x - lo_)];
    }

    static std::int64_t mod(std::int64_t v, std::int64_t p) {
        const std::int64_t r = v % p;
        return r < 0 ? r + p : r;
    }

private:
    std::int64_t p_ = 2, lo_ = 0, hi_ = 0, dim_ = 0;
    std::vector<std::vector<std::int64_t>> values_;
};

/// Number of coordinates where f(x+y) - f(x) - f(y) is nonzero mod p.
inline std::int64_t mod_defect(const ModWindowedMap& f, std::int64_t x, std::int64_t y) {
    const auto& s = f.at(x + y);
    const auto& u = f.at(x);
    const auto& v = f.at(y);
    std::int64_t w = 0;
    for (std::int64_t i = 0; i < f.dim(); ++i)
        if ((s[static_cast<std::size_t>(i)] - u[static_cast<std::size_t>(i)] -
             v[static_cast<std::size_t>(i)]) % f.p() != 0)
            ++w;
    return w;
}

/// Max of mod_defect over all pairs with x, y, x+y in the window.
inline std::int64_t mod_max_defect(const ModWindowedMap& f) {
    std::int64_t best = 0;
    for (std::int64_t x = f.lo(); x <= f.hi(); ++x) {
        const std::int64_t y_hi = std::min(f.hi(), f.hi() - x);
        const std::int64_t y_lo = std::max(f.lo(), f.lo() - x);
        for (std::int64_t y = y_lo; y <= y_hi; ++y)
            best = std::max(best, mod_defect(f, x, y));
    }
    return best;
}

/// w_H(f(x) - k·f(y) mod p) for an integer multiplier k.
inline std::int64_t mod_weight_minus_multiple(const ModWindowedMap& f, std::int64_t x,
                                              std::int64_t k, std::int64_t y) {
    const auto& u = f.at(x);
    const auto& v = f.at(y);
    const std::int64_t km = ModWindowedMap::mod(k, f.p());
    std::int64_t w = 0;
    for (std::int64_t i = 0; i < f.dim(); ++i)
        if ((u[static_cast<std::size_t>(i)] - km * v[static_cast<std::size_t>(i)]) % f.p() != 0)
            ++w;
    return w;
}

/// Reduce a rational-valued windowed map mod p. Every value's denominator must
/// be invertible mod p.
inline ModWindowedMap mod_reduce(const WindowedMap& f, std::int64_t p) {
    if (p < 2)
        throw std::invalid_argument("mod_reduce: modulus must be at least 2");
    auto mod_of_rat = [p](const Rat& r) {
        const BigInt bp(p);
        const BigInt num_mod = r.num() % bp;
        const BigInt den_mod = r.den() % bp;
        std::int64_t den = static_cast<std::int64_t>(den_mod);
        if (ModWindowedMap::mod(den, p) == 0)
            throw std::invalid_argument("mod_reduce: denominator not invertible mod p");
        // den^(-1) mod p by brute force; p is small here.
        std::int64_t inv = 0;
        const std::int64_t d = ModWindowedMap::mod(den, p);
        for (std::int64_t t = 1; t < p; ++t)
            if ((d * t) % p == 1) {
                inv = t;
                break;
            }
        if (inv == 0)
            throw std::invalid_argument("mod_reduce: denominator not invertible mod p");
        return ModWindowedMap::mod(static_cast<std::int64_t>(num_mod) * inv, p);
    };
    return ModWindowedMap::build(p, f.lo(), f.hi(), f.dim(), [&](std::int64_t x) {
        std::vector<std::int64_t> row(static_cast<std::size_t>(f.dim()), 0);
        for (const auto& [i, v] : f.at(x).entries())
            row[static_cast<std::size_t>(i - 1)] = mod_of_rat(v);
        return row;
    });
}

namespace certify {

/// max_{|x| <= x_max} w_H(F(x) - x·F(1) mod p) <= 2(p-1)c on a window
/// [-W, W] wide enough that every evaluation along the way stays inside:
/// x_max = W - p. Also checks w_H(F(uv) - u·F(v)) <= (u-1)c exhaustively for
/// u in [1, 2p].
inline Certificate certify_finite_char(const ModWindowedMap& f, std::int64_t p,
                                       std::int64_t c,
                                       std::size_t witness_cap = kDefaultWitnessCap) {
    if (!is_prime(p))
        throw std::invalid_argument("certify_finite_char: p must be prime");
    if (f.p() != p)
        throw std::invalid_argument("certify_finite_char: map modulus differs from p");
    if (c < 0)
        throw std::invalid_argument("certify_finite_char: c must be nonnegative");
    if (f.lo() != -f.hi() || f.hi() < p + 1)
        throw std::invalid_argument(
            "certify_finite_char: window must be [-W, W] with W >= p + 1");
    if (mod_max_defect(f) > c)
        throw std::invalid_argument("certify_finite_char: map is not a " +
                                    std::to_string(c) +
                                    "-quasihomomorphism on the window");

    const std::int64_t w_window = f.hi();
    const std::int64_t x_max = w_window - p;

    // Building block: w_H(f(uv) - u f(v)) <= (u-1)c for u >= 1.
    for (std::int64_t u = 1; u <= 2 * p; ++u) {
        for (std::int64_t v = f.lo(); v <= f.hi(); ++v) {
            if (u * v < f.lo() || u * v > f.hi())
                continue;
            if (mod_weight_minus_multiple(f, u * v, u, v) > (u - 1) * c)
                throw std::logic_error("REMARK_FINCHAR: multiple inequality violated at u=" +
                                       std::to_string(u) + " v=" + std::to_string(v));
        }
    }

    Certificate cert;
    cert.claim_id = "REMARK_FINCHAR";
    std::int64_t max_w = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> argmax;
    bool truncated = false;
    for (std::int64_t x = -x_max; x <= x_max; ++x) {
        const std::int64_t w = mod_weight_minus_multiple(f, x, x, 1);
        if (w > max_w) {
            max_w = w;
            argmax.clear();
            truncated = false;
        }
        if (w == max_w) {
            if (witness_cap == 0 || argmax.size() < witness_cap)
                argmax.emplace_back(x, w);
            else
                truncated = true;
        }
    }

    cert.params.emplace_back("p", Rat(p));
    cert.params.emplace_back("c", Rat(c));
    cert.params.emplace_back("x_max", Rat(x_max));
    cert.lhs = Rat(max_w);
    cert.rhs = Rat(2) * Rat(p - 1) * Rat(c);
    cert.holds = cert.lhs <= cert.rhs;
    cert.witnesses = std::move(argmax);
    cert.witnesses_truncated = truncated;
    return cert;
}

}  // namespace certify

}  // namespace quasihom
