#pragma once

#include "quasihom/rat.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quasihom {

/// Finite abelian group Z/m1 x ... x Z/mr. Elements are addressed by a flat
/// index in [0, order); the first factor is the most significant digit, so
/// flat order matches row-major iteration over residue tuples.
class FiniteGroup {
public:
    explicit FiniteGroup(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
        if (moduli_.empty())
            throw std::invalid_argument("FiniteGroup: need at least one modulus");
        order_ = 1;
        for (std::int64_t m : moduli_) {
            if (m < 1)
                throw std::invalid_argument("FiniteGroup: moduli must be >= 1");
            if (order_ > (1LL << 40) / m)
                throw std::invalid_argument("FiniteGroup: order too large");
            order_ *= m;
        }
    }

    const std::vector<std::int64_t>& moduli() const { return moduli_; }
    std::uint64_t order() const { return static_cast<std::uint64_t>(order_); }

    std::uint64_t add(std::uint64_t i, std::uint64_t j) const {
        if (moduli_.size() == 1)
            return (i + j) % static_cast<std::uint64_t>(moduli_[0]);
        std::uint64_t result = 0;
        for (std::size_t k = moduli_.size(); k-- > 0;) {
            const auto m = static_cast<std::uint64_t>(moduli_[k]);
            result += ((i % m) + (j % m)) % m * place_value(k);
            i /= m;
            j /= m;
        }
        return result;
    }

    std::vector<std::int64_t> residues(std::uint64_t idx) const {
        std::vector<std::int64_t> r(moduli_.size());
        for (std::size_t k = moduli_.size(); k-- > 0;) {
            r[k] = static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(moduli_[k]));
            idx /= static_cast<std::uint64_t>(moduli_[k]);
        }
        return r;
    }

    std::uint64_t flatten(const std::vector<std::int64_t>& residues) const {
        if (residues.size() != moduli_.size())
            throw std::invalid_argument("FiniteGroup: residue tuple has wrong arity");
        std::uint64_t idx = 0;
        for (std::size_t k = 0; k < moduli_.size(); ++k) {
            if (residues[k] < 0 || residues[k] >= moduli_[k])
                throw std::invalid_argument("FiniteGroup: residue out of range");
            idx = idx * static_cast<std::uint64_t>(moduli_[k]) +
                  static_cast<std::uint64_t>(residues[k]);
        }
        return idx;
    }

    /// Comma-joined residue tuple, e.g. "1,2"; used as the JSON key.
    std::string element_name(std::uint64_t idx) const {
        const auto r = residues(idx);
        std::string s;
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (k)
                s += ',';
            s += std::to_string(r[k]);
        }
        return s;
    }

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
        return a.moduli_ == b.moduli_;
    }

private:
    std::uint64_t place_value(std::size_t k) const {
        std::uint64_t p = 1;
        for (std::size_t j = k + 1; j < moduli_.size(); ++j)
            p *= static_cast<std::uint64_t>(moduli_[j]);
        return p;
    }

    std::vector<std::int64_t> moduli_;
    std::int64_t order_;
};

/// A map from a finite abelian group into Q, stored densely by flat index.
class FiniteGroupMap {
public:
    explicit FiniteGroupMap(FiniteGroup group)
        : group_(std::move(group)), values_(group_.order(), Rat(0)) {}

    static FiniteGroupMap build(FiniteGroup group,
                                const std::function<Rat(std::uint64_t)>& fn) {
        FiniteGroupMap g(std::move(group));
        for (std::uint64_t i = 0; i < g.order(); ++i)
            g.set(i, fn(i));
        return g;
    }

    const FiniteGroup& group() const { return group_; }
    std::uint64_t order() const { return group_.order(); }

    const Rat& at(std::uint64_t idx) const {
        if (idx >= values_.size())
            throw std::out_of_range("FiniteGroupMap: element index out of range");
        return values_[idx];
    }

    void set(std::uint64_t idx, Rat v) {
        if (idx >= values_.size())
            throw std::out_of_range("FiniteGroupMap: element index out of range");
        values_[idx] = std::move(v);
    }

private:
    FiniteGroup group_;
    std::vector<Rat> values_;
};

}  // namespace quasihom
