#pragma once

#include "quasihom/rat.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace quasihom {

/// Finitely supported vector in Q^dim with 1-based indices.
/// Entries are kept sorted by index; zeros are never stored.
class SparseVec {
public:
    using Entry = std::pair<std::int64_t, Rat>;

    explicit SparseVec(std::int64_t dim) : dim_(dim) {
        if (dim <= 0)
            throw std::invalid_argument("SparseVec: dim must be positive");
    }

    SparseVec(std::int64_t dim, std::vector<Entry> entries) : SparseVec(dim) {
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
        for (const auto& [idx, val] : entries) {
            if (idx < 1 || idx > dim_)
                throw std::invalid_argument("SparseVec: index out of range");
            if (!entries_.empty() && entries_.back().first == idx)
                throw std::invalid_argument("SparseVec: duplicate index");
            if (!val.is_zero())
                entries_.emplace_back(idx, val);
        }
    }

    std::int64_t dim() const { return dim_; }
    const std::vector<Entry>& entries() const { return entries_; }

    Rat get(std::int64_t idx) const {
        if (idx < 1 || idx > dim_)
            throw std::out_of_range("SparseVec: index out of range");
        auto it = std::lower_bound(entries_.begin(), entries_.end(), idx,
                                   [](const Entry& e, std::int64_t i) { return e.first < i; });
        if (it != entries_.end() && it->first == idx)
            return it->second;
        return Rat(0);
    }

    void set(std::int64_t idx, const Rat& val) {
        if (idx < 1 || idx > dim_)
            throw std::out_of_range("SparseVec: index out of range");
        auto it = std::lower_bound(entries_.begin(), entries_.end(), idx,
                                   [](const Entry& e, std::int64_t i) { return e.first < i; });
        if (it != entries_.end() && it->first == idx) {
            if (val.is_zero())
                entries_.erase(it);
            else
                it->second = val;
        } else if (!val.is_zero()) {
            entries_.insert(it, {idx, val});
        }
    }

    SparseVec operator-() const {
        SparseVec r(dim_);
        r.entries_.reserve(entries_.size());
        for (const auto& [idx, val] : entries_)
            r.entries_.emplace_back(idx, -val);
        return r;
    }

    friend SparseVec operator+(const SparseVec& a, const SparseVec& b) {
        return merge(a, b, /*subtract=*/false);
    }

    friend SparseVec operator-(const SparseVec& a, const SparseVec& b) {
        return merge(a, b, /*subtract=*/true);
    }

    friend SparseVec operator*(const Rat& s, const SparseVec& v) {
        SparseVec r(v.dim_);
        if (s.is_zero())
            return r;
        r.entries_.reserve(v.entries_.size());
        for (const auto& [idx, val] : v.entries_)
            r.entries_.emplace_back(idx, s * val);
        return r;
    }

    friend bool operator==(const SparseVec& a, const SparseVec& b) {
        return a.dim_ == b.dim_ && a.entries_ == b.entries_;
    }
    friend bool operator!=(const SparseVec& a, const SparseVec& b) { return !(a == b); }

private:
    static SparseVec merge(const SparseVec& a, const SparseVec& b, bool subtract) {
        if (a.dim_ != b.dim_)
            throw std::invalid_argument("SparseVec: dimension mismatch");
        SparseVec r(a.dim_);
        r.entries_.reserve(a.entries_.size() + b.entries_.size());
        auto ia = a.entries_.begin(), ib = b.entries_.begin();
        while (ia != a.entries_.end() || ib != b.entries_.end()) {
            if (ib == b.entries_.end() || (ia != a.entries_.end() && ia->first < ib->first)) {
                r.entries_.push_back(*ia++);
            } else if (ia == a.entries_.end() || ib->first < ia->first) {
                r.entries_.emplace_back(ib->first, subtract ? -ib->second : ib->second);
                ++ib;
            } else {
                Rat v = subtract ? ia->second - ib->second : ia->second + ib->second;
                if (!v.is_zero())
                    r.entries_.emplace_back(ia->first, std::move(v));
                ++ia;
                ++ib;
            }
        }
        return r;
    }

    std::int64_t dim_;
    std::vector<Entry> entries_;
};

/// Number of nonzero coordinates.
inline std::int64_t hamming_weight(const SparseVec& v) {
    return static_cast<std::int64_t>(v.entries().size());
}

/// hamming_weight(v - u), counted without materializing the difference.
inline std::int64_t hamming_distance(const SparseVec& u, const SparseVec& v) {
    if (u.dim() != v.dim())
        throw std::invalid_argument("hamming_distance: dimension mismatch");
    std::int64_t count = 0;
    auto iu = u.entries().begin(), iv = v.entries().begin();
    const auto eu = u.entries().end(), ev = v.entries().end();
    while (iu != eu || iv != ev) {
        if (iv == ev || (iu != eu && iu->first < iv->first)) {
            ++count;
            ++iu;
        } else if (iu == eu || iv->first < iu->first) {
            ++count;
            ++iv;
        } else {
            if (iu->second != iv->second)
                ++count;
            ++iu;
            ++iv;
        }
    }
    return count;
}

/// hamming_weight(a - b - c) by a three-way merge; all dims must agree.
/// This is the inner loop of defect scans, so no temporaries are built.
inline std::int64_t weight_of_triple_difference(const SparseVec& a, const SparseVec& b,
                                                const SparseVec& c) {
    if (a.dim() != b.dim() || a.dim() != c.dim())
        throw std::invalid_argument("weight_of_triple_difference: dimension mismatch");
    std::int64_t count = 0;
    auto ia = a.entries().begin(), ib = b.entries().begin(), ic = c.entries().begin();
    const auto ea = a.entries().end(), eb = b.entries().end(), ec = c.entries().end();
    constexpr std::int64_t kNone = INT64_MAX;
    while (ia != ea || ib != eb || ic != ec) {
        const std::int64_t idx = std::min({ia != ea ? ia->first : kNone,
                                           ib != eb ? ib->first : kNone,
                                           ic != ec ? ic->first : kNone});
        Rat sum(0);
        if (ia != ea && ia->first == idx)
            sum += (ia++)->second;
        if (ib != eb && ib->first == idx)
            sum -= (ib++)->second;
        if (ic != ec && ic->first == idx)
            sum -= (ic++)->second;
        if (!sum.is_zero())
            ++count;
    }
    return count;
}

}  // namespace quasihom
