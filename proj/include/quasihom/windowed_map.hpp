#pragma once

#include "quasihom/sparse_vec.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace quasihom {

/// A map from the closed integer interval [lo, hi] into Q^dim.
/// Operations never evaluate outside the window.
class WindowedMap {
public:
    WindowedMap(std::int64_t lo, std::int64_t hi, std::int64_t dim)
        : lo_(lo), hi_(hi), dim_(dim) {
        if (lo > hi)
            throw std::invalid_argument("WindowedMap: lo > hi");
        if (dim <= 0)
            throw std::invalid_argument("WindowedMap: dim must be positive");
        values_.assign(static_cast<std::size_t>(hi - lo + 1), SparseVec(dim));
    }

    static WindowedMap build(std::int64_t lo, std::int64_t hi, std::int64_t dim,
                             const std::function<SparseVec(std::int64_t)>& fn) {
        WindowedMap f(lo, hi, dim);
        for (std::int64_t x = lo; x <= hi; ++x)
            f.set(x, fn(x));
        return f;
    }

    std::int64_t lo() const { return lo_; }
    std::int64_t hi() const { return hi_; }
    std::int64_t dim() const { return dim_; }

    bool contains(std::int64_t x) const { return lo_ <= x && x <= hi_; }

    const SparseVec& at(std::int64_t x) const {
        if (!contains(x))
            throw std::out_of_range("WindowedMap: argument outside window");
        return values_[static_cast<std::size_t>(x - lo_)];
    }

    void set(std::int64_t x, SparseVec v) {
        if (!contains(x))
            throw std::out_of_range("WindowedMap: argument outside window");
        if (v.dim() != dim_)
            throw std::invalid_argument("WindowedMap: value has wrong dimension");
        values_[static_cast<std::size_t>(x - lo_)] = std::move(v);
    }

private:
    std::int64_t lo_, hi_, dim_;
    std::vector<SparseVec> values_;
};

/// hamming_weight(f(x+y) - f(x) - f(y)); x, y and x+y must lie in the window.
inline std::int64_t defect(const WindowedMap& f, std::int64_t x, std::int64_t y) {
    return weight_of_triple_difference(f.at(x + y), f.at(x), f.at(y));
}

struct DefectReport {
    std::int64_t max_defect = 0;
    /// All argmax pairs in row-major order; truncated to witness_cap when
    /// a nonzero cap is given.
    std::vector<std::pair<std::int64_t, std::int64_t>> witnesses;
    std::uint64_t witness_count = 0;  // total argmax pairs, even when truncated
    std::uint64_t pairs_scanned = 0;
};

/// Scans every pair (x, y) with x, y, x+y in the window. witness_cap == 0
/// keeps the full argmax list.
inline DefectReport max_defect(const WindowedMap& f, std::size_t witness_cap = 0) {
    if (f.lo() > f.hi())
        throw std::invalid_argument("max_defect: empty window");
    DefectReport report;
    for (std::int64_t x = f.lo(); x <= f.hi(); ++x) {
        for (std::int64_t y = f.lo(); y <= f.hi(); ++y) {
            if (!f.contains(x + y))
                continue;
            ++report.pairs_scanned;
            const std::int64_t d = defect(f, x, y);
            if (d > report.max_defect) {
                report.max_defect = d;
                report.witnesses.clear();
                report.witness_count = 0;
            }
            if (d == report.max_defect) {
                ++report.witness_count;
                if (witness_cap == 0 || report.witnesses.size() < witness_cap)
                    report.witnesses.emplace_back(x, y);
            }
        }
    }
    return report;
}

/// True iff every in-window defect is at most c; stops at the first violation.
inline bool is_quasihomomorphism(const WindowedMap& f, std::int64_t c,
                                 std::pair<std::int64_t, std::int64_t>* violation = nullptr) {
    for (std::int64_t x = f.lo(); x <= f.hi(); ++x) {
        for (std::int64_t y = f.lo(); y <= f.hi(); ++y) {
            if (!f.contains(x + y))
                continue;
            if (defect(f, x, y) > c) {
                if (violation)
                    *violation = {x, y};
                return false;
            }
        }
    }
    return true;
}

}  // namespace quasihom
