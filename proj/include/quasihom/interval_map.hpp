#pragma once

#include "quasihom/rat.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace quasihom {

/// A scalar map defined on exactly {1, ..., 2a} with a > 1.
class ScalarIntervalMap {
public:
    explicit ScalarIntervalMap(std::int64_t a) : a_(a) {
        if (a <= 1)
            throw std::invalid_argument("ScalarIntervalMap: a must exceed 1");
        values_.assign(static_cast<std::size_t>(2 * a), Rat(0));
    }

    static ScalarIntervalMap build(std::int64_t a,
                                   const std::function<Rat(std::int64_t)>& fn) {
        ScalarIntervalMap f(a);
        for (std::int64_t x = 1; x <= 2 * a; ++x)
            f.set(x, fn(x));
        return f;
    }

    std::int64_t a() const { return a_; }

    const Rat& at(std::int64_t x) const {
        check(x);
        return values_[static_cast<std::size_t>(x - 1)];
    }

    void set(std::int64_t x, Rat v) {
        check(x);
        values_[static_cast<std::size_t>(x - 1)] = std::move(v);
    }

    friend bool operator==(const ScalarIntervalMap& f, const ScalarIntervalMap& g) {
        return f.a_ == g.a_ && f.values_ == g.values_;
    }

private:
    void check(std::int64_t x) const {
        if (x < 1 || x > 2 * a_)
            throw std::out_of_range("ScalarIntervalMap: argument outside [1, 2a]");
    }

    std::int64_t a_;
    std::vector<Rat> values_;
};

}  // namespace quasihom
