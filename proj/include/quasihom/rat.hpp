#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace quasihom {

using BigInt = boost::multiprecision::cpp_int;

/// Exact arbitrary-precision rational in canonical form:
/// gcd(|num|, den) = 1 and den >= 1. All arithmetic is exact.
class Rat {
public:
    Rat() : value_(0) {}
    Rat(int n) : value_(n) {}
    Rat(std::int64_t n) : value_(n) {}
    Rat(const BigInt& n) : value_(n) {}

    Rat(BigInt num, BigInt den) {
        if (den == 0)
            throw std::invalid_argument("Rat: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        value_ = boost::multiprecision::cpp_rational(num, den);
    }

    Rat(std::int64_t num, std::int64_t den) : Rat(BigInt(num), BigInt(den)) {}

    /// Parses "num/den" or a bare integer "num"; canonicalizes.
    static Rat parse(std::string_view s) {
        const auto slash = s.find('/');
        if (s.empty() || slash == 0 || slash == s.size() - 1)
            throw std::invalid_argument("Rat: cannot parse '" + std::string(s) + "'");
        try {
            if (slash == std::string_view::npos)
                return Rat(BigInt(std::string(s)));
            BigInt num{std::string(s.substr(0, slash))};
            BigInt den{std::string(s.substr(slash + 1))};
            return Rat(num, den);
        } catch (const std::runtime_error&) {
            throw std::invalid_argument("Rat: cannot parse '" + std::string(s) + "'");
        }
    }

    BigInt num() const { return boost::multiprecision::numerator(value_); }
    BigInt den() const { return boost::multiprecision::denominator(value_); }

    bool is_zero() const { return value_.is_zero(); }
    int sign() const { return value_.sign(); }

    /// Mathematical floor (round toward -inf).
    BigInt floor() const {
        BigInt n = num(), d = den();
        BigInt q = n / d;
        if (n < 0 && q * d != n)
            --q;
        return q;
    }

    Rat operator-() const { return Rat(-value_); }

    Rat& operator+=(const Rat& o) { value_ += o.value_; return *this; }
    Rat& operator-=(const Rat& o) { value_ -= o.value_; return *this; }
    Rat& operator*=(const Rat& o) { value_ *= o.value_; return *this; }

    Rat& operator/=(const Rat& o) {
        if (o.is_zero())
            throw std::invalid_argument("Rat: division by zero");
        value_ /= o.value_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.value_ != b.value_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.value_ < b.value_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.value_ <= b.value_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.value_ > b.value_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.value_ >= b.value_; }

    double to_double() const { return static_cast<double>(value_); }

    /// Always "num/den", lowest terms, positive denominator ("0/1", "-3/2").
    std::string str() const { return num().str() + "/" + den().str(); }

private:
    explicit Rat(boost::multiprecision::cpp_rational v) : value_(std::move(v)) {}

    boost::multiprecision::cpp_rational value_;
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

}  // namespace quasihom
