#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <utility>

#include "danzer/dyadic.hpp"
#include "danzer/errors.hpp"

namespace danzer {

// floor(a / b) for b > 0, rounding toward -infinity.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

/// Exact rational p/q on arbitrary-precision integers, always reduced, q > 0.
///
/// Used where dyadic arithmetic is not closed: box corners with odd
/// denominators (e.g. boxes of exact volume 64 with non-power-of-two sides)
/// and Sturm-sequence coefficients.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(int v) : num_(v), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(Int n) : num_(std::move(n)), den_(1) {}
    Rational(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    Rational(const Dyadic& x) {
        if (x.exponent() >= 0) {
            num_ = x.mantissa() << static_cast<unsigned long long>(x.exponent());
            den_ = 1;
        } else {
            num_ = x.mantissa();
            den_ = Int(1) << static_cast<unsigned long long>(-x.exponent());
        }
    }

    static Rational from_double(double x) { return Rational(Dyadic::from_double(x)); }

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }
    bool is_integer() const { return den_ == 1; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) fail(errc::bad_input, "division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend int cmp(const Rational& a, const Rational& b) {
        Int lhs = a.num_ * b.den_;
        Int rhs = b.num_ * a.den_;
        if (lhs < rhs) return -1;
        if (lhs > rhs) return 1;
        return 0;
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a, b) < 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a, b) >= 0; }

    Rational half() const { return Rational(num_, den_ * 2); }

    /// floor(value / 2^k), exact.
    Int floor_shift(long long k) const {
        if (k >= 0) return floor_div(num_, den_ << static_cast<unsigned long long>(k));
        return floor_div(num_ << static_cast<unsigned long long>(-k), den_);
    }

    /// Largest k with 2^k <= value; requires value > 0.
    long long floor_log2() const {
        if (sign() <= 0) fail(errc::bad_input, "floor_log2 needs a positive value");
        auto c = static_cast<long long>(boost::multiprecision::msb(num_)) -
                 static_cast<long long>(boost::multiprecision::msb(den_));
        // 2^c is within a factor of 2 of num/den; settle the endpoints exactly.
        while (pow2_le(c + 1)) ++c;
        while (!pow2_le(c)) --c;
        return c;
    }

    bool is_pow2() const {
        if (sign() <= 0) return false;
        return (num_ == 1 && int_is_pow2(den_)) || (den_ == 1 && int_is_pow2(num_));
    }

    Int floor() const { return floor_div(num_, den_); }

    long double to_long_double() const {
        // Scale so the quotient carries ~96 significant bits before rounding.
        long long shift = 0;
        auto bn = num_.is_zero() ? 0 : static_cast<long long>(boost::multiprecision::msb(boost::multiprecision::abs(num_)));
        auto bd = static_cast<long long>(boost::multiprecision::msb(den_));
        shift = 96 - (bn - bd);
        Int scaled = shift >= 0 ? Int(num_ << static_cast<unsigned long long>(shift)) : Int(num_ >> static_cast<unsigned long long>(-shift));
        Int q = scaled / den_;
        return Dyadic(q, -shift).to_long_double();
    }
    double to_double() const { return static_cast<double>(to_long_double()); }

    std::string to_string() const { return num_.str() + "/" + den_.str(); }

  private:
    // 2^k <= num/den ?
    bool pow2_le(long long k) const {
        if (k >= 0) return (den_ << static_cast<unsigned long long>(k)) <= num_;
        return den_ <= (num_ << static_cast<unsigned long long>(-k));
    }

    void normalize() {
        if (den_.is_zero()) fail(errc::bad_input, "zero denominator");
        if (den_ < 0) {
            den_ = -den_;
            num_ = -num_;
        }
        if (num_.is_zero()) {
            den_ = 1;
            return;
        }
        Int g = boost::multiprecision::gcd(boost::multiprecision::abs(num_), den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    Int num_, den_;
};

inline Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }
inline double to_double(const Rational& x) { return x.to_double(); }
inline long double to_long_double(const Rational& x) { return x.to_long_double(); }
inline Rational half(const Rational& x) { return x.half(); }
inline Int floor_shift(const Rational& x, long long k) { return x.floor_shift(k); }
inline long long floor_log2(const Rational& x) { return x.floor_log2(); }
inline bool is_pow2(const Rational& x) { return x.is_pow2(); }

}  // namespace danzer
