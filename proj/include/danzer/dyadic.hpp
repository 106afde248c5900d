#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "danzer/errors.hpp"

namespace danzer {

using Int = boost::multiprecision::cpp_int;

// floor(m / 2^s) for s >= 0, rounding toward -infinity.
inline Int floor_div_pow2(const Int& m, long long s) {
    if (s <= 0) return m << static_cast<unsigned long long>(-s);
    if (m >= 0) return m >> static_cast<unsigned long long>(s);
    Int a = -m;
    Int q = a >> static_cast<unsigned long long>(s);
    if ((a & ((Int(1) << static_cast<unsigned long long>(s)) - 1)) != 0) ++q;
    return -q;
}

inline bool int_is_pow2(const Int& m) {
    if (m <= 0) return false;
    return boost::multiprecision::lsb(m) == boost::multiprecision::msb(m);
}

/// Exact binary rational m * 2^e with arbitrary-precision mantissa.
///
/// Canonical form: the mantissa is odd or zero, and zero carries exponent 0.
/// All arithmetic ( +, -, *, comparisons ) is exact; nothing ever rounds.
class Dyadic {
  public:
    Dyadic() : mant_(0), exp_(0) {}
    Dyadic(int v) : mant_(v), exp_(0) { normalize(); }
    Dyadic(long long v) : mant_(v), exp_(0) { normalize(); }
    Dyadic(Int m, long long e) : mant_(std::move(m)), exp_(e) { normalize(); }

    static Dyadic pow2(long long k) { return Dyadic(Int(1), k); }

    // Doubles are binary rationals, so this conversion is exact.
    static Dyadic from_double(double x) {
        if (!std::isfinite(x)) fail(errc::bad_input, "non-finite value");
        if (x == 0.0) return Dyadic();
        int e2 = 0;
        double f = std::frexp(x, &e2);
        auto m = static_cast<long long>(std::ldexp(f, 53));
        return Dyadic(Int(m), static_cast<long long>(e2) - 53);
    }

    static Dyadic from_long_double(long double x) {
        if (!std::isfinite((double)x)) fail(errc::bad_input, "non-finite value");
        if (x == 0.0L) return Dyadic();
        int e2 = 0;
        long double f = frexpl(x, &e2);  // |f| in [0.5, 1)
        bool neg = f < 0;
        if (neg) f = -f;
        auto m = static_cast<unsigned long long>(ldexpl(f, 64));
        Int mi(m);
        if (neg) mi = -mi;
        return Dyadic(std::move(mi), static_cast<long long>(e2) - 64);
    }

    const Int& mantissa() const { return mant_; }
    long long exponent() const { return exp_; }
    bool is_zero() const { return mant_.is_zero(); }
    int sign() const { return mant_.sign(); }

    /// floor(value / 2^k), exact.
    Int floor_shift(long long k) const { return floor_div_pow2(mant_, k - exp_); }

    /// Largest k with 2^k <= value; requires value > 0.
    long long floor_log2() const {
        if (sign() <= 0) fail(errc::bad_input, "floor_log2 needs a positive value");
        return static_cast<long long>(boost::multiprecision::msb(mant_)) + exp_;
    }

    bool is_pow2() const { return mant_ == 1; }

    /// True iff value is an integer multiple of 2^k.
    bool is_multiple_of_pow2(long long k) const { return is_zero() || exp_ >= k; }

    Dyadic mul_pow2(long long k) const {
        if (is_zero()) return *this;
        return Dyadic(mant_, exp_ + k);
    }
    Dyadic half() const { return mul_pow2(-1); }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        long long e = std::min(a.exp_, b.exp_);
        Int m = (a.mant_ << static_cast<unsigned long long>(a.exp_ - e)) +
                (b.mant_ << static_cast<unsigned long long>(b.exp_ - e));
        return Dyadic(std::move(m), e);
    }
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
    Dyadic operator-() const {
        Dyadic r;
        r.mant_ = -mant_;
        r.exp_ = exp_;
        return r;
    }
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
        if (a.is_zero() || b.is_zero()) return Dyadic();
        Dyadic r;
        r.mant_ = a.mant_ * b.mant_;  // odd * odd stays odd
        r.exp_ = a.exp_ + b.exp_;
        return r;
    }
    Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
    Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
    Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

    friend int cmp(const Dyadic& a, const Dyadic& b) {
        int sa = a.sign(), sb = b.sign();
        if (sa != sb) return sa < sb ? -1 : 1;
        if (sa == 0) return 0;
        // Same nonzero sign: magnitudes of different binary order decide cheaply.
        long long la = static_cast<long long>(boost::multiprecision::msb(boost::multiprecision::abs(a.mant_))) + a.exp_;
        long long lb = static_cast<long long>(boost::multiprecision::msb(boost::multiprecision::abs(b.mant_))) + b.exp_;
        if (la != lb) return ((la < lb) == (sa > 0)) ? -1 : 1;
        Dyadic d = a - b;
        return d.sign();
    }
    friend bool operator==(const Dyadic& a, const Dyadic& b) {
        return a.exp_ == b.exp_ && a.mant_ == b.mant_;
    }
    friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
    friend bool operator<(const Dyadic& a, const Dyadic& b) { return cmp(a, b) < 0; }
    friend bool operator>(const Dyadic& a, const Dyadic& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) >= 0; }

    double to_double() const { return static_cast<double>(to_long_double()); }

    long double to_long_double() const {
        if (is_zero()) return 0.0L;
        Int a = boost::multiprecision::abs(mant_);
        auto bl = static_cast<long long>(boost::multiprecision::msb(a)) + 1;
        long long sh = bl > 64 ? bl - 64 : 0;
        auto top = static_cast<unsigned long long>(a >> static_cast<unsigned long long>(sh));
        long double v = ldexpl(static_cast<long double>(top), static_cast<int>(exp_ + sh));
        return mant_ < 0 ? -v : v;
    }

    std::string to_string() const {
        return mant_.str() + "*2^" + std::to_string(exp_);
    }

  private:
    void normalize() {
        if (mant_.is_zero()) {
            exp_ = 0;
            return;
        }
        bool neg = mant_ < 0;
        Int a = neg ? Int(-mant_) : mant_;
        unsigned tz = boost::multiprecision::lsb(a);
        if (tz) {
            a >>= tz;
            exp_ += tz;
        }
        mant_ = neg ? Int(-a) : a;
    }

    Int mant_;
    long long exp_;
};

inline Dyadic abs(const Dyadic& x) { return x.sign() < 0 ? -x : x; }
inline double to_double(const Dyadic& x) { return x.to_double(); }
inline long double to_long_double(const Dyadic& x) { return x.to_long_double(); }
inline Dyadic half(const Dyadic& x) { return x.half(); }
inline Int floor_shift(const Dyadic& x, long long k) { return x.floor_shift(k); }
inline long long floor_log2(const Dyadic& x) { return x.floor_log2(); }
inline bool is_pow2(const Dyadic& x) { return x.is_pow2(); }

}  // namespace danzer
