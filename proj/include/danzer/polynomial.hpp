#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "danzer/rational.hpp"

namespace danzer {

/// Monic-friendly integer polynomial, coefficient of x^i at c[i].
struct IntPolynomial {
    std::vector<Int> c;

    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Int> coeffs) : c(std::move(coeffs)) {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }

    /// Input as on the CLI: leading coefficient first, constant term last.
    static IntPolynomial from_leading_first(const std::vector<Int>& lead_first) {
        std::vector<Int> lowfirst(lead_first.rbegin(), lead_first.rend());
        return IntPolynomial(std::move(lowfirst));
    }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }

    Rational eval(const Rational& x) const {
        Rational v(0);
        for (size_t i = c.size(); i-- > 0;) v = v * x + Rational(c[i]);
        return v;
    }
    int sign_at(const Rational& x) const { return eval(x).sign(); }

    long double eval_ld(long double x) const {
        long double v = 0;
        for (size_t i = c.size(); i-- > 0;) v = v * x + Int(c[i]).convert_to<long double>();
        return v;
    }

    IntPolynomial derivative() const {
        if (c.size() <= 1) return IntPolynomial{};
        std::vector<Int> d(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<long long>(i);
        return IntPolynomial(std::move(d));
    }

    std::string to_string() const {
        if (c.empty()) return "0";
        std::string s;
        for (size_t i = c.size(); i-- > 0;) {
            if (c[i].is_zero()) continue;
            Int a = c[i];
            if (!s.empty()) {
                s += a < 0 ? " - " : " + ";
                if (a < 0) a = -a;
            } else if (a < 0) {
                s += "-";
                a = -a;
            }
            if (i == 0 || a != 1) s += a.str();
            if (i >= 1) s += "x";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }
};

namespace polydetail {

using RatPoly = std::vector<Rational>;  // coefficient of x^i at [i]

inline RatPoly trim(RatPoly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

inline int deg(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

inline Rational rp_eval(const RatPoly& p, const Rational& x) {
    Rational v(0);
    for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

inline RatPoly rp_rem(RatPoly a, const RatPoly& b) {
    while (deg(a) >= deg(b)) {
        Rational q = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= q * b[i];
        a = trim(std::move(a));
        if (a.empty()) break;
    }
    return a;
}

}  // namespace polydetail

/// Sturm chain of f: f, f', then negated euclidean remainders. The last
/// element is (up to sign and a rational factor) gcd(f, f'), so a
/// nonconstant tail means f has repeated roots.
inline std::vector<polydetail::RatPoly> sturm_chain(const IntPolynomial& f) {
    using namespace polydetail;
    std::vector<RatPoly> chain;
    RatPoly p0;
    for (const auto& a : f.c) p0.emplace_back(a);
    p0 = trim(std::move(p0));
    chain.push_back(p0);
    IntPolynomial df = f.derivative();
    RatPoly p1;
    for (const auto& a : df.c) p1.emplace_back(a);
    p1 = trim(std::move(p1));
    if (p1.empty()) return chain;
    chain.push_back(p1);
    while (true) {
        const RatPoly& a = chain[chain.size() - 2];
        const RatPoly& b = chain.back();
        RatPoly r = rp_rem(a, b);
        if (r.empty()) break;
        for (auto& x : r) x = -x;
        chain.push_back(std::move(r));
    }
    return chain;
}

inline int sign_variations(const std::vector<polydetail::RatPoly>& chain, const Rational& x) {
    int var = 0, prev = 0;
    for (const auto& p : chain) {
        int s = polydetail::rp_eval(p, x).sign();
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

/// Number of distinct real roots in (a, b].
inline int count_roots_in(const std::vector<polydetail::RatPoly>& chain, const Rational& a,
                          const Rational& b) {
    return sign_variations(chain, a) - sign_variations(chain, b);
}

/// 1 + max |c_i| for a monic polynomial: every root lies strictly inside.
inline Rational cauchy_root_bound(const IntPolynomial& f) {
    Int m = 0;
    for (size_t i = 0; i + 1 < f.c.size(); ++i) {
        Int a = boost::multiprecision::abs(f.c[i]);
        if (a > m) m = a;
    }
    return Rational(m + 1);
}

struct RootBracket {
    Rational lo, hi;  // either lo == hi == exact root, or f(lo), f(hi) != 0
    bool exact = false;
};

/// Isolating brackets for all real roots of a squarefree polynomial, sorted
/// ascending. Bisection midpoints that happen to be roots come out exact.
inline std::vector<RootBracket> isolate_real_roots(const IntPolynomial& f) {
    auto chain = sturm_chain(f);
    Rational B = cauchy_root_bound(f);
    std::vector<RootBracket> out;

    auto rec = [&](auto&& self, const Rational& lo, const Rational& hi, int count) -> void {
        if (count <= 0) return;
        if (count == 1) {
            out.push_back(RootBracket{lo, hi, false});
            return;
        }
        Rational mid = (lo + hi).half();
        if (f.sign_at(mid) == 0) {
            // a rational root; carve it out with a gap small enough to keep
            // every other root on one side
            Rational w = (hi - lo) * Rational(1, 1 << 20);
            while (true) {
                Rational l2 = mid - w, r2 = mid + w;
                if (f.sign_at(l2) != 0 && f.sign_at(r2) != 0) {
                    int cl = count_roots_in(chain, lo, l2);
                    int cr = count_roots_in(chain, r2, hi);
                    if (cl + cr == count - 1) {
                        self(self, lo, l2, cl);
                        out.push_back(RootBracket{mid, mid, true});
                        self(self, r2, hi, cr);
                        return;
                    }
                }
                w = w * Rational(1, 1024);
            }
        }
        int cl = count_roots_in(chain, lo, mid);
        self(self, lo, mid, cl);
        self(self, mid, hi, count - cl);
    };

    int total = count_roots_in(chain, -B, B);
    rec(rec, -B, B, total);

    // keep ascending order after the exact-root splicing
    std::sort(out.begin(), out.end(),
              [](const RootBracket& a, const RootBracket& b) { return a.lo < b.lo; });
    return out;
}

/// Bisects a bracket down to ~2^-96 width and rounds to long double.
inline long double refine_root(const IntPolynomial& f, const RootBracket& br) {
    if (br.exact) return to_long_double(br.lo);
    Rational lo = br.lo, hi = br.hi;
    int sl = f.sign_at(lo);
    Rational width = hi - lo;
    int iters = 100;
    if (Rational(1) < width) iters += static_cast<int>(width.floor_log2()) + 2;
    for (int i = 0; i < iters; ++i) {
        Rational mid = (lo + hi).half();
        int sm = f.sign_at(mid);
        if (sm == 0) return to_long_double(mid);
        if (sm == sl)
            lo = mid;
        else
            hi = mid;
    }
    return to_long_double((lo + hi).half());
}

}  // namespace danzer
