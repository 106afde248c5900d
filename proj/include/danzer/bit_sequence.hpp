#pragma once

#include <initializer_list>
#include <optional>
#include <set>

#include "danzer/dyadic.hpp"
#include "danzer/geometry.hpp"

namespace danzer {

/// Finite-support bi-infinite 0/1 sequence (a_n): only the indices n with
/// a_n = 1 are stored.
struct BitSequence {
    std::set<int> ones;

    BitSequence() = default;
    BitSequence(std::initializer_list<int> idx) : ones(idx) {}

    bool operator==(const BitSequence& o) const { return ones == o.ones; }
    bool operator!=(const BitSequence& o) const { return !(*this == o); }
    bool operator<(const BitSequence& o) const { return ones < o.ones; }
    bool empty() const { return ones.empty(); }
};

/// (sum a_n 2^n, sum a_n 2^{-n}) as exact dyadic coordinates.
inline Point<Dyadic> encode(const BitSequence& seq) {
    Dyadic x, y;
    for (int n : seq.ones) {
        x += Dyadic::pow2(n);
        y += Dyadic::pow2(-n);
    }
    return Point<Dyadic>(x, y);
}

/// Splits the two sums at n = 0: (sum_{n>=0} a_n 2^n, sum_{n<0} a_n 2^{-n}).
/// The first coordinate is a nonnegative integer, the second a nonnegative
/// even integer.
inline Point<Dyadic> growth_map_g(const BitSequence& seq) {
    Dyadic gx, gy;
    for (int n : seq.ones) {
        if (n >= 0)
            gx += Dyadic::pow2(n);
        else
            gy += Dyadic::pow2(-n);
    }
    return Point<Dyadic>(gx, gy);
}

inline Dyadic asymmetry_gap(const Point<Dyadic>& p) {
    if (p.dim() != 2) fail(errc::dimension_mismatch, "asymmetry_gap needs a planar point");
    return abs(p[0] - p[1]);
}

/// Decodes a point of the bit-reversal set back into its defining sequence,
/// sign-insensitively. Returns nullopt when the point is not in the set.
inline std::optional<BitSequence> to_bit_sequence(const Point<Dyadic>& p) {
    if (p.dim() != 2) return std::nullopt;
    Dyadic ax = abs(p[0]), ay = abs(p[1]);
    BitSequence seq;
    if (!ax.is_zero()) {
        const Int& m = ax.mantissa();
        auto top = boost::multiprecision::msb(m);
        for (unsigned i = 0; i <= top; ++i)
            if (boost::multiprecision::bit_test(m, i))
                seq.ones.insert(static_cast<int>(static_cast<long long>(i) + ax.exponent()));
    }
    Point<Dyadic> back = encode(seq);
    if (back[0] == ax && back[1] == ay) return seq;
    return std::nullopt;
}

}  // namespace danzer
