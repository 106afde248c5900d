#pragma once

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "danzer/bit_sequence.hpp"
#include "danzer/dyadic.hpp"
#include "danzer/geometry.hpp"
#include "danzer/rational.hpp"

namespace danzer {

/// Cutoff k separating the high bits (n >= k, controlling the first
/// coordinate) from the low bits (n < k, controlling the second), chosen so
/// that 2^k <= t/2 < 2^{k+1} for the box width t.
struct SplitIndex {
    long long k;
};

template <class S>
SplitIndex choose_split(const S& width) {
    S h = half(width);
    return SplitIndex{floor_log2(h)};
}

namespace vdc_detail {

inline void append_bits(BitSequence& seq, const Int& q, long long base, int dir) {
    auto top = boost::multiprecision::msb(q);
    for (unsigned i = 0; i <= top; ++i)
        if (boost::multiprecision::bit_test(q, i))
            seq.ones.insert(static_cast<int>(base + dir * static_cast<long long>(i)));
}

}  // namespace vdc_detail

/// Constructive hit for a box r in the closed positive quadrant with
/// volume >= 16. The high bits encode the least multiple of 2^k strictly
/// greater than the left edge x; the low bits the least multiple of 2^{-k+1}
/// strictly greater than the bottom edge y. The encoded point lands strictly
/// inside the open box (x, x+t) x (y, y+16/t), hence in r.
template <class S>
BitSequence hit_box_positive(const AlignedBox<S>& r) {
    if (r.dim() != 2) fail(errc::dimension_mismatch, "hit_box_positive needs a planar box");
    const S zero(0);
    if (r.lower[0] < zero || r.lower[1] < zero)
        fail(errc::out_of_orthant, "box must sit in the closed positive quadrant");
    if (box_volume(r) < S(16)) fail(errc::volume_too_small, "hit_box_positive needs volume >= 16");

    const long long k = choose_split(r.side(0)).k;
    Int qx = floor_shift(r.lower[0], k) + 1;
    Int qy = floor_shift(r.lower[1], -k + 1) + 1;

    BitSequence seq;
    vdc_detail::append_bits(seq, qx, k, +1);       // qx * 2^k as bits n >= k
    vdc_detail::append_bits(seq, qy, k - 1, -1);   // qy * 2^{-k+1} as bits n < k
    return seq;
}

struct HitResult {
    Point<Dyadic> point;
    BitSequence seq;          // sequence of the positive-quadrant representative
    std::vector<int> signs;   // orthant the point was reflected into
};

namespace vdc_detail {

template <class S>
AlignedBox<S> reflect_box(const AlignedBox<S>& b, const std::vector<int>& signs) {
    Point<S> lo = b.lower, hi = b.upper;
    for (int i = 0; i < b.dim(); ++i) {
        if (signs[static_cast<size_t>(i)] < 0) {
            S nl = -b.upper[i], nh = -b.lower[i];
            lo[i] = nl;
            hi[i] = nh;
        }
    }
    return AlignedBox<S>(std::move(lo), std::move(hi));
}

}  // namespace vdc_detail

/// Hits an arbitrary aligned box of volume >= 64: one quadrant piece has
/// volume >= 16; that piece is reflected into the positive quadrant, hit
/// there, and the point reflected back. Ties between equal-volume pieces go
/// to the orthant order (+,+), (+,-), (-,+), (-,-).
template <class S>
HitResult hit_box(const AlignedBox<S>& r) {
    if (r.dim() != 2) fail(errc::dimension_mismatch, "hit_box needs a planar box");
    if (box_volume(r) < S(64)) fail(errc::volume_too_small, "hit_box needs volume >= 64");

    auto pieces = quadrant_pieces(r);
    size_t pick = 0;
    S best = box_volume(pieces[0].second);
    for (size_t i = 1; i < pieces.size(); ++i) {
        S v = box_volume(pieces[i].second);
        if (best < v) {
            best = v;
            pick = i;
        }
    }
    const auto& signs = pieces[pick].first;
    AlignedBox<S> pos = vdc_detail::reflect_box(pieces[pick].second, signs);
    BitSequence seq = hit_box_positive(pos);
    Point<Dyadic> p = reflect(encode(seq), signs);
    return HitResult{std::move(p), std::move(seq), signs};
}

/// All points of the positive-quadrant bit-reversal set inside a closed
/// window, by depth-first search over bit positions n in [-K, K] with
/// K = ceil(log2 max(x_max, y_max)). Partial sums only grow, so a branch
/// dies as soon as a committed sum exceeds an upper bound or the remaining
/// bits cannot reach a lower bound. Output is ordered by the first
/// coordinate and duplicate-free (the first coordinate determines the
/// sequence).
inline std::vector<std::pair<BitSequence, Point<Dyadic>>> enumerate_positive(
    const Window<Dyadic>& w, std::size_t max_points = 8'000'000) {
    const auto& b = w.box;
    if (b.dim() != 2) fail(errc::dimension_mismatch, "enumerate_positive needs a planar window");
    const Dyadic zero(0), one(1);
    if (b.lower[0] < zero || b.lower[1] < zero)
        fail(errc::out_of_orthant, "window must sit in the closed positive quadrant");
    const Dyadic &xlo = b.lower[0], &ylo = b.lower[1];
    const Dyadic &xhi = b.upper[0], &yhi = b.upper[1];

    const Dyadic& mx = xhi < yhi ? yhi : xhi;
    long long K = 0;
    if (one < mx) {
        K = mx.floor_log2();
        if (!mx.is_pow2()) ++K;
    }
    const long long lo_n = -K;

    // reach[i]: largest value the bits at positions <= n can still add,
    // i = n - lo_n + 1 (exact suffix sums, used for lower-bound pruning).
    const size_t levels = static_cast<size_t>(2 * K + 1);
    std::vector<Dyadic> reach_x(levels + 1), reach_y(levels + 1);
    for (size_t i = 1; i <= levels; ++i) {
        long long n = lo_n + static_cast<long long>(i) - 1;
        reach_x[i] = reach_x[i - 1] + Dyadic::pow2(n);
        reach_y[i] = reach_y[i - 1] + Dyadic::pow2(-n);
    }

    std::vector<std::pair<BitSequence, Point<Dyadic>>> out;
    BitSequence cur;
    auto rec = [&](auto&& self, long long n, const Dyadic& sx, const Dyadic& sy) -> void {
        if (xhi < sx || yhi < sy) return;
        if (n < lo_n) {
            if (!(sx < xlo) && !(sy < ylo)) {
                if (out.size() >= max_points) fail(errc::window_too_large, "enumeration exceeds the point cap");
                out.emplace_back(cur, Point<Dyadic>(sx, sy));
            }
            return;
        }
        const size_t i = static_cast<size_t>(n - lo_n) + 1;
        if (sx + reach_x[i] < xlo || sy + reach_y[i] < ylo) return;
        self(self, n - 1, sx, sy);
        cur.ones.insert(static_cast<int>(n));
        self(self, n - 1, sx + Dyadic::pow2(n), sy + Dyadic::pow2(-n));
        cur.ones.erase(static_cast<int>(n));
    };
    rec(rec, K, Dyadic(), Dyadic());
    return out;
}

inline std::vector<Point<Dyadic>> enumerate_positive_points(const Window<Dyadic>& w,
                                                            std::size_t max_points = 8'000'000) {
    std::vector<Point<Dyadic>> pts;
    for (auto& [seq, p] : enumerate_positive(w, max_points)) pts.push_back(p);
    return pts;
}

/// The full sign-symmetric set inside an arbitrary finite window: every
/// orthant piece is reflected into the positive quadrant, enumerated there,
/// and reflected back. Coordinates deduplicate the origin, which all four
/// sign choices share.
inline std::vector<Point<Dyadic>> enumerate_full(const Window<Dyadic>& w,
                                                 std::size_t max_points = 8'000'000) {
    std::set<Point<Dyadic>> acc;
    for (auto& [signs, piece] : quadrant_pieces(w.box)) {
        AlignedBox<Dyadic> pos = vdc_detail::reflect_box(piece, signs);
        for (auto& [seq, p] : enumerate_positive(Window<Dyadic>(pos), max_points)) {
            acc.insert(reflect(p, signs));
            if (acc.size() > max_points) fail(errc::window_too_large, "enumeration exceeds the point cap");
        }
    }
    return {acc.begin(), acc.end()};
}

}  // namespace danzer
