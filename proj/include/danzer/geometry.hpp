#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "danzer/errors.hpp"

namespace danzer {

/// Global tolerance for every floating-point assertion and report.
inline constexpr long double kTolerance = 1e-9L;

template <class S>
concept ScalarLike = requires(S a, S b) {
    S(0);
    { a + b } -> std::convertible_to<S>;
    { a - b } -> std::convertible_to<S>;
    { a * b } -> std::convertible_to<S>;
    { -a } -> std::convertible_to<S>;
    { a < b } -> std::convertible_to<bool>;
    { a == b } -> std::convertible_to<bool>;
};

inline double to_double(double x) { return x; }
inline double to_double(long double x) { return static_cast<double>(x); }
inline long double to_long_double(double x) { return x; }
inline long double to_long_double(long double x) { return x; }

template <ScalarLike S>
struct Point {
    std::vector<S> x;

    Point() = default;
    explicit Point(std::vector<S> coords) : x(std::move(coords)) {}
    Point(S a, S b) : x{std::move(a), std::move(b)} {}

    int dim() const { return static_cast<int>(x.size()); }
    const S& operator[](int i) const { return x[static_cast<size_t>(i)]; }
    S& operator[](int i) { return x[static_cast<size_t>(i)]; }

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x; }
    friend bool operator<(const Point& a, const Point& b) {  // lexicographic
        for (int i = 0; i < a.dim() && i < b.dim(); ++i) {
            if (a[i] < b[i]) return true;
            if (b[i] < a[i]) return false;
        }
        return a.dim() < b.dim();
    }
};

/// Axis-parallel box [lower, upper] with a per-face open/closed flag.
/// Faces default to closed; open faces exclude the boundary from containment.
template <ScalarLike S>
struct AlignedBox {
    Point<S> lower, upper;
    std::uint32_t open_lower = 0;  // bit i set: face x_i = lower[i] is open
    std::uint32_t open_upper = 0;

    AlignedBox() = default;
    AlignedBox(Point<S> lo, Point<S> hi, std::uint32_t ol = 0, std::uint32_t ou = 0)
        : lower(std::move(lo)), upper(std::move(hi)), open_lower(ol), open_upper(ou) {
        if (lower.dim() != upper.dim()) fail(errc::dimension_mismatch, "box corner dims differ");
        for (int i = 0; i < lower.dim(); ++i)
            if (upper[i] < lower[i]) fail(errc::bad_input, "box has upper < lower");
    }

    static AlignedBox closed(Point<S> lo, Point<S> hi) { return AlignedBox(std::move(lo), std::move(hi)); }
    static AlignedBox open(Point<S> lo, Point<S> hi) {
        auto d = static_cast<std::uint32_t>(lo.dim());
        std::uint32_t all = d >= 32 ? ~0u : ((1u << d) - 1u);
        return AlignedBox(std::move(lo), std::move(hi), all, all);
    }

    int dim() const { return lower.dim(); }
    bool lower_open(int i) const { return (open_lower >> i) & 1u; }
    bool upper_open(int i) const { return (open_upper >> i) & 1u; }
    S side(int i) const { return upper[i] - lower[i]; }
};

template <ScalarLike S>
S box_volume(const AlignedBox<S>& b) {
    S v(1);
    for (int i = 0; i < b.dim(); ++i) v = v * b.side(i);
    return v;
}

template <ScalarLike S>
bool contains(const AlignedBox<S>& b, const Point<S>& p) {
    if (b.dim() != p.dim()) fail(errc::dimension_mismatch, "box/point dims differ");
    for (int i = 0; i < b.dim(); ++i) {
        if (b.lower_open(i) ? !(b.lower[i] < p[i]) : p[i] < b.lower[i]) return false;
        if (b.upper_open(i) ? !(p[i] < b.upper[i]) : b.upper[i] < p[i]) return false;
    }
    return true;
}

template <ScalarLike S>
Point<S> reflect(const Point<S>& p, const std::vector<int>& signs) {
    if (static_cast<int>(signs.size()) != p.dim()) fail(errc::dimension_mismatch, "sign vector dim");
    Point<S> r = p;
    for (int i = 0; i < p.dim(); ++i)
        if (signs[static_cast<size_t>(i)] < 0) r[i] = -r[i];
    return r;
}

/// Splits a box along the coordinate hyperplanes. Returns the pieces of
/// positive volume together with the sign vector of the closed orthant each
/// piece lies in, ordered with + before - per axis (first axis most
/// significant), so in 2-D: (+,+), (+,-), (-,+), (-,-).
template <ScalarLike S>
std::vector<std::pair<std::vector<int>, AlignedBox<S>>> quadrant_pieces(const AlignedBox<S>& b) {
    const int d = b.dim();
    const S zero(0);
    std::vector<std::pair<std::vector<int>, AlignedBox<S>>> out;
    std::vector<int> signs(static_cast<size_t>(d), 1);
    std::vector<S> lo(static_cast<size_t>(d)), hi(static_cast<size_t>(d));

    auto rec = [&](auto&& self, int axis) -> void {
        if (axis == d) {
            out.emplace_back(signs, AlignedBox<S>(Point<S>(lo), Point<S>(hi), b.open_lower, b.open_upper));
            return;
        }
        // + side: [max(lower, 0), upper]
        {
            const S& a = b.lower[axis] < zero ? zero : b.lower[axis];
            if (a < b.upper[axis]) {
                signs[static_cast<size_t>(axis)] = 1;
                lo[static_cast<size_t>(axis)] = a;
                hi[static_cast<size_t>(axis)] = b.upper[axis];
                self(self, axis + 1);
            }
        }
        // - side: [lower, min(upper, 0)]
        {
            const S& a = zero < b.upper[axis] ? zero : b.upper[axis];
            if (b.lower[axis] < a) {
                signs[static_cast<size_t>(axis)] = -1;
                lo[static_cast<size_t>(axis)] = b.lower[axis];
                hi[static_cast<size_t>(axis)] = a;
                self(self, axis + 1);
            }
        }
    };
    rec(rec, 0);
    return out;
}

/// Closed box with positive volume and finite corners: the bounded region
/// every enumeration and verification runs over.
template <ScalarLike S>
struct Window {
    AlignedBox<S> box;

    explicit Window(AlignedBox<S> b) : box(std::move(b)) {
        if (box.open_lower || box.open_upper) fail(errc::bad_input, "window must be closed");
        for (int i = 0; i < box.dim(); ++i)
            if (!(box.lower[i] < box.upper[i])) fail(errc::bad_input, "window needs positive volume");
        if constexpr (std::is_floating_point_v<S>) {
            for (int i = 0; i < box.dim(); ++i)
                if (!std::isfinite(static_cast<double>(box.lower[i])) || !std::isfinite(static_cast<double>(box.upper[i])))
                    fail(errc::bad_input, "window corners must be finite");
        }
    }

    static Window rect(S x0, S y0, S x1, S y1) {
        return Window(AlignedBox<S>::closed(Point<S>(x0, y0), Point<S>(x1, y1)));
    }

    int dim() const { return box.dim(); }
};

}  // namespace danzer
