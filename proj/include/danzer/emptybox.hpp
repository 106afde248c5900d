#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <thread>
#include <vector>

#include "danzer/geometry.hpp"

namespace danzer {

/// Largest open aligned box avoiding every input point, found within a
/// window. Emptiness is open-interior: points on a candidate's boundary do
/// not block it.
template <ScalarLike S>
struct EmptyBoxReport {
    AlignedBox<S> box;  // all faces open
    S volume;
    std::vector<std::size_t> axis_candidates;  // candidate coordinate count per axis
};

namespace eb_detail {

template <ScalarLike S>
struct Best {
    bool has = false;
    S vol{0};
    std::vector<S> lo, hi;

    // Larger volume wins; ties go to the lexicographically smaller lower
    // corner, then upper corner, so reports are reproducible.
    void offer(const S& v, const std::vector<S>& l, const std::vector<S>& h) {
        if (has) {
            if (v < vol) return;
            if (v == vol) {
                if (lo < l) return;
                if (l == lo && hi < h) return;
                if (l == lo && h == hi) return;
            }
        }
        has = true;
        vol = v;
        lo = l;
        hi = h;
    }
    void merge(const Best& o) {
        if (o.has) offer(o.vol, o.lo, o.hi);
    }
};

// Maximal empty boxes with the left edge through a point: scan rightward
// from each point, keeping the vertical interval around it that stays empty.
template <ScalarLike S>
void scan_from_point(const std::vector<Point<S>>& pts, size_t i, const S& wx1, const S& wy0,
                     const S& wy1, Best<S>& best) {
    const size_t n = pts.size();
    const S& px = pts[i][0];
    const S& py = pts[i][1];
    S lo = wy0, hi = wy1;
    size_t j = i + 1;
    while (j < n && pts[j][0] == px) ++j;
    for (; j < n; ++j) {
        const S& qx = pts[j][0];
        const S& qy = pts[j][1];
        if (lo < qy && qy < hi) {
            best.offer((qx - px) * (hi - lo), {px, lo}, {qx, hi});
            if (qy < py) {
                lo = qy;
            } else if (py < qy) {
                hi = qy;
            } else {
                return;  // a point at the same height blocks everything wider
            }
            if (best.has && (hi - lo) * (wx1 - px) < best.vol) return;
        }
    }
    best.offer((wx1 - px) * (hi - lo), {px, lo}, {wx1, hi});
}

// Exact planar maximum: point-anchored scans for left edges through points,
// an insertion sweep for left edges on the window, and full-width gaps.
template <ScalarLike S>
Best<S> sweep_2d(const std::vector<Point<S>>& pts, const S& wx0, const S& wy0, const S& wx1,
                 const S& wy1, int threads) {
    const size_t n = pts.size();
    Best<S> best;

    if (threads > 1 && n > 256) {
        size_t nthreads = std::min<size_t>(static_cast<size_t>(threads), n);
        std::vector<Best<S>> partial(nthreads);
        std::vector<std::thread> pool;
        for (size_t tid = 0; tid < nthreads; ++tid) {
            pool.emplace_back([&, tid] {
                for (size_t i = tid; i < n; i += nthreads)
                    scan_from_point(pts, i, wx1, wy0, wy1, partial[tid]);
            });
        }
        for (auto& th : pool) th.join();
        for (auto& p : partial) best.merge(p);
    } else {
        for (size_t i = 0; i < n; ++i) scan_from_point(pts, i, wx1, wy0, wy1, best);
    }

    // left edge on the window: before inserting each point, its vertical
    // neighborhood among everything strictly to the left is an empty box
    std::set<S> ys;
    size_t j = 0;
    while (j < n) {
        size_t k = j;
        while (k < n && pts[k][0] == pts[j][0]) ++k;
        for (size_t q = j; q < k; ++q) {
            const S& qy = pts[q][1];
            auto it = ys.lower_bound(qy);
            if (it != ys.end() && *it == qy) continue;  // blocked at this height
            const S& succ = it == ys.end() ? wy1 : *it;
            const S& pred = it == ys.begin() ? wy0 : *std::prev(it);
            best.offer((pts[q][0] - wx0) * (succ - pred), {wx0, pred}, {pts[q][0], succ});
        }
        for (size_t q = j; q < k; ++q) ys.insert(pts[q][1]);
        j = k;
    }

    // full-width horizontal slabs between consecutive heights
    const S* prev = &wy0;
    for (const S& y : ys) {
        best.offer((wx1 - wx0) * (y - *prev), {wx0, *prev}, {wx1, y});
        prev = &y;
    }
    best.offer((wx1 - wx0) * (wy1 - *prev), {wx0, *prev}, {wx1, wy1});
    return best;
}

// d >= 3: slab recursion on the last axis. Both faces of a maximal box lie
// on the window or touch a point, so candidate coordinates suffice; points
// strictly inside the slab constrain the projected problem.
template <ScalarLike S>
Best<S> solve(const std::vector<Point<S>>& pts, const std::vector<S>& wlo, const std::vector<S>& whi,
              int d, int threads) {
    if (d == 2) return sweep_2d(pts, wlo[0], wlo[1], whi[0], whi[1], threads);

    const size_t axis = static_cast<size_t>(d - 1);
    std::vector<S> coords{wlo[axis], whi[axis]};
    for (const auto& p : pts) coords.push_back(p[static_cast<int>(axis)]);
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());

    Best<S> best;
    std::vector<S> sub_lo(wlo.begin(), wlo.end() - 1), sub_hi(whi.begin(), whi.end() - 1);
    for (size_t a = 0; a + 1 < coords.size(); ++a) {
        for (size_t b = a + 1; b < coords.size(); ++b) {
            S height = coords[b] - coords[a];
            if (best.has) {
                S cap = height;
                for (size_t ax = 0; ax + 1 < static_cast<size_t>(d); ++ax) cap = cap * (whi[ax] - wlo[ax]);
                if (cap < best.vol) continue;
            }
            std::vector<Point<S>> sub;
            for (const auto& p : pts) {
                const S& v = p[static_cast<int>(axis)];
                if (coords[a] < v && v < coords[b]) {
                    Point<S> q;
                    q.x.assign(p.x.begin(), p.x.end() - 1);
                    sub.push_back(std::move(q));
                }
            }
            std::sort(sub.begin(), sub.end());
            sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
            Best<S> inner = solve(sub, sub_lo, sub_hi, d - 1, 1);
            if (inner.has) {
                auto lo = inner.lo, hi = inner.hi;
                lo.push_back(coords[a]);
                hi.push_back(coords[b]);
                best.offer(inner.vol * height, lo, hi);
            }
        }
    }
    return best;
}

template <ScalarLike S>
std::vector<Point<S>> interior_points(const std::vector<Point<S>>& points, const AlignedBox<S>& w) {
    std::vector<Point<S>> pts;
    pts.reserve(points.size());
    for (const auto& p : points) {
        if (p.dim() != w.dim()) fail(errc::dimension_mismatch, "point/window dims differ");
        if (!contains(w, p)) {
            // floating sources judge window containment to the global
            // tolerance; anything within it counts as a boundary point
            if constexpr (std::is_floating_point_v<S>) {
                bool near = true;
                for (int i = 0; i < w.dim() && near; ++i) {
                    S tol = static_cast<S>(kTolerance) * (S(1) + std::abs(w.lower[i]) + std::abs(w.upper[i]));
                    near = p[i] >= w.lower[i] - tol && p[i] <= w.upper[i] + tol;
                }
                if (near) continue;
            }
            fail(errc::bad_input, "input point outside the window");
        }
        bool strict = true;
        for (int i = 0; i < w.dim() && strict; ++i)
            strict = w.lower[i] < p[i] && p[i] < w.upper[i];
        if (strict) pts.push_back(p);  // boundary points cannot block an open box
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

template <ScalarLike S>
EmptyBoxReport<S> finish(const Best<S>& best, const std::vector<Point<S>>& pts, int d) {
    EmptyBoxReport<S> rep{
        AlignedBox<S>::open(Point<S>(best.lo), Point<S>(best.hi)),
        best.vol,
        {},
    };
    rep.axis_candidates.assign(static_cast<size_t>(d), 0);
    for (int i = 0; i < d; ++i) {
        std::set<S> c;
        for (const auto& p : pts) c.insert(p[i]);
        rep.axis_candidates[static_cast<size_t>(i)] = c.size() + 2;
    }
    return rep;
}

}  // namespace eb_detail

/// Maximal-volume open aligned box inside the window whose interior misses
/// every input point. Exact sweep for d = 2 (any exact or floating scalar),
/// candidate-slab recursion for d = 3, 4.
template <ScalarLike S>
EmptyBoxReport<S> largest_empty_box(const std::vector<Point<S>>& points, const Window<S>& w,
                                    int threads = 1, std::size_t max_points = 60000) {
    const int d = w.dim();
    if (d < 2) fail(errc::bad_input, "needs dimension >= 2");
    if (d > 4) fail(errc::too_many_points, "d >= 5 is rejected");

    auto pts = eb_detail::interior_points(points, w.box);
    if (pts.size() > max_points) fail(errc::too_many_points, "point count exceeds the cap");
    if (d >= 3) {
        // pairs of slabs per extra axis over a planar sweep
        long double work = static_cast<long double>(pts.size()) * pts.size() + 1;
        for (int ax = 2; ax < d; ++ax)
            work *= static_cast<long double>(pts.size() + 2) * (pts.size() + 2) / 2;
        if (work > 4e9L) fail(errc::too_many_points, "candidate grid exceeds the cap");
    }

    std::vector<S> wlo(w.box.lower.x), whi(w.box.upper.x);
    auto best = eb_detail::solve(pts, wlo, whi, d, threads);
    return eb_detail::finish(best, pts, d);
}

/// Exhaustive reference search over candidate coordinates; d <= 3 and small
/// inputs only. Validates largest_empty_box in the tests.
template <ScalarLike S>
EmptyBoxReport<S> empty_box_bruteforce(const std::vector<Point<S>>& points, const Window<S>& w) {
    const int d = w.dim();
    if (d < 2 || d > 3) fail(errc::too_many_points, "bruteforce supports d = 2, 3");
    if (points.size() > 200) fail(errc::too_many_points, "bruteforce supports <= 200 points");

    auto pts = eb_detail::interior_points(points, w.box);
    eb_detail::Best<S> best;

    std::vector<std::vector<S>> cand(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        cand[static_cast<size_t>(i)] = {w.box.lower[i], w.box.upper[i]};
        for (const auto& p : pts) cand[static_cast<size_t>(i)].push_back(p[i]);
        auto& c = cand[static_cast<size_t>(i)];
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }

    // choose open intervals on every axis but the last; the best last-axis
    // interval is the widest gap among the points left inside
    std::vector<std::pair<S, S>> iv(static_cast<size_t>(d) - 1);
    auto rec = [&](auto&& self, int ax) -> void {
        if (ax == d - 1) {
            std::vector<S> vals{w.box.lower[ax], w.box.upper[ax]};
            for (const auto& p : pts) {
                bool inside = true;
                for (int i = 0; i < d - 1 && inside; ++i)
                    inside = iv[static_cast<size_t>(i)].first < p[i] && p[i] < iv[static_cast<size_t>(i)].second;
                if (inside) vals.push_back(p[ax]);
            }
            std::sort(vals.begin(), vals.end());
            S base(1);
            for (int i = 0; i < d - 1; ++i)
                base = base * (iv[static_cast<size_t>(i)].second - iv[static_cast<size_t>(i)].first);
            for (size_t g = 0; g + 1 < vals.size(); ++g) {
                std::vector<S> lo, hi;
                for (int i = 0; i < d - 1; ++i) {
                    lo.push_back(iv[static_cast<size_t>(i)].first);
                    hi.push_back(iv[static_cast<size_t>(i)].second);
                }
                lo.push_back(vals[g]);
                hi.push_back(vals[g + 1]);
                best.offer(base * (vals[g + 1] - vals[g]), lo, hi);
            }
            return;
        }
        const auto& c = cand[static_cast<size_t>(ax)];
        for (size_t a = 0; a + 1 < c.size(); ++a) {
            for (size_t b = a + 1; b < c.size(); ++b) {
                iv[static_cast<size_t>(ax)] = {c[a], c[b]};
                self(self, ax + 1);
            }
        }
    };
    rec(rec, 0);
    return eb_detail::finish(best, pts, d);
}

struct GrowthRow {
    double T;
    long long count;
    double ratio;  // count / T^d
};

/// Exact counts of a point source over a family of scales T, with the
/// normalized ratio count / T^d.
template <class CountFn>
std::vector<GrowthRow> growth_count(CountFn&& count_at, const std::vector<double>& Ts, int d) {
    std::vector<GrowthRow> rows;
    rows.reserve(Ts.size());
    for (double T : Ts) {
        long long n = count_at(T);
        rows.push_back(GrowthRow{T, n, static_cast<double>(n) / std::pow(T, d)});
    }
    return rows;
}

}  // namespace danzer
