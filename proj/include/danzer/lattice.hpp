#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "danzer/geometry.hpp"
#include "danzer/numberfield.hpp"

namespace danzer {

struct LatticeLimits {
    std::size_t max_points = 4'000'000;     // enumeration cap
    long double max_flow_sup = 10.0L;       // sup-norm bound on flow vectors
    std::size_t max_enum_nodes = 100'000'000;
};

/// Trace-zero direction t for the diagonal flow diag(e^{t_1}, ..., e^{t_d}).
struct FlowVector {
    std::vector<long double> t;

    explicit FlowVector(std::vector<long double> v) : t(std::move(v)) {
        long double s = 0;
        for (long double x : t) s += x;
        if (fabsl(s) > kTolerance) fail(errc::bad_input, "flow vector must have zero trace");
    }
    static FlowVector zero(int d) { return FlowVector(std::vector<long double>(static_cast<size_t>(d), 0.0L)); }

    int dim() const { return static_cast<int>(t.size()); }
    long double sup_norm() const {
        long double m = 0;
        for (long double x : t) m = std::max(m, fabsl(x));
        return m;
    }
};

template <ScalarLike S>
S norm_product(const Point<S>& p) {
    S v(1);
    for (int i = 0; i < p.dim(); ++i) v = v * (p[i] < S(0) ? S(-p[i]) : p[i]);
    return v;
}

inline Point<long double> apply_flow(const FlowVector& t, const Point<long double>& p) {
    if (t.dim() != p.dim()) fail(errc::dimension_mismatch, "flow/point dims differ");
    Point<long double> r = p;
    for (int i = 0; i < p.dim(); ++i) r[i] *= expl(t.t[static_cast<size_t>(i)]);
    return r;
}

namespace latred {

using Vec = std::vector<long double>;
using Cols = std::vector<Vec>;  // Cols[j] = column j

inline long double dot(const Vec& a, const Vec& b) {
    long double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}
inline long double norm2(const Vec& a) { return dot(a, a); }

struct Gso {
    Cols bstar;
    std::vector<Vec> mu;  // mu[i][j], j < i
    Vec bnorm2;
};

inline Gso gram_schmidt(const Cols& b) {
    const size_t d = b.size();
    Gso g;
    g.bstar.assign(d, {});
    g.mu.assign(d, Vec(d, 0.0L));
    g.bnorm2.assign(d, 0.0L);
    for (size_t i = 0; i < d; ++i) {
        Vec v = b[i];
        for (size_t j = 0; j < i; ++j) {
            long double m = dot(b[i], g.bstar[j]) / g.bnorm2[j];
            g.mu[i][j] = m;
            for (size_t r = 0; r < v.size(); ++r) v[r] -= m * g.bstar[j][r];
        }
        g.bstar[i] = std::move(v);
        g.bnorm2[i] = norm2(g.bstar[i]);
        if (!(g.bnorm2[i] > 0)) fail(errc::bad_input, "basis is numerically singular");
    }
    return g;
}

inline void lll_reduce(Cols& b, long double delta = 0.99L) {
    const size_t d = b.size();
    if (d <= 1) return;
    Gso g = gram_schmidt(b);
    size_t k = 1;
    int guard = 0;
    while (k < d && ++guard < 100000) {
        for (size_t j = k; j-- > 0;) {
            long double m = g.mu[k][j];
            if (fabsl(m) > 0.5L) {
                auto q = llroundl(m);
                for (size_t r = 0; r < b[k].size(); ++r) b[k][r] -= static_cast<long double>(q) * b[j][r];
                g = gram_schmidt(b);
            }
        }
        if (g.bnorm2[k] >= (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.bnorm2[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            g = gram_schmidt(b);
            k = k > 1 ? k - 1 : 1;
        }
    }
}

// Deterministic representative of the reduced basis: fix each column's sign
// by its largest-magnitude entry, then order columns by (norm, entries).
inline void canonicalize(Cols& b) {
    for (auto& col : b) {
        size_t arg = 0;
        for (size_t i = 1; i < col.size(); ++i)
            if (fabsl(col[i]) > fabsl(col[arg])) arg = i;
        if (col[arg] < 0)
            for (auto& v : col) v = -v;
    }
    std::sort(b.begin(), b.end(), [](const Vec& a, const Vec& c) {
        long double na = norm2(a), nc = norm2(c);
        if (na != nc) return na < nc;
        return a < c;
    });
}

/// Exact shortest nonzero lattice vector by sphere enumeration; the basis
/// should be LLL-reduced first. Leaf norms are recomputed from the columns,
/// and the pruning radius carries a small relative slack so rounding in the
/// Gram-Schmidt data can never exclude the optimum.
inline long double shortest_norm(const Cols& b, std::size_t node_cap) {
    const int d = static_cast<int>(b.size());
    Gso g = gram_schmidt(b);
    long double best2 = norm2(b[0]);
    for (int j = 1; j < d; ++j) best2 = std::min(best2, norm2(b[static_cast<size_t>(j)]));

    std::vector<long long> x(static_cast<size_t>(d), 0);
    std::size_t nodes = 0;
    auto rec = [&](auto&& self, int j, long double acc) -> void {
        if (++nodes > node_cap) fail(errc::flow_too_large, "shortest-vector enumeration exceeded the node cap");
        if (j < 0) {
            bool nz = false;
            for (int i = 0; i < d; ++i) nz = nz || x[static_cast<size_t>(i)] != 0;
            if (!nz) return;
            Vec v(b[0].size(), 0.0L);
            for (int i = 0; i < d; ++i)
                for (size_t r = 0; r < v.size(); ++r) v[r] += static_cast<long double>(x[static_cast<size_t>(i)]) * b[static_cast<size_t>(i)][r];
            best2 = std::min(best2, norm2(v));
            return;
        }
        long double c = 0;
        for (int i = j + 1; i < d; ++i) c -= static_cast<long double>(x[static_cast<size_t>(i)]) * g.mu[static_cast<size_t>(i)][static_cast<size_t>(j)];
        long double rem = best2 * (1 + 1e-12L) + 1e-24L - acc;
        if (rem < 0) return;
        long double hw = sqrtl(rem / g.bnorm2[static_cast<size_t>(j)]);
        auto lo = static_cast<long long>(ceill(c - hw - 1e-9L));
        auto hi = static_cast<long long>(floorl(c + hw + 1e-9L));
        for (long long v = lo; v <= hi; ++v) {
            x[static_cast<size_t>(j)] = v;
            long double term = static_cast<long double>(v) - c;
            self(self, j - 1, acc + term * term * g.bnorm2[static_cast<size_t>(j)]);
        }
        x[static_cast<size_t>(j)] = 0;
    };
    rec(rec, d - 1, 0.0L);
    return sqrtl(best2);
}

/// Distance from a target to the lattice: Babai nearest-plane start, then
/// sphere enumeration around it.
inline long double nearest_dist(const Cols& b, const Gso& g, const Vec& target, std::size_t node_cap) {
    const int d = static_cast<int>(b.size());
    long double best2;
    {
        Vec r = target;
        for (int j = d - 1; j >= 0; --j) {
            long double cj = dot(r, g.bstar[static_cast<size_t>(j)]) / g.bnorm2[static_cast<size_t>(j)];
            auto v = llroundl(cj);
            for (size_t i = 0; i < r.size(); ++i) r[i] -= static_cast<long double>(v) * b[static_cast<size_t>(j)][i];
        }
        best2 = norm2(r);
    }

    Vec w(static_cast<size_t>(d));
    for (int j = 0; j < d; ++j) w[static_cast<size_t>(j)] = dot(target, g.bstar[static_cast<size_t>(j)]) / g.bnorm2[static_cast<size_t>(j)];

    std::vector<long long> x(static_cast<size_t>(d), 0);
    std::size_t nodes = 0;
    auto rec = [&](auto&& self, int j, long double acc) -> void {
        if (++nodes > node_cap) fail(errc::flow_too_large, "nearest-point enumeration exceeded the node cap");
        if (j < 0) {
            Vec v(b[0].size(), 0.0L);
            for (int i = 0; i < d; ++i)
                for (size_t r = 0; r < v.size(); ++r) v[r] += static_cast<long double>(x[static_cast<size_t>(i)]) * b[static_cast<size_t>(i)][r];
            for (size_t r = 0; r < v.size(); ++r) v[r] -= target[r];
            best2 = std::min(best2, norm2(v));
            return;
        }
        long double c = w[static_cast<size_t>(j)];
        for (int i = j + 1; i < d; ++i) c -= static_cast<long double>(x[static_cast<size_t>(i)]) * g.mu[static_cast<size_t>(i)][static_cast<size_t>(j)];
        long double rem = best2 * (1 + 1e-12L) + 1e-24L - acc;
        if (rem < 0) return;
        long double hw = sqrtl(rem / g.bnorm2[static_cast<size_t>(j)]);
        auto lo = static_cast<long long>(ceill(c - hw - 1e-9L));
        auto hi = static_cast<long long>(floorl(c + hw + 1e-9L));
        for (long long v = lo; v <= hi; ++v) {
            x[static_cast<size_t>(j)] = v;
            long double term = static_cast<long double>(v) - c;
            self(self, j - 1, acc + term * term * g.bnorm2[static_cast<size_t>(j)]);
        }
        x[static_cast<size_t>(j)] = 0;
    };
    rec(rec, d - 1, 0.0L);
    return sqrtl(best2);
}

// Rows-to-inverse via Gauss-Jordan with partial pivoting, d <= 4.
inline std::vector<Vec> invert_rows(const std::vector<Vec>& m) {
    const size_t d = m.size();
    std::vector<Vec> a = m, inv(d, Vec(d, 0.0L));
    for (size_t i = 0; i < d; ++i) inv[i][i] = 1.0L;
    for (size_t col = 0; col < d; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < d; ++r)
            if (fabsl(a[r][col]) > fabsl(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0L) fail(errc::bad_input, "basis matrix is singular");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        long double s = 1.0L / a[col][col];
        for (size_t c = 0; c < d; ++c) {
            a[col][c] *= s;
            inv[col][c] *= s;
        }
        for (size_t r = 0; r < d; ++r) {
            if (r == col) continue;
            long double f = a[r][col];
            if (f == 0.0L) continue;
            for (size_t c = 0; c < d; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

inline double radical_inverse(std::uint64_t i, unsigned base) {
    double f = 1.0, r = 0.0;
    while (i) {
        f /= base;
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

}  // namespace latred

inline latred::Cols flow_columns(const LatticeBasis& b, const FlowVector& t) {
    if (t.dim() != b.dim) fail(errc::dimension_mismatch, "flow/basis dims differ");
    latred::Cols cols(static_cast<size_t>(b.dim), latred::Vec(static_cast<size_t>(b.dim)));
    for (int i = 0; i < b.dim; ++i) {
        long double s = expl(t.t[static_cast<size_t>(i)]);
        for (int j = 0; j < b.dim; ++j) cols[static_cast<size_t>(j)][static_cast<size_t>(i)] = s * b.mat[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return cols;
}

/// All lattice points B c inside a closed box, with containment judged to the
/// global tolerance. Integer ranges come from the inverse basis applied to
/// the box corners; the depth-first loop prunes levels whose remaining
/// columns cannot reach the box anymore.
inline std::vector<Point<long double>> lattice_points_in_box(const LatticeBasis& b,
                                                             const AlignedBox<long double>& box,
                                                             const LatticeLimits& lim = {}) {
    const int d = b.dim;
    if (box.dim() != d) fail(errc::dimension_mismatch, "box/basis dims differ");

    long double volume = 1.0L;
    for (int i = 0; i < d; ++i) volume *= box.side(i);
    if (volume / b.covolume > static_cast<long double>(lim.max_points))
        fail(errc::window_too_large, "estimated lattice point count exceeds the cap");

    auto inv = latred::invert_rows(b.mat);
    std::vector<long double> cmin(static_cast<size_t>(d), 0), cmax(static_cast<size_t>(d), 0);
    for (unsigned corner = 0; corner < (1u << d); ++corner) {
        std::vector<long double> y(static_cast<size_t>(d), 0.0L);
        for (int j = 0; j < d; ++j) {
            for (int i = 0; i < d; ++i) {
                long double xi = ((corner >> i) & 1u) ? box.upper[i] : box.lower[i];
                y[static_cast<size_t>(j)] += inv[static_cast<size_t>(j)][static_cast<size_t>(i)] * xi;
            }
        }
        for (int j = 0; j < d; ++j) {
            if (corner == 0) {
                cmin[static_cast<size_t>(j)] = cmax[static_cast<size_t>(j)] = y[static_cast<size_t>(j)];
            } else {
                cmin[static_cast<size_t>(j)] = std::min(cmin[static_cast<size_t>(j)], y[static_cast<size_t>(j)]);
                cmax[static_cast<size_t>(j)] = std::max(cmax[static_cast<size_t>(j)], y[static_cast<size_t>(j)]);
            }
        }
    }
    std::vector<long long> clo(static_cast<size_t>(d)), chi(static_cast<size_t>(d));
    long double cells = 1.0L;
    for (int j = 0; j < d; ++j) {
        long double margin = 1e-6L + 1e-9L * fabsl(cmin[static_cast<size_t>(j)]) + 1e-9L * fabsl(cmax[static_cast<size_t>(j)]);
        clo[static_cast<size_t>(j)] = static_cast<long long>(ceill(cmin[static_cast<size_t>(j)] - margin));
        chi[static_cast<size_t>(j)] = static_cast<long long>(floorl(cmax[static_cast<size_t>(j)] + margin));
        cells *= static_cast<long double>(chi[static_cast<size_t>(j)] - clo[static_cast<size_t>(j)] + 1);
    }
    if (cells > 512.0L * static_cast<long double>(lim.max_points))
        fail(errc::window_too_large, "lattice enumeration grid exceeds the cap");

    auto cols = b.columns();
    // reach[j][i]: interval the columns 0..j can still add to coordinate i
    std::vector<std::vector<long double>> reach_lo(static_cast<size_t>(d) + 1, std::vector<long double>(static_cast<size_t>(d), 0.0L));
    auto reach_hi = reach_lo;
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) {
            long double a = static_cast<long double>(clo[static_cast<size_t>(j)]) * cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
            long double c = static_cast<long double>(chi[static_cast<size_t>(j)]) * cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
            reach_lo[static_cast<size_t>(j) + 1][static_cast<size_t>(i)] = reach_lo[static_cast<size_t>(j)][static_cast<size_t>(i)] + std::min(a, c);
            reach_hi[static_cast<size_t>(j) + 1][static_cast<size_t>(i)] = reach_hi[static_cast<size_t>(j)][static_cast<size_t>(i)] + std::max(a, c);
        }
    }

    const long double tol = kTolerance;
    std::vector<Point<long double>> out;
    std::vector<long double> partial(static_cast<size_t>(d), 0.0L);
    auto rec = [&](auto&& self, int j) -> void {
        for (int i = 0; i < d; ++i) {
            long double lo_r = partial[static_cast<size_t>(i)] + (j >= 0 ? reach_lo[static_cast<size_t>(j) + 1][static_cast<size_t>(i)] : 0.0L);
            long double hi_r = partial[static_cast<size_t>(i)] + (j >= 0 ? reach_hi[static_cast<size_t>(j) + 1][static_cast<size_t>(i)] : 0.0L);
            if (hi_r < box.lower[i] - tol || lo_r > box.upper[i] + tol) return;
        }
        if (j < 0) {
            if (out.size() >= lim.max_points) fail(errc::window_too_large, "lattice enumeration exceeds the point cap");
            out.emplace_back(std::vector<long double>(partial));
            return;
        }
        for (long long v = clo[static_cast<size_t>(j)]; v <= chi[static_cast<size_t>(j)]; ++v) {
            for (int i = 0; i < d; ++i) partial[static_cast<size_t>(i)] += static_cast<long double>(v) * cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
            self(self, j - 1);
            for (int i = 0; i < d; ++i) partial[static_cast<size_t>(i)] -= static_cast<long double>(v) * cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
        }
    };
    rec(rec, d - 1);
    return out;
}

inline std::vector<Point<long double>> enumerate_lattice(const LatticeBasis& b,
                                                         const Window<long double>& w,
                                                         const LatticeLimits& lim = {}) {
    return lattice_points_in_box(b, w.box, lim);
}

inline std::optional<Point<long double>> hit_box_lattice(const LatticeBasis& b,
                                                         const AlignedBox<long double>& r,
                                                         const LatticeLimits& lim = {}) {
    auto pts = lattice_points_in_box(b, r, lim);
    if (pts.empty()) return std::nullopt;
    return pts.front();
}

namespace lat_detail {

inline void check_flow(const LatticeBasis& b, const FlowVector& t, const LatticeLimits& lim) {
    if (b.dim > 4) fail(errc::bad_input, "flow probes support d <= 4");
    if (t.sup_norm() > lim.max_flow_sup) fail(errc::flow_too_large, "flow sup-norm exceeds the configured bound");
}

}  // namespace lat_detail

/// min over nonzero lattice vectors of ||g_t B c||_2, by exact enumeration.
inline long double shortest_vector_under_flow(const LatticeBasis& b, const FlowVector& t,
                                              const LatticeLimits& lim = {}) {
    lat_detail::check_flow(b, t, lim);
    auto cols = flow_columns(b, t);
    latred::lll_reduce(cols);
    return latred::shortest_norm(cols, lim.max_enum_nodes);
}

/// Sampled lower bound for the covering radius of the flowed lattice: the
/// farthest distance to the lattice over scrambled-Halton points in a
/// fundamental parallelepiped. Non-decreasing in the sample count for a
/// fixed seed.
inline long double covering_radius_estimate(const LatticeBasis& b, const FlowVector& t,
                                            std::size_t samples, std::uint64_t seed = 0,
                                            const LatticeLimits& lim = {}) {
    lat_detail::check_flow(b, t, lim);
    auto cols = flow_columns(b, t);
    latred::lll_reduce(cols);
    latred::canonicalize(cols);
    auto gso = latred::gram_schmidt(cols);

    const int d = b.dim;
    static constexpr unsigned kBases[4] = {2, 3, 5, 7};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<double> rot(static_cast<size_t>(d));
    for (auto& r : rot) r = u01(rng);

    long double far = 0.0L;
    latred::Vec target(static_cast<size_t>(d));
    for (std::size_t s = 1; s <= samples; ++s) {
        for (size_t i = 0; i < target.size(); ++i) target[i] = 0.0L;
        for (int k = 0; k < d; ++k) {
            double u = latred::radical_inverse(s, kBases[k]) + rot[static_cast<size_t>(k)];
            u -= std::floor(u);
            for (int i = 0; i < d; ++i) target[static_cast<size_t>(i)] += static_cast<long double>(u) * cols[static_cast<size_t>(k)][static_cast<size_t>(i)];
        }
        far = std::max(far, latred::nearest_dist(cols, gso, target, lim.max_enum_nodes));
    }
    return far;
}

/// Empirical align-Danzer threshold from the cube argument:
/// (2 * max covering radius over the flow grid)^d.
inline long double danzer_constant_estimate(const LatticeBasis& b,
                                            const std::vector<FlowVector>& flow_grid,
                                            std::size_t samples, std::uint64_t seed = 0,
                                            const LatticeLimits& lim = {}) {
    if (flow_grid.empty()) fail(errc::bad_input, "flow grid must be nonempty");
    long double m = 0.0L;
    for (const auto& t : flow_grid) m = std::max(m, covering_radius_estimate(b, t, samples, seed, lim));
    return powl(2.0L * m, b.dim);
}

/// Trace-zero grid with components on multiples of `step`, sup-norm <= bound.
inline std::vector<FlowVector> make_flow_grid(int d, long double bound, long double step) {
    if (d < 2 || step <= 0 || bound < 0) fail(errc::bad_input, "bad flow grid parameters");
    auto N = static_cast<long long>(floorl(bound / step + 1e-9L));
    std::vector<FlowVector> grid;
    std::vector<long long> idx(static_cast<size_t>(d) - 1, -N);
    while (true) {
        long double last = 0.0L;
        std::vector<long double> t(static_cast<size_t>(d));
        for (int j = 0; j < d - 1; ++j) {
            t[static_cast<size_t>(j)] = static_cast<long double>(idx[static_cast<size_t>(j)]) * step;
            last -= t[static_cast<size_t>(j)];
        }
        t[static_cast<size_t>(d) - 1] = last;
        if (fabsl(last) <= bound + 1e-9L) grid.emplace_back(std::move(t));
        int k = 0;
        while (k < d - 1 && ++idx[static_cast<size_t>(k)] > N) {
            idx[static_cast<size_t>(k)] = -N;
            ++k;
        }
        if (k == d - 1) break;
    }
    return grid;
}

}  // namespace danzer
