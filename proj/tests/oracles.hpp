#pragma once

// Independent test oracles. Everything here recomputes expected values by a
// route different from the library implementation it checks, and stays
// deliberately naive.

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "danzer/bit_sequence.hpp"
#include "danzer/geometry.hpp"
#include "danzer/vdc.hpp"

namespace oracles {

// Exhaustive enumeration of every 0/1 assignment on bit positions [-K, K],
// filtered by window containment. 2^(2K+1) sequences; keep K <= 5.
inline std::vector<danzer::Point<danzer::Dyadic>> brute_vdc_points(const danzer::Window<danzer::Dyadic>& w,
                                                                   int K) {
    using namespace danzer;
    std::set<Point<Dyadic>> acc;
    const int bits = 2 * K + 1;
    for (std::uint64_t mask = 0; mask < (1ull << bits); ++mask) {
        Dyadic x, y;
        for (int b = 0; b < bits; ++b) {
            if ((mask >> b) & 1ull) {
                int n = b - K;
                x += Dyadic::pow2(n);
                y += Dyadic::pow2(-n);
            }
        }
        Point<Dyadic> p(x, y);
        if (contains(w.box, p)) acc.insert(p);
    }
    return {acc.begin(), acc.end()};
}

// Plain double-precision bisection on sign changes over a scan grid.
inline std::vector<double> bisect_real_roots(const std::vector<double>& coeffs_low_first, double lo,
                                             double hi, int grid = 20000) {
    auto eval = [&](double x) {
        double v = 0;
        for (size_t i = coeffs_low_first.size(); i-- > 0;) v = v * x + coeffs_low_first[i];
        return v;
    };
    std::vector<double> roots;
    double step = (hi - lo) / grid;
    double a = lo, fa = eval(a);
    for (int i = 1; i <= grid; ++i) {
        double b = lo + i * step, fb = eval(b);
        if (fa == 0.0) roots.push_back(a);
        if (fa * fb < 0) {
            double l = a, r = b;
            for (int it = 0; it < 200; ++it) {
                double m = 0.5 * (l + r);
                double fm = eval(m);
                if (fm == 0.0) {
                    l = r = m;
                    break;
                }
                if ((fm < 0) == (fa < 0))
                    l = m;
                else
                    r = m;
            }
            roots.push_back(0.5 * (l + r));
        }
        a = b;
        fa = fb;
    }
    if (fa == 0.0) roots.push_back(a);
    return roots;
}

// Brute-force lattice points: image of c in [-C, C]^d under the basis,
// filtered by the box (closed, tolerance tol).
inline std::vector<std::vector<long double>> brute_lattice_points(
    const std::vector<std::vector<long double>>& mat, const std::vector<long double>& lo,
    const std::vector<long double>& hi, int C, long double tol) {
    const int d = static_cast<int>(mat.size());
    std::vector<std::vector<long double>> out;
    std::vector<long long> c(static_cast<size_t>(d), -C);
    while (true) {
        std::vector<long double> x(static_cast<size_t>(d), 0.0L);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) x[static_cast<size_t>(i)] += static_cast<long double>(c[static_cast<size_t>(j)]) * mat[static_cast<size_t>(i)][static_cast<size_t>(j)];
        bool in = true;
        for (int i = 0; i < d && in; ++i)
            in = x[static_cast<size_t>(i)] >= lo[static_cast<size_t>(i)] - tol && x[static_cast<size_t>(i)] <= hi[static_cast<size_t>(i)] + tol;
        if (in) out.push_back(x);
        int k = 0;
        while (k < d && ++c[static_cast<size_t>(k)] > C) { c[static_cast<size_t>(k)] = -C; ++k; }
        if (k == d) break;
    }
    return out;
}

// Brute-force shortest nonzero vector over c in [-C, C]^d.
inline long double brute_shortest(const std::vector<std::vector<long double>>& cols, int C) {
    const int d = static_cast<int>(cols.size());
    long double best2 = -1;
    std::vector<long long> c(static_cast<size_t>(d), -C);
    while (true) {
        bool nz = false;
        for (int j = 0; j < d; ++j) nz = nz || c[static_cast<size_t>(j)] != 0;
        if (nz) {
            long double n2 = 0;
            for (int i = 0; i < d; ++i) {
                long double v = 0;
                for (int j = 0; j < d; ++j) v += static_cast<long double>(c[static_cast<size_t>(j)]) * cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
                n2 += v * v;
            }
            if (best2 < 0 || n2 < best2) best2 = n2;
        }
        int k = 0;
        while (k < d && ++c[static_cast<size_t>(k)] > C) { c[static_cast<size_t>(k)] = -C; ++k; }
        if (k == d) break;
    }
    return sqrtl(best2);
}

// Brute-force distance from target to the lattice over c in [-C, C]^d.
inline long double brute_nearest(const std::vector<std::vector<long double>>& cols,
                                 const std::vector<long double>& target, int C) {
    const int d = static_cast<int>(cols.size());
    long double best2 = -1;
    std::vector<long long> c(static_cast<size_t>(d), -C);
    while (true) {
        long double n2 = 0;
        for (int i = 0; i < d; ++i) {
            long double v = -target[static_cast<size_t>(i)];
            for (int j = 0; j < d; ++j) v += static_cast<long double>(c[static_cast<size_t>(j)]) * cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
            n2 += v * v;
        }
        if (best2 < 0 || n2 < best2) best2 = n2;
        int k = 0;
        while (k < d && ++c[static_cast<size_t>(k)] > C) { c[static_cast<size_t>(k)] = -C; ++k; }
        if (k == d) break;
    }
    return sqrtl(best2);
}

}  // namespace oracles
