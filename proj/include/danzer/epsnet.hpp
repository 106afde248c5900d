#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "danzer/emptybox.hpp"
#include "danzer/lattice.hpp"
#include "danzer/vdc.hpp"

namespace danzer {

/// An eps-net for aligned boxes in [0,1]^d, restricted and rescaled from one
/// of the global constructions: a box of volume >= eps in the unit cube
/// pulls back to a box of volume >= s in [0, L]^d with L = (s/eps)^{1/d},
/// which the source set hits.
struct EpsNet {
    std::string source;  // "vdc" | "lattice"
    double eps = 0;
    int dim = 2;
    std::vector<Point<double>> points;  // scaled into [0,1]^d
    double claimed_constant = 0;        // C with |points| <= C / eps
    long double scale = 0;              // L
    long double threshold = 0;          // source volume threshold s

    // vdc extras, for the exact validity certificate
    std::vector<Point<Dyadic>> exact_points;  // unscaled
    Dyadic exact_window;                      // dyadic W >= L covering [0, L]
    Rational scale_sq;                        // L^2 = s / eps, exact

    // lattice extras
    std::vector<double> offset;  // generic translation of the sampling cube
};

inline EpsNet build_net_vdc(double eps, std::size_t max_points = 8'000'000) {
    if (!(eps > 0.0 && eps < 1.0)) fail(errc::bad_input, "eps must lie in (0, 1)");
    EpsNet net;
    net.source = "vdc";
    net.eps = eps;
    net.dim = 2;
    net.threshold = 64.0L;
    net.scale_sq = Rational(64) / Rational::from_double(eps);
    net.scale = sqrtl(to_long_double(net.scale_sq));

    // smallest dyadic W at 2^-40 granularity with W^2 >= L^2
    Dyadic W = Dyadic::from_long_double(net.scale);
    const Dyadic bump = Dyadic::pow2(-40);
    while (Rational(W) * Rational(W) < net.scale_sq) W += bump;
    net.exact_window = W;

    std::vector<std::pair<BitSequence, Point<Dyadic>>> raw;
    try {
        raw = enumerate_positive(Window<Dyadic>::rect(Dyadic(0), Dyadic(0), W, W), max_points);
    } catch (const error& e) {
        if (e.code() == errc::window_too_large) fail(errc::eps_too_small, "net enumeration exceeds the cap");
        throw;
    }
    for (auto& [seq, p] : raw) {
        if (net.scale_sq < Rational(p[0]) * Rational(p[0])) continue;  // beyond L
        if (net.scale_sq < Rational(p[1]) * Rational(p[1])) continue;
        net.exact_points.push_back(p);
        double x = static_cast<double>(to_long_double(p[0]) / net.scale);
        double y = static_cast<double>(to_long_double(p[1]) / net.scale);
        net.points.emplace_back(std::min(x, 1.0), std::min(y, 1.0));
    }
    net.claimed_constant = static_cast<double>(net.points.size()) * eps;
    return net;
}

inline EpsNet build_net_lattice(const LatticeBasis& b, double eps, long double s_threshold,
                                const LatticeLimits& lim = {}) {
    if (!(eps > 0.0 && eps < 1.0)) fail(errc::bad_input, "eps must lie in (0, 1)");
    if (!(s_threshold > 0.0L)) fail(errc::bad_input, "need a positive volume threshold");
    EpsNet net;
    net.source = "lattice";
    net.eps = eps;
    net.dim = b.dim;
    net.threshold = s_threshold;
    net.scale = powl(s_threshold / static_cast<long double>(eps), 1.0L / b.dim);

    // a generic translation keeps lattice points off the box faces
    static const double kGenericOffset[4] = {0.31830988618379067, 0.36787944117144233,
                                             0.43429448190325183, 0.26424111765711533};
    std::vector<long double> lo(static_cast<size_t>(b.dim)), hi(static_cast<size_t>(b.dim));
    for (int i = 0; i < b.dim; ++i) {
        net.offset.push_back(kGenericOffset[i]);
        lo[static_cast<size_t>(i)] = kGenericOffset[i];
        hi[static_cast<size_t>(i)] = kGenericOffset[i] + net.scale;
    }
    std::vector<Point<long double>> raw;
    try {
        raw = lattice_points_in_box(
            b, AlignedBox<long double>::closed(Point<long double>(lo), Point<long double>(hi)), lim);
    } catch (const error& e) {
        if (e.code() == errc::window_too_large) fail(errc::eps_too_small, "net enumeration exceeds the cap");
        throw;
    }
    for (const auto& p : raw) {
        std::vector<double> c(static_cast<size_t>(b.dim));
        for (int i = 0; i < b.dim; ++i) {
            long double v = (p[i] - lo[static_cast<size_t>(i)]) / net.scale;
            c[static_cast<size_t>(i)] = std::min(std::max(static_cast<double>(v), 0.0), 1.0);
        }
        net.points.emplace_back(std::move(c));
    }
    net.claimed_constant = static_cast<double>(net.points.size()) * eps;
    return net;
}

struct NetValidation {
    double eps = 0;
    double max_empty_volume = 0;   // in the scaled domain [0,1]^d
    bool valid = false;            // max empty box <= eps (empty nets never validate)
    double margin = 0;             // eps - max_empty_volume
    bool exact_certified = false;  // vdc: exact dyadic check in the source domain
    double unscaled_max_empty = 0; // source-domain empty-box volume
};

/// Runs the empty-box oracle over the net in the unit cube. For the dyadic
/// source the same check also runs unscaled with exact arithmetic over the
/// covering window W: volumes scale by exactly eps/s, so max empty <= s
/// there certifies max empty <= eps here.
inline NetValidation validate_net(const EpsNet& net, int threads = 1) {
    NetValidation v;
    v.eps = net.eps;

    std::vector<double> lo(static_cast<size_t>(net.dim), 0.0), hi(static_cast<size_t>(net.dim), 1.0);
    Window<double> unit(AlignedBox<double>::closed(Point<double>(lo), Point<double>(hi)));
    auto rep = largest_empty_box(net.points, unit, threads);
    v.max_empty_volume = rep.volume;
    if (net.points.empty()) {
        v.valid = false;  // hits nothing, not even the full cube
    } else if (net.source == "vdc") {
        v.valid = rep.volume <= net.eps;
    } else {
        v.valid = rep.volume <= net.eps + static_cast<double>(kTolerance);
    }
    v.margin = net.eps - rep.volume;

    if (net.source == "vdc") {
        Window<Dyadic> w(AlignedBox<Dyadic>::closed(Point<Dyadic>(Dyadic(0), Dyadic(0)),
                                                    Point<Dyadic>(net.exact_window, net.exact_window)));
        auto exact = largest_empty_box(net.exact_points, w, threads);
        v.exact_certified = !(Dyadic(64) < exact.volume);
        v.unscaled_max_empty = to_double(exact.volume);
    } else {
        v.unscaled_max_empty = rep.volume * static_cast<double>(powl(net.scale, net.dim));
    }
    return v;
}

}  // namespace danzer
