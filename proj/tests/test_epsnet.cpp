#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "danzer/epsnet.hpp"

using namespace danzer;

TEST_CASE("vdc net sizes follow the 1/eps law") {
    auto n01 = build_net_vdc(0.1);
    auto n02 = build_net_vdc(0.2);
    // density-1/2 estimate: |net| ~ L^2 / 2 = 32 / eps
    CHECK(std::abs(static_cast<double>(n01.points.size()) - 320.0) < 0.15 * 320.0);
    CHECK(std::abs(static_cast<double>(n02.points.size()) - 160.0) < 0.15 * 160.0);
    double ratio = static_cast<double>(n01.points.size()) / static_cast<double>(n02.points.size());
    CHECK(std::abs(ratio - 2.0) < 0.3);
    CHECK(n01.claimed_constant == doctest::Approx(static_cast<double>(n01.points.size()) * 0.1));
}

TEST_CASE("every net point lies in the unit square") {
    for (double eps : {0.3, 0.1, 0.07}) {
        auto net = build_net_vdc(eps);
        for (const auto& p : net.points) {
            CHECK(p[0] >= 0.0);
            CHECK(p[0] <= 1.0);
            CHECK(p[1] >= 0.0);
            CHECK(p[1] <= 1.0);
        }
        CHECK(net.exact_points.size() == net.points.size());
    }
}

TEST_CASE("vdc nets validate with an exact certificate") {
    for (double eps : {0.2, 0.1, 0.05}) {
        auto net = build_net_vdc(eps);
        auto v = validate_net(net, 2);
        CHECK(v.valid);
        CHECK(v.exact_certified);
        CHECK(v.max_empty_volume <= eps);
        CHECK(v.margin > 0.0);
    }
}

TEST_CASE("scaling commutes: unscaled check matches the scaled one") {
    auto net = build_net_vdc(0.1);
    auto v = validate_net(net);
    // volumes scale by exactly s / eps = L^2 (up to the W-window sliver)
    double back = v.max_empty_volume * static_cast<double>(net.scale * net.scale);
    CHECK(std::abs(back - v.unscaled_max_empty) < 1e-6 * v.unscaled_max_empty);
}

TEST_CASE("targeted deletion invalidates a net") {
    auto net = build_net_vdc(0.2);
    auto before = validate_net(net);
    REQUIRE(before.valid);

    // empty out an inflated copy of the reported maximal box: the survivors
    // leave an empty box of volume 1.2 * eps
    double grow = std::sqrt(1.2 * net.eps / std::max(before.max_empty_volume, 1e-12));
    std::vector<double> lo(2), hi(2);
    Window<double> unit(AlignedBox<double>::closed(Point<double>(0.0, 0.0), Point<double>(1.0, 1.0)));
    auto rep = largest_empty_box(net.points, unit);
    for (int i = 0; i < 2; ++i) {
        double c = 0.5 * (rep.box.lower[i] + rep.box.upper[i]);
        double h = 0.5 * (rep.box.upper[i] - rep.box.lower[i]) * grow;
        lo[static_cast<size_t>(i)] = std::max(0.0, c - h);
        hi[static_cast<size_t>(i)] = std::min(1.0, c + h);
    }
    AlignedBox<double> inflated(Point<double>(lo), Point<double>(hi));
    EpsNet pruned = net;
    pruned.points.clear();
    pruned.exact_points.clear();
    for (size_t i = 0; i < net.points.size(); ++i) {
        if (!contains(inflated, net.points[i])) {
            pruned.points.push_back(net.points[i]);
            pruned.exact_points.push_back(net.exact_points[i]);
        }
    }
    REQUIRE(pruned.points.size() < net.points.size());
    auto after = validate_net(pruned);
    CHECK(after.max_empty_volume >= before.max_empty_volume);
    CHECK(!after.valid);
}

TEST_CASE("lattice net from the quadratic preset validates") {
    auto b = build_basis(preset_field(2), false);
    long double s_hat = danzer_constant_estimate(b, make_flow_grid(2, 3.0L, 0.5L), 20000, 19);
    for (double eps : {0.2, 0.1}) {
        auto net = build_net_lattice(b, eps, s_hat);
        CHECK(!net.points.empty());
        auto v = validate_net(net, 2);
        CHECK(v.valid);
        CHECK(v.max_empty_volume <= eps + 1e-9);
    }
}

TEST_CASE("degenerate and invalid inputs") {
    CHECK_THROWS_AS(build_net_vdc(0.0), error);
    CHECK_THROWS_AS(build_net_vdc(1.0), error);
    CHECK_THROWS_AS(build_net_vdc(0.1, 50), error);  // cap too small -> eps_too_small
    try {
        build_net_vdc(0.1, 50);
    } catch (const error& e) {
        CHECK(e.code() == errc::eps_too_small);
    }

    // an empty net never validates
    EpsNet empty;
    empty.source = "lattice";
    empty.eps = 0.5;
    empty.dim = 2;
    auto v = validate_net(empty);
    CHECK(!v.valid);
    CHECK(v.max_empty_volume == 1.0);
}
