#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "cmplchg/cubature.hpp"
#include "cmplchg/errors.hpp"

using namespace cmplchg;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Distance from p to the nearest node of c.
double nearest_node_distance(const Cubature& c, const Vec3& p) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3& q : c.nodes) best = std::min(best, norm(p - q));
    return best;
}

double weight_sum(const Cubature& c) {
    double s = 0.0;
    for (double w : c.weights) s += w;
    return s;
}

std::vector<double> random_values(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return v;
}

}  // namespace

TEST_CASE("single-cell cylinder collapses to the centroid with the full volume") {
    const Cubature c = build_cylinder(1.0, 1.0, 1, 1, 1);
    REQUIRE(c.size() == 1);
    // A full ring's angular centroid factor vanishes identically, so the node
    // sits exactly on the axis and the weight is the exact cylinder volume.
    CHECK(c.nodes[0].x1 == 0.0);
    CHECK(c.nodes[0].x2 == 0.0);
    CHECK(c.nodes[0].x3 == 0.5);
    CHECK(c.weights[0] == kPi);
    CHECK(c.ring_ids == std::vector<int>{0});
    CHECK(c.meta.shape == "cylinder");
}

TEST_CASE("cylinder weights partition the volume") {
    const Cubature c = build_cylinder(1.0, 2.0, 2, 8, 4);
    REQUIRE(c.size() == 64);
    CHECK(weight_sum(c) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    for (double w : c.weights) CHECK(w > 0.0);

    // Volume partition holds for uneven dimensions too.
    const Cubature c2 = build_cylinder(0.7, 1.3, 3, 5, 2);
    CHECK(weight_sum(c2) ==
          doctest::Approx(kPi * 0.7 * 0.7 * 1.3).epsilon(1e-12));
}

TEST_CASE("cylinder node set is invariant under its own rotation symmetry") {
    const Cubature c = build_cylinder(1.0, 1.0, 1, 4, 1);
    REQUIRE(c.size() == 4);
    // Rotating by 2*pi/ntheta = pi/2 about Ox3 must map nodes onto nodes.
    for (const Vec3& p : c.nodes) {
        const Vec3 rotated{-p.x2, p.x1, p.x3};
        CHECK(nearest_node_distance(c, rotated) < 1e-12);
    }
}

TEST_CASE("cylinder nodes sit at exact annular-sector centroids") {
    const Cubature c = build_cylinder(1.0, 1.0, 1, 4, 1);
    // First node: quarter-annulus r in [0,1], theta in [0, pi/2]; centroid
    // radius (2/3) * sinc(pi/4) at the bisector theta = pi/4, giving
    // x1 = x2 = 4 / (3 pi).
    const double expected = 4.0 / (3.0 * kPi);
    CHECK(c.nodes[0].x1 == doctest::Approx(expected).epsilon(1e-14));
    CHECK(c.nodes[0].x2 == doctest::Approx(expected).epsilon(1e-14));
    CHECK(c.nodes[0].x3 == 0.5);
    // All four nodes share the centroid radius.
    for (const Vec3& p : c.nodes)
        CHECK(std::hypot(p.x1, p.x2) ==
              doctest::Approx(expected * std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("cylinder node order is axial slab, then ring, then angle") {
    const Cubature c = build_cylinder(1.0, 1.0, 2, 4, 3);
    REQUIRE(c.size() == 24);
    REQUIRE(static_cast<int>(c.ring_ids.size()) == 24);
    for (int a = 0; a < 24; ++a) CHECK(c.ring_ids[a] == a / 4);
    // Nodes of one ring share radius and height and differ in angle only.
    for (int a = 0; a + 1 < 24; ++a) {
        if (c.ring_ids[a] != c.ring_ids[a + 1]) continue;
        CHECK(c.nodes[a].x3 == c.nodes[a + 1].x3);
        CHECK(std::hypot(c.nodes[a].x1, c.nodes[a].x2) ==
              doctest::Approx(std::hypot(c.nodes[a + 1].x1, c.nodes[a + 1].x2))
                  .epsilon(1e-14));
    }
    // x3 is nondecreasing in node order (z-major).
    for (int a = 0; a + 1 < 24; ++a) CHECK(c.nodes[a].x3 <= c.nodes[a + 1].x3);
}

TEST_CASE("single-cell box is the midpoint rule on the whole box") {
    const Cubature c = build_box(1.0, 1.0, 1.0, 1, 1, 1);
    REQUIRE(c.size() == 1);
    CHECK(c.nodes[0].x1 == 0.0);
    CHECK(c.nodes[0].x2 == 0.0);
    CHECK(c.nodes[0].x3 == 0.5);
    CHECK(c.weights[0] == 1.0);
    CHECK(c.ring_ids.empty());
    CHECK(c.meta.shape == "box");
}

TEST_CASE("box grid enumerates equal-volume cells") {
    const Cubature c = build_box(2.0, 2.0, 2.0, 2, 2, 2);
    REQUIRE(c.size() == 8);
    for (double w : c.weights) CHECK(w == 1.0);
    CHECK(weight_sum(c) == doctest::Approx(8.0).epsilon(1e-12));
    // Base sits at x3 = 0, centered on the axis.
    for (const Vec3& p : c.nodes) {
        CHECK(std::abs(p.x1) == 0.5);
        CHECK(std::abs(p.x2) == 0.5);
        CHECK((p.x3 == 0.5 || p.x3 == 1.5));
    }
}

TEST_CASE("box node set is mirror-symmetric across the axis planes") {
    const Cubature c = build_box(1.0, 1.0, 1.0, 3, 3, 3);
    for (const Vec3& p : c.nodes) {
        CHECK(nearest_node_distance(c, Vec3{-p.x1, p.x2, p.x3}) < 1e-12);
        CHECK(nearest_node_distance(c, Vec3{p.x1, -p.x2, p.x3}) < 1e-12);
    }
}

TEST_CASE("axisymmetric projection averages over rings") {
    const Cubature c = build_cylinder(1.0, 1.0, 1, 4, 1);

    SUBCASE("a constant distribution is unchanged exactly") {
        const std::vector<double> v(4, 0.37);
        const std::vector<double> p = axisym_project(c, v);
        CHECK(p == v);
    }

    SUBCASE("a unit impulse spreads evenly over its equal-weight ring") {
        const std::vector<double> v{1.0, 0.0, 0.0, 0.0};
        const std::vector<double> p = axisym_project(c, v);
        for (double x : p) CHECK(x == doctest::Approx(0.25).epsilon(1e-14));
    }
}

TEST_CASE("axisymmetric projection conserves total charge") {
    const Cubature c = build_cylinder(1.0, 1.0, 2, 8, 2);
    const std::vector<double> v = random_values(c.size(), 20240817u);
    const std::vector<double> p = axisym_project(c, v);
    double before = 0.0, after = 0.0;
    for (int a = 0; a < c.size(); ++a) {
        before += c.weights[a] * v[a];
        after += c.weights[a] * p[a];
    }
    CHECK(after == doctest::Approx(before).epsilon(1e-14));
}

TEST_CASE("axisymmetric projection is exactly idempotent") {
    const Cubature c = build_cylinder(1.0, 1.0, 2, 8, 2);
    const std::vector<double> v = random_values(c.size(), 77u);
    const std::vector<double> once = axisym_project(c, v);
    const std::vector<double> twice = axisym_project(c, once);
    CHECK(twice == once);
}

TEST_CASE("axisymmetric projection needs ring structure") {
    const Cubature c = build_box(1.0, 1.0, 1.0, 2, 2, 2);
    const std::vector<double> v(c.size(), 1.0);
    CHECK_THROWS_WITH_AS(axisym_project(c, v), doctest::Contains("ring"), Error);
    try {
        axisym_project(c, v);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::unsupported_domain);
    }
}

TEST_CASE("axisymmetric projection rejects mismatched lengths") {
    const Cubature c = build_cylinder(1.0, 1.0, 1, 4, 1);
    const std::vector<double> v(3, 1.0);
    try {
        axisym_project(c, v);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_argument);
    }
}

TEST_CASE("domain builders reject degenerate parameters") {
    CHECK_THROWS_AS(build_cylinder(0.0, 1.0, 1, 1, 1), Error);
    CHECK_THROWS_AS(build_cylinder(1.0, -1.0, 1, 1, 1), Error);
    CHECK_THROWS_AS(build_cylinder(1.0, 1.0, 0, 1, 1), Error);
    CHECK_THROWS_AS(build_cylinder(1.0, 1.0, 1, 0, 1), Error);
    CHECK_THROWS_AS(build_cylinder(1.0, 1.0, 1, 1, -2), Error);
    CHECK_THROWS_AS(build_box(0.0, 1.0, 1.0, 1, 1, 1), Error);
    CHECK_THROWS_AS(build_box(1.0, 1.0, 1.0, 1, 0, 1), Error);
    try {
        build_cylinder(1.0, 1.0, 0, 1, 1);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_argument);
    }
}

TEST_CASE("domain construction is deterministic") {
    const Cubature a = build_cylinder(0.9, 1.7, 3, 6, 4);
    const Cubature b = build_cylinder(0.9, 1.7, 3, 6, 4);
    REQUIRE(a.size() == b.size());
    for (int i = 0; i < a.size(); ++i) {
        CHECK(a.nodes[i].x1 == b.nodes[i].x1);
        CHECK(a.nodes[i].x2 == b.nodes[i].x2);
        CHECK(a.nodes[i].x3 == b.nodes[i].x3);
        CHECK(a.weights[i] == b.weights[i]);
    }
    CHECK(a.ring_ids == b.ring_ids);
}
