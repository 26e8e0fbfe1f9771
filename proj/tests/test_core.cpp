#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracgeom/numerics.hpp"
#include "fracgeom/params.hpp"
#include "fracgeom/set_descriptor.hpp"

using namespace fracgeom;

TEST_CASE("dimensional constants") {
    CHECK(omega_d(0) == 1.0);
    CHECK(omega_d(1) == 2.0);
    CHECK(omega_d(2) == doctest::Approx(std::numbers::pi));
    CHECK(varpi_d(0) == 0.0);
    for (int n : {1, 2}) CHECK(varpi_d(n) == doctest::Approx(n * omega_d(n)));
}

TEST_CASE("FracParams validation") {
    CHECK_THROWS(FracParams(3, 0.5));
    CHECK_THROWS(FracParams(1, 0.0));
    CHECK_THROWS(FracParams(1, 1.0));
    CHECK_NOTHROW(FracParams(2, 0.999));
}

TEST_CASE("contains: primitives and boundary convention") {
    auto ball = SetDescriptor::ball({0, 0}, 1.0);
    CHECK(ball.contains({0, 0}));
    CHECK_FALSE(ball.contains({1, 0}));  // boundary excluded

    auto hs = SetDescriptor::half_space({0, 1}, 0.0);  // {y < 0}
    CHECK_FALSE(hs.contains({0.3, 0.0}));
    CHECK(hs.contains({0.3, -0.1}));

    auto comp = SetDescriptor::complement(ball);
    CHECK(comp.contains({2, 0}));
    CHECK_FALSE(comp.contains({0.5, 0}));
}

TEST_CASE("complement is an involution, structurally") {
    auto ball = SetDescriptor::ball({0, 0}, 1.0);
    auto cc = SetDescriptor::complement(SetDescriptor::complement(ball));
    CHECK(cc.node_ptr() == ball.node_ptr());
}

TEST_CASE("complement membership at random points") {
    auto poly = SetDescriptor::polygon({{0, 0}, {2, 0}, {2, 1}, {0, 1}});
    auto comp = SetDescriptor::complement(poly);
    Rng rng(7);
    for (int k = 0; k < 500; ++k) {
        Vec2 x{rng.uniform(-1, 3), rng.uniform(-1, 2)};
        CHECK(comp.contains(x) == !poly.contains(x));
    }
}

TEST_CASE("transform simplifies primitives") {
    auto b2 = SetDescriptor::ball({0, 0}, 1.0).transform(2.0, 0.0, {0, 0});
    auto* bd = std::get_if<BallData>(&b2.node().v);
    REQUIRE(bd != nullptr);
    CHECK(bd->radius == doctest::Approx(2.0));

    auto hs = SetDescriptor::half_space({1, 0}, 0.0).transform(1.0, 0.0, {1, 0});
    auto* hd = std::get_if<HalfSpaceData>(&hs.node().v);
    REQUIRE(hd != nullptr);
    CHECK(hd->offset == doctest::Approx(1.0));

    auto iu = SetDescriptor::interval_union({{0, 1}}).transform(3.0, 0.0, {0, 0});
    auto iv = iu.to_intervals();
    REQUIRE(iv.size() == 1);
    CHECK(iv[0].first == doctest::Approx(0.0));
    CHECK(iv[0].second == doctest::Approx(3.0));
}

TEST_CASE("transform agrees pointwise with the affine map") {
    auto poly = SetDescriptor::polygon({{0, 0}, {1, 0}, {0.7, 0.9}});
    const double lam = 1.7, ang = 0.6;
    const Vec2 t{0.3, -0.2};
    auto img = poly.transform(lam, ang, t);
    const Rot2 R = Rot2::from_angle(ang);
    Rng rng(11);
    for (int k = 0; k < 400; ++k) {
        Vec2 x{rng.uniform(-0.5, 1.5), rng.uniform(-0.5, 1.5)};
        CHECK(img.contains(R.apply(x) * lam + t) == poly.contains(x));
    }
}

TEST_CASE("transform composition equals composed transform") {
    auto cone = SetDescriptor::angular_cone({0, 0}, {{0.2, 1.1}});
    auto once = cone.transform(2.0, 0.3, {1, 0}).transform(1.5, -0.1, {0, 2});
    // composed by hand: y = l2 R2 (l1 R1 x + t1) + t2
    const Rot2 R2 = Rot2::from_angle(-0.1);
    auto direct = cone.transform(3.0, 0.2, R2.apply({1, 0}) * 1.5 + Vec2{0, 2});
    Rng rng(3);
    for (int k = 0; k < 400; ++k) {
        Vec2 x{rng.uniform(-4, 4), rng.uniform(-4, 4)};
        CHECK(once.contains(x) == direct.contains(x));
    }
}

TEST_CASE("transform rejects nonpositive scale") {
    auto ball = SetDescriptor::ball({0, 0}, 1.0);
    CHECK_THROWS(ball.transform(0.0, 0.0, {0, 0}));
    CHECK_THROWS(ball.transform(-1.0, 0.0, {0, 0}));
}

TEST_CASE("interval complement via to_intervals") {
    auto iu = SetDescriptor::interval_union({{0, 1}, {2, 3}});
    auto comp = SetDescriptor::complement(iu).to_intervals();
    REQUIRE(comp.size() == 3);
    CHECK(std::isinf(comp[0].first));
    CHECK(comp[0].second == doctest::Approx(0.0));
    CHECK(comp[1].first == doctest::Approx(1.0));
    CHECK(comp[1].second == doctest::Approx(2.0));
    CHECK(std::isinf(comp[2].second));
}

TEST_CASE("classify is conservative and correct on samples") {
    auto ball = SetDescriptor::ball({0, 0}, 1.0);
    CHECK(ball.classify({{-0.3, -0.3}, {0.3, 0.3}}) == Region::Inside);
    CHECK(ball.classify({{2, 2}, {3, 3}}) == Region::Outside);
    CHECK(ball.classify({{0.5, 0.5}, {1.5, 1.5}}) == Region::Mixed);

    auto sub = SetDescriptor::subgraph(Profile::quadratic(1.0));  // {y < x^2}
    CHECK(sub.classify({{-1, -3}, {1, -2}}) == Region::Inside);
    CHECK(sub.classify({{-0.5, 1}, {0.5, 2}}) == Region::Outside);
}

TEST_CASE("ray trace: ball crossings and parity") {
    auto ball = SetDescriptor::ball({0, 0}, 1.0);
    RayTrace rt = ball.trace({-2, 0}, {1, 0});
    REQUIRE(rt.breaks.size() == 2);
    CHECK(rt.breaks[0] == doctest::Approx(1.0));
    CHECK(rt.breaks[1] == doctest::Approx(3.0));
    CHECK_FALSE(rt.start_inside);
    CHECK_FALSE(rt.final_inside);

    // consistency of inside_at with contains along many random rays
    auto sets = {SetDescriptor::ball({0.2, -0.1}, 0.8),
                 SetDescriptor::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}),
                 SetDescriptor::angular_cone({0.1, 0.1}, {{0.3, 2.0}}),
                 SetDescriptor::subgraph(Profile::cubic(1.0)),
                 SetDescriptor::complement(SetDescriptor::ball({0, 0}, 0.5))};
    Rng rng(23);
    for (const auto& S : sets) {
        for (int k = 0; k < 200; ++k) {
            Vec2 o{rng.uniform(-2, 2), rng.uniform(-2, 2)};
            Vec2 d = unit_from_angle(rng.uniform(0, 2 * std::numbers::pi));
            RayTrace rt2 = S.trace(o, d);
            for (double t : {0.13, 0.77, 1.9, 4.2}) {
                CHECK(rt2.inside_at(t) == S.contains(o + d * t));
            }
        }
    }
}

TEST_CASE("descriptors are immutable value handles") {
    auto a = SetDescriptor::ball({0, 0}, 1.0);
    auto b = a;  // shared node
    CHECK(a.node_ptr() == b.node_ptr());
}
