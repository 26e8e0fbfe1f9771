#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracgeom/tail.hpp"

using namespace fracgeom;

namespace {
const double kPi = std::numbers::pi;

QuadSpec quad() {
    QuadSpec q;
    q.abs_tol = 1e-9;
    return q;
}
}  // namespace

TEST_CASE("cone anchored at the base point is exact") {
    auto quarter = SetDescriptor::angular_cone({0, 0}, {{0.0, 0.5 * kPi}});
    for (double s : {0.5, 0.1, 0.01}) {
        FracParams p(2, s);
        const double v = alpha_s({0, 0}, 1.0, quarter, p, quad());
        CHECK(std::abs(s * v - 0.5 * kPi) < 1e-9);
    }
    // at s = 0.25 the value is (pi/2)/0.25 = 2 pi
    FracParams p(2, 0.25);
    CHECK(alpha_s({0, 0}, 1.0, quarter, p, quad()) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
}

TEST_CASE("bounded set: alpha_s <= |E| and s*alpha small") {
    FracParams p(2, 0.3);
    auto E = SetDescriptor::ball({0, 0}, 0.5);
    CHECK(alpha_s({0, 0}, 1.0, E, p, quad()) == 0.0);  // inside the base ball
    auto E2 = SetDescriptor::ball({3, 0}, 0.5);
    const double v2 = alpha_s({0, 0}, 1.0, E2, p, quad());
    CHECK(v2 > 0.0);
    CHECK(v2 <= kPi * 0.25);  // |E2| = pi/4, kernel <= 1 outside B_1
}

TEST_CASE("full complement of the base ball") {
    FracParams p(2, 0.5);
    auto E = SetDescriptor::complement(SetDescriptor::ball({0, 0}, 1.0));
    CHECK(alpha_s({0, 0}, 1.0, E, p, quad()) == doctest::Approx(4.0 * kPi).epsilon(1e-12));
}

TEST_CASE("scaling identity on cones, exact") {
    // alpha_s(q, r, lambda E) = lambda^{-s} alpha_s(q/lambda, r/lambda, E)
    auto cone = SetDescriptor::angular_cone({0.5, -0.25}, {{0.3, 1.4}});
    const double lam = 2.5;
    auto scaled = cone.transform(lam, 0.0, {0, 0});
    FracParams p(2, 0.35);
    const Vec2 q{1.25, -0.625};  // lambda * vertex
    const double lhs = alpha_s(q, 0.8, scaled, p, quad());
    const double rhs = std::pow(lam, -p.s) *
                       alpha_s({q.x / lam, q.y / lam}, 0.8 / lam, cone, p, quad());
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("half-space via numeric rays matches varpi_n/(2s)") {
    FracParams p(2, 0.2);
    auto hs = SetDescriptor::half_space({0, 1}, 0.0);  // {y < 0} through the origin
    const double v = alpha_s({0, 0}, 1.0, hs, p, quad());
    CHECK(v == doctest::Approx(kPi / p.s).epsilon(1e-6));
}

TEST_CASE("1-d sets are exact") {
    FracParams p(1, 0.5);
    auto E = SetDescriptor::half_space({1, 0}, 0.0, 1);  // (-inf, 0)
    // alpha_s(0,1,E) = int_{-inf}^{-1} |y|^{-1-s} = 1/s
    CHECK(alpha_s({0, 0}, 1.0, E, p, quad()) == doctest::Approx(1.0 / p.s).epsilon(1e-13));
    auto I = SetDescriptor::interval_union({{2.0, 4.0}});
    CHECK(alpha_s({0, 0}, 1.0, I, p, quad()) ==
          doctest::Approx((std::pow(2.0, -0.5) - std::pow(4.0, -0.5)) / 0.5).epsilon(1e-13));
}

TEST_CASE("alpha catalog: half-space, x^3 supergraph, parabola") {
    FracParams p(2, 0.1);
    QuadSpec q = quad();

    auto half = SetDescriptor::half_space({0, 1}, 0.0);
    AlphaReport rh = alpha_limit(half, {}, p, q);
    CHECK(std::abs(rh.alpha_bar - kPi) < 0.05);
    CHECK(rh.exists);

    // supergraph of x^3 = complement of the subgraph
    auto cubic_super = SetDescriptor::complement(SetDescriptor::subgraph(Profile::cubic(1.0)));
    AlphaReport rc = alpha_limit(cubic_super, {}, p, q);
    CHECK(std::abs(rc.alpha_bar - kPi) < 0.1);

    auto parab_super = SetDescriptor::complement(SetDescriptor::subgraph(Profile::quadratic(1.0)));
    AlphaReport rp = alpha_limit(parab_super, {}, p, q);
    CHECK(rp.alpha_bar >= -1e-9);
    CHECK(rp.alpha_bar < 0.05);
}

TEST_CASE("alpha_limit validates its sequence") {
    FracParams p(2, 0.1);
    auto E = SetDescriptor::half_space({0, 1}, 0.0);
    CHECK_THROWS(alpha_limit(E, {0.2, 0.1, 0.05}, p, quad()));         // too short
    CHECK_THROWS(alpha_limit(E, {0.5, 0.2, 0.1, 0.05}, p, quad()));    // outside (0,0.3]
    CHECK_THROWS(alpha_limit(E, {0.1, 0.2, 0.05, 0.025}, p, quad()));  // not decreasing
}

TEST_CASE("alpha_analytic catalog") {
    FracParams p2(2, 0.5);
    auto cone = SetDescriptor::angular_cone({0, 0}, {{0.2, 1.1}});
    CHECK(*alpha_analytic(cone, p2) == doctest::Approx(0.9));

    CHECK(*alpha_analytic(SetDescriptor::ball({1, 2}, 3.0), p2) == doctest::Approx(0.0));

    auto comp_hs = SetDescriptor::complement(SetDescriptor::half_space({0, 1}, 0.0));
    CHECK(*alpha_analytic(comp_hs, p2) == doctest::Approx(kPi));  // varpi_2 - varpi_2/2

    auto sub_tanh = SetDescriptor::subgraph(Profile::bounded_tanh(1.0));
    CHECK(*alpha_analytic(sub_tanh, p2) == doctest::Approx(kPi));

    auto sub_parab = SetDescriptor::subgraph(Profile::quadratic(1.0));
    CHECK(*alpha_analytic(sub_parab, p2) == doctest::Approx(2.0 * kPi));
    CHECK(*alpha_analytic(SetDescriptor::complement(sub_parab), p2) == doctest::Approx(0.0));

    // transformed sets keep the inner value
    auto moved = sub_tanh.transform(2.0, 0.3, {1, 1});
    CHECK(*alpha_analytic(moved, p2) == doctest::Approx(kPi));
}

TEST_CASE("complement identity on numeric cases") {
    FracParams p(2, 0.1);
    QuadSpec q = quad();
    for (const auto& E : {SetDescriptor::angular_cone({0, 0}, {{0.0, 1.3}}),
                          SetDescriptor::half_space({0.6, 0.8}, 0.4)}) {
        AlphaReport rE = alpha_limit(E, {}, p, q);
        AlphaReport rC = alpha_limit(SetDescriptor::complement(E), {}, p, q);
        CHECK(rE.alpha_bar == doctest::Approx(2.0 * kPi - rC.alpha_lower).epsilon(0.02));
    }
}

TEST_CASE("monotonicity and additivity on cones") {
    FracParams p(2, 0.15);
    QuadSpec q = quad();
    auto small = SetDescriptor::angular_cone({0, 0}, {{0.2, 0.9}});
    auto big = SetDescriptor::angular_cone({0, 0}, {{0.1, 1.4}});
    AlphaReport rs = alpha_limit(small, {}, p, q);
    AlphaReport rb = alpha_limit(big, {}, p, q);
    CHECK(rs.alpha_bar <= rb.alpha_bar + 0.01);

    // far-disjoint arcs: additivity
    auto un = SetDescriptor::angular_cone({0, 0}, {{0.2, 0.9}, {2.0, 2.6}});
    auto part2 = SetDescriptor::angular_cone({0, 0}, {{2.0, 2.6}});
    AlphaReport ru = alpha_limit(un, {}, p, q);
    AlphaReport r2 = alpha_limit(part2, {}, p, q);
    CHECK(ru.alpha_bar == doctest::Approx(rs.alpha_bar + r2.alpha_bar).epsilon(0.01));
}

TEST_CASE("finite-in-every-ball symmetric difference: shifted half-space") {
    FracParams p(2, 0.1);
    QuadSpec q = quad();
    auto hs = SetDescriptor::half_space({0, 1}, 0.0);
    auto hs2 = SetDescriptor::half_space({0, 1}, 2.0);
    AlphaReport r1 = alpha_limit(hs, {}, p, q);
    AlphaReport r2 = alpha_limit(hs2, {}, p, q);
    CHECK(std::abs(r1.alpha_bar - r2.alpha_bar) < 0.02);
}
