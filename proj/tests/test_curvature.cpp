#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracgeom/curvature.hpp"
#include "fracgeom/numerics.hpp"

using namespace fracgeom;

namespace {
const double kPi = std::numbers::pi;

QuadSpec quad() {
    QuadSpec q;
    q.abs_tol = 1e-8;
    return q;
}

// polygon disk of radius R with a circular notch of radius delta carved at
// the point closest to the origin side; q sits at the notch bottom
SetDescriptor notched_disk(double R, double delta, Vec2* q_out) {
    std::vector<Vec2> vs;
    const Vec2 center{0, 0};
    const Vec2 notch_c{R, 0.0};
    const int nbig = 192, nsmall = 64;
    // angular half-width of the notch on the big circle
    const double cut = 2.0 * std::asin(0.5 * delta / R) * 1.0;
    for (int i = 0; i <= nbig; ++i) {
        const double a = cut + (2.0 * kPi - 2.0 * cut) * i / nbig;
        vs.push_back({R * std::cos(a), R * std::sin(a)});
    }
    // walk the notch arc from angle ~ +pi/2.. down to -pi/2 around notch_c
    for (int i = 0; i <= nsmall; ++i) {
        const double a = 0.5 * kPi + (kPi)*i / nsmall;  // pi/2 .. 3pi/2
        Vec2 p{notch_c.x + delta * std::cos(a), notch_c.y + delta * std::sin(a)};
        if (p.norm() < R) vs.push_back(p);
    }
    if (q_out) *q_out = {R - delta, 0.0};
    return SetDescriptor::polygon(std::move(vs));
}

}  // namespace

TEST_CASE("half-space curvature vanishes by exact pairing") {
    FracParams p(2, 0.5);
    auto hs = SetDescriptor::half_space({0.6, 0.8}, 0.0);
    CurvatureReport rep = curvature_pv(hs, {0, 0}, p, quad());
    CHECK(std::abs(rep.value) < 1e-6);
    for (double v : rep.ring_partial_sums) CHECK(std::abs(v) < 1e-6);
}

TEST_CASE("interval in 1-d: I_s[(0,1)](0) = 2/s exactly") {
    auto E = SetDescriptor::interval_union({{0.0, 1.0}});
    for (double s : {0.2, 0.5, 0.8}) {
        FracParams p(1, s);
        CurvatureReport rep = curvature_pv(E, {0, 0}, p, quad());
        CHECK(rep.value == doctest::Approx(2.0 / s).epsilon(1e-10));
    }
}

TEST_CASE("disk curvature: positive, complement-odd, scaling exponent") {
    FracParams p(2, 0.5);
    auto B1 = SetDescriptor::ball({0, 0}, 1.0);
    CurvatureReport r1 = curvature_pv(B1, {1, 0}, p, quad());
    CHECK(r1.converged);
    CHECK(r1.value > 0.0);

    CurvatureReport rc = curvature_pv(SetDescriptor::complement(B1), {1, 0}, p, quad());
    CHECK(rc.value == doctest::Approx(-r1.value).epsilon(1e-9));

    auto B2 = SetDescriptor::ball({0, 0}, 2.0);
    CurvatureReport r2 = curvature_pv(B2, {2, 0}, p, quad());
    CHECK(r2.value == doctest::Approx(r1.value * std::pow(2.0, -p.s)).epsilon(0.01));

    auto B4 = SetDescriptor::ball({0, 0}, 4.0);
    CurvatureReport r4 = curvature_pv(B4, {4, 0}, p, quad());
    const double expo12 = std::log(r1.value / r2.value) / std::log(2.0);
    const double expo24 = std::log(r2.value / r4.value) / std::log(2.0);
    CHECK(std::abs(expo12 - p.s) < 0.03);
    CHECK(std::abs(expo24 - p.s) < 0.03);
}

TEST_CASE("graph formula: flat and tilted charts vanish") {
    FracParams p(2, 0.4);
    GraphPatch flat;
    flat.v = [](double) { return 0.0; };
    flat.grad_at_p = 0.0;
    flat.radius = 0.7;
    flat.height = 0.5;
    auto hs = SetDescriptor::complement(SetDescriptor::subgraph(Profile::linear(0.0)));
    CurvatureReport rep = curvature_graph(flat, hs, {0, 0}, p, quad());
    CHECK(std::abs(rep.value) < 1e-6);

    const double m = 0.6;
    GraphPatch tilted;
    tilted.v = [m](double x) { return m * x; };
    tilted.grad_at_p = m;
    tilted.radius = 0.7;
    tilted.height = 1.0;
    auto hsm = SetDescriptor::complement(SetDescriptor::subgraph(Profile::linear(m)));
    CurvatureReport rm = curvature_graph(tilted, hsm, {0, 0}, p, quad());
    CHECK(std::abs(rm.value) < 1e-6);
}

TEST_CASE("graph formula agrees with the PV form on the disk") {
    FracParams p(2, 0.5);
    auto B1 = SetDescriptor::ball({0, 0}, 1.0);
    GraphPatch patch;
    patch.v = [](double x) { return -std::sqrt(std::max(0.0, 1.0 - x * x)); };
    patch.grad_at_p = 0.0;
    patch.radius = 0.5;
    patch.height = 0.25;
    CurvatureReport g = curvature_graph(patch, B1, {0, -1}, p, quad());
    CurvatureReport pv = curvature_pv(B1, {0, -1}, p, quad());
    CHECK(g.value > 0.0);
    CHECK(std::abs(g.value - pv.value) <= 2.0 * (g.est_error + pv.est_error) + 0.02);
}

TEST_CASE("graph formula rejects s >= holder alpha and chart mismatch") {
    FracParams p(2, 0.7);
    GraphPatch patch;
    patch.v = [](double) { return 0.0; };
    patch.holder_alpha = 0.5;
    CHECK_THROWS(curvature_graph(patch, SetDescriptor::half_space({0, 1}, 0.0), {0, 0}, p, quad()));

    GraphPatch flat;
    flat.v = [](double) { return 0.0; };
    flat.radius = 0.5;
    flat.height = 0.5;
    auto wrong_far = SetDescriptor::ball({0, 0}, 0.1);
    FracParams p2(2, 0.3);
    CHECK_THROWS(curvature_graph(flat, wrong_far, {0, 0}, p2, quad()));
}

TEST_CASE("delta_s formula: frozen values and monotonicity") {
    CHECK(delta_threshold(0.0, 0.1, 2) == doctest::Approx(std::pow(1.2, -10.0)).epsilon(1e-9));
    CHECK(delta_threshold(0.0, 0.1, 2) == doctest::Approx(0.16151).epsilon(1e-4));
    CHECK(delta_threshold(0.0, 0.5, 2) == doctest::Approx(1.0 / 1.44).epsilon(1e-9));
    CHECK(delta_threshold(0.0, 0.5, 2) == doctest::Approx(0.69444).epsilon(1e-4));
    double prev = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double s = i / 101.0;
        const double d = delta_threshold(0.3, s, 2);
        CHECK(d > prev);
        prev = d;
    }
    CHECK(delta_threshold(0.0, 0.01, 2) < 1e-7);  // delta_s -> 0 as s -> 0
    CHECK_THROWS(delta_threshold(kPi, 0.5, 2));   // alpha_bar = varpi_2/2 rejected
}

TEST_CASE("monotone comparison: smaller set has larger ring integrals") {
    FracParams p(2, 0.4);
    auto E = SetDescriptor::ball({0, 0}, 1.0);
    auto F = SetDescriptor::half_space({0, 1}, 0.0).transform(1.0, 0.0, {0, 0});
    // E = B_1 subset F' = {y < ...}? use F = {y > -1} via complement of {y < -1}
    auto Fbig = SetDescriptor::complement(SetDescriptor::half_space({0, -1}, 1.0));  // {y > -1}
    (void)F;
    const Vec2 q{0, -1};
    CurvatureReport rE = curvature_pv(E, q, p, quad());
    CurvatureReport rF = curvature_pv(Fbig, q, p, quad());
    REQUIRE(rE.ring_partial_sums.size() == rF.ring_partial_sums.size());
    for (std::size_t k = 0; k < rE.ring_partial_sums.size(); ++k)
        CHECK(rE.ring_partial_sums[k] >= rF.ring_partial_sums[k] - 1e-7);
}

TEST_CASE("positive curvature at an exterior-tangent notch for small s") {
    // exterior data empty (E bounded): alpha_bar = 0, beta = varpi_2/4
    const double sigma = 0.1;
    const double delta_s = delta_threshold(0.0, sigma, 2);
    Vec2 q;
    auto E = notched_disk(1.0, std::max(0.17, delta_s * 1.05), &q);
    const double beta = 0.25 * 2.0 * kPi;
    for (double s : {sigma, 0.05}) {
        FracParams p(2, s);
        std::vector<double> rhos;
        double r = 0.05;
        for (int k = 0; k < 6; ++k) {
            rhos.push_back(r);
            r *= 0.5;
        }
        CurvatureReport rep = curvature_pv(E, q, p, quad(), rhos);
        for (double ring : rep.ring_partial_sums) CHECK(ring >= beta / s - 0.5);
    }
}

TEST_CASE("curvature asymptotics: disk and interval") {
    QuadSpec q = quad();
    auto B1 = SetDescriptor::ball({0, 0}, 1.0);

    AsymptoticsTable to1 = curvature_asymptotics(B1, {1, 0}, AsymptoticRegime::ToOne, {}, 2, q);
    CHECK(std::abs(to1.limit - 2.0) < 0.1);  // varpi_1 * H[B_1] = 2

    AsymptoticsTable to0 = curvature_asymptotics(B1, {1, 0}, AsymptoticRegime::ToZero, {}, 2, q);
    CHECK(std::abs(to0.limit - 2.0 * kPi) < 0.2);  // varpi_2 - 2 alpha(B_1)

    auto I = SetDescriptor::interval_union({{0.0, 1.0}});
    AsymptoticsTable i1 = curvature_asymptotics(I, {0, 0}, AsymptoticRegime::ToOne, {}, 1, q);
    CHECK(std::abs(i1.limit) < 0.05);  // varpi_0 = 0
}
