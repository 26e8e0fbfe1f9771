#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracgeom/interaction.hpp"
#include "fracgeom/numerics.hpp"

using namespace fracgeom;

namespace {

QuadSpec quick_quad(long samples = 200000, std::uint64_t seed = 0) {
    QuadSpec q;
    q.mc_samples = samples;
    q.rng_seed = seed;
    return q;
}

// independent oracle: plain uniform-pair Monte Carlo for separated bounded sets
double mc_pair_oracle(const SetDescriptor& A, const Box& boxA, const SetDescriptor& B,
                      const Box& boxB, double s, long n, std::uint64_t seed, double* se) {
    Rng rng(seed);
    double sum = 0, sum2 = 0;
    for (long k = 0; k < n; ++k) {
        Vec2 x{rng.uniform(boxA.lo.x, boxA.hi.x), rng.uniform(boxA.lo.y, boxA.hi.y)};
        Vec2 y{rng.uniform(boxB.lo.x, boxB.hi.x), rng.uniform(boxB.lo.y, boxB.hi.y)};
        double f = 0;
        if (A.contains(x) && B.contains(y)) f = std::pow((x - y).norm2(), -0.5 * (2.0 + s));
        sum += f;
        sum2 += f * f;
    }
    const double vol = boxA.area(2) * boxB.area(2);
    const double mean = sum / n;
    if (se) *se = vol * std::sqrt(std::max(0.0, sum2 / n - mean * mean) / n);
    return vol * mean;
}

}  // namespace

TEST_CASE("interval closed form: frozen values") {
    // 4*(2*sqrt(2) - 1 - sqrt(3))
    CHECK(interval_interaction_exact(0, 1, 2, 3, 0.5) ==
          doctest::Approx(4.0 * (2.0 * std::sqrt(2.0) - 1.0 - std::sqrt(3.0))).epsilon(1e-12));
    // adjacent intervals: 4*(2 - sqrt(2))
    CHECK(interval_interaction_exact(0, 1, 1, 2, 0.5) ==
          doctest::Approx(4.0 * (2.0 - std::sqrt(2.0))).epsilon(1e-12));
    // empty interval
    CHECK(interval_interaction_exact(1, 1, 2, 3, 0.5) == 0.0);
    CHECK_THROWS(interval_interaction_exact(0, 2, 1, 3, 0.5));
    CHECK_THROWS(interval_interaction_exact(0, 1, 2, 3, 1.5));
}

TEST_CASE("interval closed form vs adaptive 2d quadrature") {
    const double s = 0.37;
    auto inner = [&](double x) {
        return integrate([&](double y) { return std::pow(std::abs(x - y), -1.0 - s); }, 2.0, 3.5,
                         1e-11, 30);
    };
    const double quad2d = integrate(inner, 0.0, 1.2, 1e-10, 30);
    CHECK(interval_interaction_exact(0.0, 1.2, 2.0, 3.5, s) == doctest::Approx(quad2d).epsilon(1e-8));
}

TEST_CASE("1-d interaction is the exact sum of closed forms") {
    FracParams p(1, 0.5);
    auto A = SetDescriptor::interval_union({{0, 1}});
    auto B = SetDescriptor::interval_union({{2, 3}});
    auto r = interaction(A, B, p, quick_quad());
    CHECK(r.value == doctest::Approx(interval_interaction_exact(0, 1, 2, 3, 0.5)).epsilon(1e-14));
    CHECK(r.est_error == 0.0);

    auto empty = SetDescriptor::interval_union({});
    CHECK(interaction(empty, B, p, quick_quad()).value == 0.0);

    CHECK_THROWS(interaction(SetDescriptor::interval_union({{0, 2}}),
                             SetDescriptor::interval_union({{1, 3}}), p, quick_quad()));
}

TEST_CASE("2-d interaction of separated balls matches the MC oracle") {
    FracParams p(2, 0.5);
    auto A = SetDescriptor::ball({0, 0}, 1.0);
    auto B = SetDescriptor::ball({4, 0}, 1.0);
    auto r = interaction(A, B, p, quick_quad(100000, 1));
    double se = 0;
    const double oracle = mc_pair_oracle(A, {{-1, -1}, {1, 1}}, B, {{3, -1}, {5, 1}}, 0.5,
                                         10000000, 99, &se);
    const double sigma = 3.0 * std::sqrt(se * se + 0.25 * r.est_error * r.est_error);
    CHECK(std::abs(r.value - oracle) < sigma);
}

TEST_CASE("2-d interaction symmetry") {
    FracParams p(2, 0.4);
    auto A = SetDescriptor::ball({0, 0}, 0.8);
    auto B = SetDescriptor::polygon({{2, -1}, {3, -1}, {3, 1}, {2, 1}});
    auto r1 = interaction(A, B, p, quick_quad(80000, 5));
    auto r2 = interaction(B, A, p, quick_quad(80000, 6));
    CHECK(std::abs(r1.value - r2.value) < r1.est_error + r2.est_error + 1e-12);
}

TEST_CASE("per_s half-line: exact closed form 4*sqrt(2)") {
    FracParams p(1, 0.5);
    auto E = SetDescriptor::half_space({1, 0}, 0.0, 1);  // (-inf, 0)
    auto rep = per_s(E, BoxDomain::make_interval(-1, 1), p, quick_quad());
    CHECK(rep.total == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(rep.local == doctest::Approx(4.0 * (2.0 - std::sqrt(2.0))).epsilon(1e-12));
    CHECK(rep.nonlocal == doctest::Approx(8.0 * (std::sqrt(2.0) - 1.0)).epsilon(1e-12));
    CHECK(rep.est_error == 0.0);
    CHECK(rep.total == doctest::Approx(rep.local + rep.nonlocal));
}

TEST_CASE("per_s 1-d scaling law is exact") {
    FracParams p(1, 0.5);
    auto E = SetDescriptor::half_space({1, 0}, 0.0, 1);
    auto E2 = E.transform(2.0, 0.0, {0, 0});
    auto r1 = per_s(E, BoxDomain::make_interval(-1, 1), p, quick_quad());
    auto r2 = per_s(E2, BoxDomain::make_interval(-2, 2), p, quick_quad());
    CHECK(r2.total / r1.total == doctest::Approx(std::pow(2.0, 1.0 - 0.5)).epsilon(1e-13));
}

TEST_CASE("per_s symmetry under complement (disk in a disk)") {
    FracParams p(2, 0.4);
    auto E = SetDescriptor::ball({0, 0}, 1.0);
    auto CE = SetDescriptor::complement(E);
    auto om = BoxDomain::make_ball({0, 0}, 2.0);
    QuadSpec q = quick_quad(150000, 2);
    auto rE = per_s(E, om, p, q);
    auto rC = per_s(CE, om, p, q);
    CHECK(std::abs(rE.total - rC.total) <= 2.0 * (rE.est_error + rC.est_error));
}

TEST_CASE("per_s subadditivity on disjoint 1-d sets") {
    FracParams p(1, 0.3);
    auto E = SetDescriptor::interval_union({{-0.8, -0.2}});
    auto F = SetDescriptor::interval_union({{0.1, 0.6}});
    auto EF = SetDescriptor::interval_union({{-0.8, -0.2}, {0.1, 0.6}});
    auto om = BoxDomain::make_interval(-1, 1);
    auto q = quick_quad();
    CHECK(per_s(EF, om, p, q).total <=
          per_s(E, om, p, q).total + per_s(F, om, p, q).total + 1e-12);
}

TEST_CASE("per_s monotone in the window") {
    FracParams p(1, 0.5);
    auto E = SetDescriptor::interval_union({{-0.5, 0.5}});
    auto q = quick_quad();
    auto big = per_s(E, BoxDomain::make_interval(-2, 2), p, q);
    auto small = per_s(E, BoxDomain::make_interval(-1, 1), p, q);
    CHECK(small.total <= big.total + 1e-12);
}

TEST_CASE("per_s translation and rotation invariance (n=2)") {
    FracParams p(2, 0.5);
    QuadSpec q = quick_quad(120000, 3);
    auto E = SetDescriptor::polygon({{-0.5, -0.4}, {0.6, -0.3}, {0.2, 0.7}});
    auto om = BoxDomain::make_ball({0, 0}, 1.5);
    auto base = per_s(E, om, p, q);
    const double ang = 1.234;
    const Vec2 shift{0.8, -1.1};
    auto E2 = E.transform(1.0, ang, shift);
    const Rot2 R = Rot2::from_angle(ang);
    auto om2 = BoxDomain::make_ball(R.apply({0, 0}) + shift, 1.5);
    auto moved = per_s(E2, om2, p, q);
    CHECK(std::abs(moved.total - base.total) <= 2.5 * (moved.est_error + base.est_error));
}

TEST_CASE("2-d disk scaling law within tolerance") {
    FracParams p(2, 0.5);
    QuadSpec q = quick_quad(400000, 4);
    auto E = SetDescriptor::ball({0, 0}, 1.0);
    auto r1 = per_s(E, BoxDomain::make_ball({0, 0}, 2.0), p, q);
    auto E2 = E.transform(2.0, 0.0, {0, 0});
    auto r2 = per_s(E2, BoxDomain::make_ball({0, 0}, 4.0), p, q);
    const double ratio = r2.total / r1.total;
    CHECK(ratio == doctest::Approx(std::pow(2.0, 2.0 - 0.5)).epsilon(0.01));
}
