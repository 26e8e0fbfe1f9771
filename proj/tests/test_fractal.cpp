#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracgeom/fractal.hpp"
#include "fracgeom/numerics.hpp"

using namespace fracgeom;

namespace {
QuadSpec fast_quad(long samples = 120000) {
    QuadSpec q;
    q.mc_samples = samples;
    return q;
}
}  // namespace

TEST_CASE("koch prefix: areas follow the replacement recursion") {
    const double s3 = std::sqrt(3.0);
    KochPrefix k0 = koch_prefix(0);
    CHECK(k0.area == doctest::Approx(s3 / 4.0).epsilon(1e-12));

    KochPrefix k1 = koch_prefix(1);
    CHECK(k1.area == doctest::Approx(s3 / 3.0).epsilon(1e-12));

    double expect = s3 / 4.0;
    for (int k = 1; k <= 5; ++k) {
        expect += 3.0 * std::pow(4.0, k - 1) * (s3 / 4.0) * std::pow(9.0, -k);
        CHECK(koch_prefix(k).area == doctest::Approx(expect).epsilon(1e-12));
    }
    // monotone from below toward the limit 2*sqrt(3)/5
    const double limit = 2.0 * s3 / 5.0;
    double prev = 0.0;
    for (int k = 0; k <= 6; ++k) {
        const double a = koch_prefix(k).area;
        CHECK(a > prev);
        CHECK(a < limit);
        prev = a;
    }
    CHECK(koch_prefix(6).area == doctest::Approx(limit).epsilon(1e-4));
    CHECK_THROWS(koch_prefix(9));
    CHECK_THROWS(koch_prefix(-1));
}

TEST_CASE("koch prefix vertex counts") {
    for (int k = 0; k <= 4; ++k) {
        const auto& node = koch_prefix(k).polygon.node();
        const auto* pd = std::get_if<PolygonData>(&node.v);
        REQUIRE(pd != nullptr);
        CHECK(static_cast<long>(pd->vertices.size()) == 3L * static_cast<long>(std::pow(4.0, k)));
    }
}

TEST_CASE("prefix sequence increments tile the difference") {
    PrefixSequence seq = koch_prefix_sequence(1, 3);
    REQUIRE(seq.prefixes.size() == 3);
    REQUIRE(seq.increments.size() == 2);
    CHECK(seq.increments[0].size() == 12);   // 3*4^1 triangles added at level 2
    CHECK(seq.increments[1].size() == 48);
    // pieces lie inside the next prefix and outside the previous one
    Rng rng(5);
    for (std::size_t lev = 0; lev < seq.increments.size(); ++lev) {
        for (std::size_t i = 0; i < seq.increments[lev].size(); i += 7) {
            const auto& piece = seq.increments[lev][i];
            const auto* pd = std::get_if<PolygonData>(&piece.node().v);
            REQUIRE(pd != nullptr);
            const Vec2 c{(pd->vertices[0].x + pd->vertices[1].x + pd->vertices[2].x) / 3.0,
                         (pd->vertices[0].y + pd->vertices[1].y + pd->vertices[2].y) / 3.0};
            CHECK(seq.prefixes[lev + 1].contains(c));
            CHECK_FALSE(seq.prefixes[lev].contains(c));
        }
    }
}

TEST_CASE("threshold_exact") {
    SelfSimilarFamily koch{SetDescriptor::polygon({{0, 0}, {1, 0}, {0.5, 0.8}}), 3.0, 3, 4, {}};
    CHECK(threshold_exact(koch, 2) ==
          doctest::Approx(2.0 - std::log(4.0) / std::log(3.0)).epsilon(1e-12));

    SelfSimilarFamily sier{SetDescriptor::polygon({{0, 0}, {1, 0}, {0.5, 0.8}}), 2.0, 1, 3, {}};
    CHECK(threshold_exact(sier, 2) ==
          doctest::Approx(2.0 - std::log(3.0) / std::log(2.0)).epsilon(1e-12));

    // scale-free: the building block does not enter the threshold
    SelfSimilarFamily koch2 = koch;
    koch2.building_block = koch.building_block.transform(3.7, 0.4, {1, 2});
    CHECK(threshold_exact(koch2, 2) == doctest::Approx(threshold_exact(koch, 2)));

    SelfSimilarFamily bad{SetDescriptor::polygon({{0, 0}, {1, 0}, {0.5, 0.8}}), 3.0, 1, 3, {}};
    CHECK_THROWS(threshold_exact(bad, 2));  // log3/log3 = 1 is the boundary case
}

TEST_CASE("koch increment ratios match 4*3^{s-2}") {
    PrefixSequence seq = koch_prefix_sequence(1, 5);
    BoxDomain om = BoxDomain::make_box({-1.2, -1.2}, {1.2, 1.2});
    FracParams p(2, 0.5);
    QuadSpec q = fast_quad(250000);

    for (double s : {0.5, 0.85}) {
        DimFResult res = dimf_estimate(seq, om, {s}, p, q);
        // pull rho(s) from the fitted table: mean of the level ratios
        double rho_fit = 0.0;
        int cnt = 0;
        for (const auto& row : res.table)
            if (row.increment_ratio > 0) {
                rho_fit += row.increment_ratio;
                ++cnt;
            }
        REQUIRE(cnt > 0);
        rho_fit /= cnt;
        const double expect = 4.0 * std::pow(3.0, s - 2.0);
        CHECK(std::abs(rho_fit - expect) < 0.05);
    }
}

TEST_CASE("dimf estimate lands at log4/log3") {
    PrefixSequence seq = koch_prefix_sequence(1, 5);
    BoxDomain om = BoxDomain::make_box({-1.2, -1.2}, {1.2, 1.2});
    FracParams p(2, 0.5);
    DimFResult res = dimf_estimate(seq, om, {0.3, 0.5, 0.65, 0.8, 0.9}, p, fast_quad());
    CHECK(res.bracketed);
    CHECK(std::abs(res.dim - std::log(4.0) / std::log(3.0)) < 0.05);
}

TEST_CASE("dimf_estimate wants at least 3 levels") {
    PrefixSequence seq = koch_prefix_sequence(1, 2);
    BoxDomain om = BoxDomain::make_box({-1.2, -1.2}, {1.2, 1.2});
    CHECK_THROWS(dimf_estimate(seq, om, {0.5}, FracParams(2, 0.5), fast_quad()));
}

TEST_CASE("box counting: segment, koch, square") {
    BoxDomain om = BoxDomain::make_box({-1.3, -1.3}, {1.3, 1.3});
    std::vector<double> scales;
    for (int j = 1; j <= 5; ++j) scales.push_back(std::pow(3.0, -j));

    // a thin slab: boundary is two parallel lines -> dimension 1
    auto slab = SetDescriptor::polygon({{-1.0, -0.3}, {1.0, -0.3}, {1.0, 0.3}, {-1.0, 0.3}});
    CHECK(std::abs(box_counting_dim(slab, om, scales) - 1.0) < 0.05);

    auto koch6 = koch_prefix(6).polygon;
    CHECK(std::abs(box_counting_dim(koch6, om, scales) - 1.262) < 0.06);

    CHECK_THROWS(box_counting_dim(slab, om, {0.1, 0.2, 0.05, 0.02}));  // not decreasing
    CHECK_THROWS(box_counting_dim(slab, om, {0.1, 0.05}));             // too few
}

TEST_CASE("dimf is below box counting (visintin ordering)") {
    PrefixSequence seq = koch_prefix_sequence(1, 5);
    BoxDomain om = BoxDomain::make_box({-1.2, -1.2}, {1.2, 1.2});
    DimFResult res = dimf_estimate(seq, om, {0.3, 0.5, 0.65, 0.8, 0.9}, FracParams(2, 0.5),
                                   fast_quad());
    std::vector<double> scales;
    for (int j = 1; j <= 5; ++j) scales.push_back(std::pow(3.0, -j));
    const double bc = box_counting_dim(koch_prefix(6).polygon, om, scales);
    CHECK(res.dim <= bc + 0.02);
}
