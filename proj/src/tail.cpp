#include "fracgeom/tail.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fracgeom/numerics.hpp"

namespace fracgeom {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// radial integral of t^{-1-s} over the trace segments beyond radius r
double radial_alpha(const RayTrace& rt, double r, double s) {
    double acc = 0.0;
    bool in = rt.start_inside;
    double prev = 0.0;
    auto add = [&](double lo, double hi) {
        lo = std::max(lo, r);
        if (std::isinf(hi)) {
            if (lo < hi) acc += std::pow(lo, -s);
            return;
        }
        if (hi > lo) acc += std::pow(lo, -s) - std::pow(hi, -s);
    };
    for (double b : rt.breaks) {
        if (in) add(prev, b);
        in = !in;
        prev = b;
    }
    if (in) add(prev, std::numeric_limits<double>::infinity());
    return acc / s;
}

double alpha_numeric_2d(Vec2 q, double r, const SetDescriptor& E, double s,
                        const QuadSpec& quad) {
    auto per_theta = [&](double th) {
        return radial_alpha(E.trace(q, unit_from_angle(th)), r, s);
    };
    return integrate(per_theta, 0.0, kTwoPi, std::min(quad.abs_tol, 1e-7) * s, 44);
}

double alpha_1d(Vec2 q, double r, const SetDescriptor& E, double s) {
    double acc = 0.0;
    for (const auto& [a, b] : E.to_intervals()) {
        // right side (y > q.x + r) and left side (y < q.x - r)
        const double ra = std::max(a - q.x, r), rb = b - q.x;
        if (rb > ra) acc += std::pow(ra, -s) - (std::isinf(rb) ? 0.0 : std::pow(rb, -s));
        const double la = std::max(q.x - b, r), lb = q.x - a;
        if (lb > la) acc += std::pow(la, -s) - (std::isinf(lb) ? 0.0 : std::pow(lb, -s));
    }
    return acc / s;
}

}  // namespace

double alpha_s(Vec2 q, double r, const SetDescriptor& E, const FracParams& params,
               const QuadSpec& quad) {
    params.validate();
    if (!(r > 0)) throw std::invalid_argument("alpha_s: radius must be positive");
    const double s = params.s;
    if (params.n == 1) return alpha_1d(q, r, E, s);

    // complement identity: alpha(q,r,CF) = varpi_n r^{-s}/s - alpha(q,r,F), exact
    if (auto* c = std::get_if<ComplementData>(&E.node().v)) {
        return params.varpi_n() * std::pow(r, -s) / s -
               alpha_s(q, r, SetDescriptor::wrap(c->inner), params, quad);
    }
    // cone anchored at the base point: the radial integral factors exactly
    if (auto* cn = std::get_if<AngularConeData>(&E.node().v)) {
        if ((cn->vertex - q).norm() <= 1e-12 * (1.0 + q.norm())) {
            double aperture = 0.0;
            for (const auto& [a, b] : cn->arcs) aperture += b - a;
            return aperture * std::pow(r, -s) / s;
        }
    }
    // bounded set far inside B_r(q) contributes nothing
    if (auto bb = E.bounds()) {
        if (bb->max_dist(q) <= r) return 0.0;
    }
    return alpha_numeric_2d(q, r, E, s, quad);
}

AlphaReport alpha_limit(const SetDescriptor& E, std::vector<double> s_sequence,
                        const FracParams& params, const QuadSpec& quad) {
    if (s_sequence.empty()) s_sequence = {0.2, 0.1, 0.05, 0.025};
    if (s_sequence.size() < 4) throw std::invalid_argument("alpha_limit: need >= 4 points");
    for (std::size_t i = 0; i < s_sequence.size(); ++i) {
        if (!(s_sequence[i] > 0.0 && s_sequence[i] <= 0.3))
            throw std::invalid_argument("alpha_limit: s_sequence must lie in (0, 0.3]");
        if (i > 0 && !(s_sequence[i] < s_sequence[i - 1]))
            throw std::invalid_argument("alpha_limit: s_sequence must decrease");
    }
    AlphaReport rep;
    rep.s_values = s_sequence;
    for (double s : s_sequence) {
        FracParams p(params.n, s);
        rep.s_alpha.push_back(s * alpha_s({0, 0}, 1.0, E, p, quad));
    }
    // pairwise linear extrapolations to s = 0 give the envelope
    std::vector<double> extr;
    for (std::size_t i = 0; i + 1 < s_sequence.size(); ++i) {
        const double s0 = s_sequence[i], s1 = s_sequence[i + 1];
        const double v0 = rep.s_alpha[i], v1 = rep.s_alpha[i + 1];
        extr.push_back(v1 + (v0 - v1) * (0.0 - s1) / (s0 - s1));
    }
    rep.alpha_bar = *std::max_element(extr.begin(), extr.end());
    rep.alpha_lower = *std::min_element(extr.begin(), extr.end());
    // base independence at a second (q, r)
    {
        const double s_chk = s_sequence[s_sequence.size() / 2];
        FracParams p(params.n, s_chk);
        const double at_base = s_chk * alpha_s({0, 0}, 1.0, E, p, quad);
        const Vec2 q2 = params.n == 1 ? Vec2{0.4, 0.0} : Vec2{0.3, 0.2};
        const double other = s_chk * alpha_s(q2, 1.7, E, p, quad);
        rep.base_check_deviation = std::abs(other - at_base);
    }
    const double tol = 0.02 * params.varpi_n();
    rep.exists = (rep.alpha_bar - rep.alpha_lower) <= tol && rep.base_check_deviation <= 4.0 * tol;
    return rep;
}

std::optional<double> alpha_analytic(const SetDescriptor& E, const FracParams& params) {
    const SetNode& n = E.node();
    const double varpi = params.varpi_n();
    if (auto* c = std::get_if<ComplementData>(&n.v)) {
        auto inner = alpha_analytic(SetDescriptor::wrap(c->inner), params);
        if (inner) return varpi - *inner;
        return std::nullopt;
    }
    if (auto* t = std::get_if<TransformedData>(&n.v)) {
        // the contribution from infinity is invariant under the affine map
        return alpha_analytic(SetDescriptor::wrap(t->inner), params);
    }
    if (std::get_if<BallData>(&n.v)) return 0.0;
    if (std::get_if<PolygonData>(&n.v)) return 0.0;
    if (std::get_if<HalfSpaceData>(&n.v)) return 0.5 * varpi;
    if (auto* iu = std::get_if<IntervalUnionData>(&n.v)) {
        double a = 0.0;
        if (!iu->intervals.empty()) {
            if (std::isinf(iu->intervals.front().first)) a += 1.0;
            if (std::isinf(iu->intervals.back().second)) a += 1.0;
        }
        return a;
    }
    if (auto* cn = std::get_if<AngularConeData>(&n.v)) {
        double aperture = 0.0;
        for (const auto& [a, b] : cn->arcs) aperture += b - a;
        return aperture;
    }
    if (auto* sg = std::get_if<SubgraphData>(&n.v)) {
        // subgraph {y < u(x)}
        switch (sg->profile.kind()) {
            case Profile::Kind::Linear:
            case Profile::Kind::BoundedTanh:
            case Profile::Kind::Table:
                return 0.5 * varpi;  // bounded or linear growth
            case Profile::Kind::Cubic:
                return 0.5 * varpi;  // odd superlinear: half of all directions
            case Profile::Kind::Quadratic:
                return sg->profile.a() > 0 ? varpi : 0.0;
            case Profile::Kind::AbsPower:
                if (sg->profile.p() < 1.0) return 0.5 * varpi;  // sublinear
                return sg->profile.a() > 0 ? varpi : 0.0;
        }
    }
    return std::nullopt;
}

}  // namespace fracgeom
