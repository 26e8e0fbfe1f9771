#include "fracgeom/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fracgeom/kernel.hpp"
#include "fracgeom/numerics.hpp"

namespace fracgeom {

namespace {

constexpr double kPi = std::numbers::pi;

// int over E-trace segments beyond rho of t^{-1-s} dt (same reduction the
// tail module uses, duplicated here to keep the modules independent)
double radial_chi(const RayTrace& rt, double rho, double s) {
    double acc = 0.0;
    bool in = rt.start_inside;
    double prev = 0.0;
    for (double b : rt.breaks) {
        if (in) {
            const double lo = std::max(prev, rho);
            if (b > lo) acc += std::pow(lo, -s) - std::pow(b, -s);
        }
        in = !in;
        prev = b;
    }
    if (in) {
        const double lo = std::max(prev, rho);
        acc += std::pow(lo, -s);
    }
    return acc / s;
}

// I_s^rho for n = 2: angular integral of paired exact radial integrals
double ring_value_2d(const SetDescriptor& E, Vec2 q, double rho, double s, double tol) {
    auto paired = [&](double th) {
        const Vec2 d = unit_from_angle(th);
        const double a1 = radial_chi(E.trace(q, d), rho, s);
        const double a2 = radial_chi(E.trace(q, {-d.x, -d.y}), rho, s);
        return 2.0 * std::pow(rho, -s) / s - 2.0 * (a1 + a2);
    };
    return integrate(paired, 0.0, kPi, tol, 44);
}

// n = 1: two directions, exact interval sums
double ring_value_1d(const SetDescriptor& E, Vec2 q, double rho, double s) {
    const auto iv = E.to_intervals();
    double chi = 0.0;
    for (const auto& [a, b] : iv) {
        const double ra = std::max(a - q.x, rho), rb = b - q.x;
        if (rb > ra) chi += std::pow(ra, -s) - (std::isinf(rb) ? 0.0 : std::pow(rb, -s));
        const double la = std::max(q.x - b, rho), lb = q.x - a;
        if (lb > la) chi += std::pow(la, -s) - (std::isinf(lb) ? 0.0 : std::pow(lb, -s));
    }
    return 2.0 * std::pow(rho, -s) / s - 2.0 * chi / s;
}

}  // namespace

CurvatureReport curvature_pv(const SetDescriptor& E, Vec2 q, const FracParams& params,
                             const QuadSpec& quad, std::vector<double> rho_sequence) {
    params.validate();
    if (rho_sequence.empty()) {
        double r = 0.5;
        for (int k = 0; k < 8; ++k) {
            rho_sequence.push_back(r);
            r *= 0.5;
        }
    }
    for (std::size_t i = 1; i < rho_sequence.size(); ++i)
        if (!(rho_sequence[i] < rho_sequence[i - 1]))
            throw std::invalid_argument("curvature_pv: rho_sequence must decrease");
    const double s = params.s;
    CurvatureReport rep;
    for (double rho : rho_sequence) {
        double v;
        if (params.n == 1) {
            v = ring_value_1d(E, q, rho, s);
        } else {
            const double tol = std::min(quad.abs_tol, 1e-7) * std::max(1.0, std::pow(rho, -s));
            v = ring_value_2d(E, q, rho, s, tol);
        }
        rep.ring_partial_sums.push_back(v);
    }
    const auto& S = rep.ring_partial_sums;
    rep.value = aitken_limit(S);
    rep.outer = S.front();
    rep.inner = rep.value - rep.outer;
    rep.est_error = std::abs(rep.value - S.back());
    // Cauchy check on the tail of the sequence
    if (S.size() >= 3) {
        const double d1 = std::abs(S[S.size() - 1] - S[S.size() - 2]);
        const double d2 = std::abs(S[S.size() - 2] - S[S.size() - 3]);
        rep.converged = d1 <= 1.5 * d2 + 1e-9 * std::max(1.0, std::abs(rep.value));
    }
    return rep;
}

CurvatureReport curvature_graph(const GraphPatch& patch, const SetDescriptor& E_far, Vec2 p,
                                const FracParams& params, const QuadSpec& quad) {
    params.validate();
    if (params.n != 2) throw std::invalid_argument("curvature_graph: implemented for n = 2");
    const double s = params.s;
    if (!(s < patch.holder_alpha))
        throw std::invalid_argument("curvature_graph: requires s < patch Holder exponent");
    const double r = patch.radius, h = patch.height;
    const Kernel& ker = kernel_for(params.n - 1, s);

    // consistency of the far set with the chart inside the cylinder
    {
        Rng rng(quad.rng_seed ^ 0x5eedu);
        for (int k = 0; k < 200; ++k) {
            const double x = rng.uniform(p.x - r, p.x + r);
            const double y = rng.uniform(p.y - h, p.y + h);
            const bool in_graph = y > patch.v(x);
            if (in_graph != E_far.contains({x, y}))
                throw std::invalid_argument("curvature_graph: far set disagrees with the patch");
        }
    }

    const double vp = patch.v(p.x);
    const double gp = patch.grad_at_p;
    auto integrand = [&](double y) {
        const double d = y - p.x;
        const double ad = std::abs(d);
        const double t1 = (patch.v(y) - vp) / ad;
        const double t2 = gp * (d > 0 ? 1.0 : -1.0);
        return (ker.G(t1) - ker.G(t2)) * std::pow(ad, -1.0 - s);
    };
    // geometric panels toward the chart center keep the integrand smooth
    double inner = 0.0;
    const double tol = std::min(quad.abs_tol, 1e-9);
    double hi = r;
    for (int k = 0; k < 60 && hi > 1e-14; ++k) {
        const double lo = hi * 0.5;
        inner += integrate([&](double t) { return integrand(p.x + t); }, lo, hi, tol, 20);
        inner += integrate([&](double t) { return integrand(p.x - t); }, -hi, -lo, tol, 20);
        hi = lo;
    }
    inner *= 2.0;

    // far field over the cylinder complement: exact radial integrals from p
    auto far_theta = [&](double th) {
        const Vec2 d = unit_from_angle(th);
        // exit radius of the rectangle (p.x - r, p.x + r) x (p.y - h, p.y + h)
        double te = std::numeric_limits<double>::infinity();
        if (d.x != 0.0) te = std::min(te, (d.x > 0 ? r : -r) / d.x);
        if (d.y != 0.0) te = std::min(te, (d.y > 0 ? h : -h) / d.y);
        const double chi = radial_chi(E_far.trace(p, d), te, s);
        return std::pow(te, -s) / s - 2.0 * chi;
    };
    const double outer = integrate(far_theta, 0.0, 2.0 * kPi, std::min(quad.abs_tol, 1e-8), 40);

    CurvatureReport rep;
    rep.inner = inner;
    rep.outer = outer;
    rep.value = inner + outer;
    rep.est_error = 10.0 * tol + 1e-8;
    return rep;
}

double delta_threshold(double alpha_bar, double s, int n) {
    const double varpi = varpi_d(n);
    if (!(alpha_bar < 0.5 * varpi))
        throw std::invalid_argument("delta_threshold: requires alpha_bar < varpi_n / 2");
    if (!(s > 0 && s < 1)) throw std::invalid_argument("delta_threshold: s outside (0,1)");
    const double beta = 0.25 * (varpi - 2.0 * alpha_bar);
    return std::exp(-std::log((varpi + 2.0 * beta) / (varpi + beta)) / s);
}

AsymptoticsTable curvature_asymptotics(const SetDescriptor& E, Vec2 q, AsymptoticRegime regime,
                                       std::vector<double> s_sequence, int n,
                                       const QuadSpec& quad) {
    if (s_sequence.empty()) {
        s_sequence = regime == AsymptoticRegime::ToOne ? std::vector<double>{0.8, 0.9, 0.95}
                                                       : std::vector<double>{0.1, 0.05, 0.025};
    }
    AsymptoticsTable tab;
    tab.s_values = s_sequence;

    // catalog chart for the s->1 regime in the plane: balls (possibly
    // complemented) have an exact circular chart
    const BallData* ball = std::get_if<BallData>(&E.node().v);
    const bool use_graph = regime == AsymptoticRegime::ToOne && n == 2 && ball != nullptr;

    for (double s : s_sequence) {
        FracParams p(n, s);
        double raw;
        if (use_graph) {
            const double R = ball->radius;
            const Vec2 bottom{ball->center.x, ball->center.y - R};
            GraphPatch patch;
            patch.v = [c = ball->center, R](double x) {
                const double dx = x - c.x;
                return c.y - std::sqrt(std::max(0.0, R * R - dx * dx));
            };
            patch.grad_at_p = 0.0;
            patch.holder_alpha = 1.0;
            patch.radius = 0.5 * R;
            patch.height = 0.25 * R;
            raw = curvature_graph(patch, E, bottom, p, quad).value;
        } else {
            raw = curvature_pv(E, q, p, quad).value;
        }
        tab.raw.push_back(raw);
        tab.rescaled.push_back(regime == AsymptoticRegime::ToOne ? (1.0 - s) * raw : s * raw);
    }
    std::vector<double> t(s_sequence.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        t[i] = regime == AsymptoticRegime::ToOne ? 1.0 - s_sequence[i] : s_sequence[i];
    tab.limit = extrapolate_to_zero(t, tab.rescaled);
    return tab;
}

}  // namespace fracgeom
