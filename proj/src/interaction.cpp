#include "fracgeom/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fracgeom/numerics.hpp"

namespace fracgeom {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
}  // namespace

// ---------------------------------------------------------------------------
// exact 1-d machinery
// ---------------------------------------------------------------------------

double interval_interaction_exact(double a, double b, double c, double d, double s) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("interval_interaction_exact: s outside (0,1)");
    if (b <= a || d <= c) return 0.0;  // empty interval
    if (!(b <= c)) throw std::invalid_argument("interval_interaction_exact: need a<b<=c<d");
    const double q = 1.0 - s;
    const double pref = 1.0 / (s * q);
    const bool a_inf = std::isinf(a), d_inf = std::isinf(d);
    if (a_inf && d_inf) throw std::invalid_argument("interval_interaction_exact: divergent (both half-lines)");
    if (a_inf) return pref * (std::pow(d - b, q) - std::pow(c - b, q));
    if (d_inf) return pref * (std::pow(c - a, q) - std::pow(c - b, q));
    return pref * (std::pow(c - a, q) + std::pow(d - b, q) - std::pow(c - b, q) - std::pow(d - a, q));
}

namespace {

using Intervals = std::vector<std::pair<double, double>>;

// ordered pair value, either order of the two intervals
double interval_pair(std::pair<double, double> I, std::pair<double, double> J, double s) {
    if (I.first > J.first) std::swap(I, J);
    const double overlap = std::min(I.second, J.second) - J.first;
    if (overlap > 1e-14 * std::max(1.0, std::abs(J.first)))
        throw std::invalid_argument("interaction: sets overlap with positive measure");
    return interval_interaction_exact(I.first, I.second, std::max(J.first, I.second), J.second, s);
}

double intervals_interaction(const Intervals& A, const Intervals& B, double s) {
    std::vector<double> terms;
    terms.reserve(A.size() * B.size());
    for (const auto& I : A)
        for (const auto& J : B) terms.push_back(interval_pair(I, J, s));
    return tree_sum(terms);
}

Intervals clip_intervals(const Intervals& in, double lo, double hi) {
    Intervals out;
    for (const auto& [a, b] : in) {
        const double u = std::max(a, lo), v = std::min(b, hi);
        if (v > u) out.emplace_back(u, v);
    }
    return out;
}

Intervals complement_of(const Intervals& in) {
    Intervals out;
    double cur = -kInf;
    for (const auto& [a, b] : in) {
        if (a > cur) out.emplace_back(cur, a);
        cur = std::max(cur, b);
    }
    if (cur < kInf) out.emplace_back(cur, kInf);
    return out;
}

// ---------------------------------------------------------------------------
// 2-d conjunction view (set AND clip), with exact ray structure
// ---------------------------------------------------------------------------

struct Conj {
    const ClippedSet& cs;

    bool contains(Vec2 x) const {
        if (!cs.set.contains(x)) return false;
        if (!cs.has_clip) return true;
        const bool in = cs.clip.contains(x, 2);
        return cs.clip_complement ? !in : in;
    }

    Region classify(const Box& b) const {
        Region r = cs.set.classify(b);
        if (r == Region::Outside || !cs.has_clip) return r;
        Region rc = clip_classify(b);
        if (rc == Region::Outside) return Region::Outside;
        if (r == Region::Inside && rc == Region::Inside) return Region::Inside;
        return Region::Mixed;
    }

    Region clip_classify(const Box& b) const {
        Region rc;
        if (cs.clip.is_ball) {
            if (b.dist(cs.clip.center) >= cs.clip.radius) rc = Region::Outside;
            else if (b.max_dist(cs.clip.center) <= cs.clip.radius) rc = Region::Inside;
            else rc = Region::Mixed;
        } else {
            const Box& cb = cs.clip.box;
            if (b.lo.x >= cb.lo.x && b.hi.x <= cb.hi.x && b.lo.y >= cb.lo.y && b.hi.y <= cb.hi.y)
                rc = Region::Inside;
            else if (b.hi.x <= cb.lo.x || b.lo.x >= cb.hi.x || b.hi.y <= cb.lo.y || b.lo.y >= cb.hi.y)
                rc = Region::Outside;
            else rc = Region::Mixed;
        }
        if (cs.clip_complement) {
            if (rc == Region::Inside) return Region::Outside;
            if (rc == Region::Outside) return Region::Inside;
        }
        return rc;
    }

    RayTrace clip_trace(Vec2 o, Vec2 d) const {
        RayTrace rt;
        if (cs.clip.is_ball) {
            const Vec2 m = o - cs.clip.center;
            const double bq = m.dot(d), cq = m.norm2() - cs.clip.radius * cs.clip.radius;
            rt.start_inside = cq < 0.0;
            rt.final_inside = false;
            const double disc = bq * bq - cq;
            if (disc > 0.0) {
                const double sq = std::sqrt(disc);
                if (-bq - sq > 0.0) rt.breaks.push_back(-bq - sq);
                if (-bq + sq > 0.0) rt.breaks.push_back(-bq + sq);
            }
        } else {
            const Box& cb = cs.clip.box;
            rt.start_inside = cb.contains(o, 2);
            rt.final_inside = false;
            std::vector<double> ts;
            auto slab = [&](double org, double dir, double lo, double hi, double& t0, double& t1) {
                if (dir == 0.0) {
                    if (org <= lo || org >= hi) { t0 = 1.0; t1 = 0.0; }
                    return;
                }
                double ta = (lo - org) / dir, tb = (hi - org) / dir;
                if (ta > tb) std::swap(ta, tb);
                t0 = std::max(t0, ta);
                t1 = std::min(t1, tb);
            };
            double t0 = -kInf, t1 = kInf;
            slab(o.x, d.x, cb.lo.x, cb.hi.x, t0, t1);
            slab(o.y, d.y, cb.lo.y, cb.hi.y, t0, t1);
            if (t0 < t1) {
                if (t0 > 0.0) rt.breaks.push_back(t0);
                if (t1 > 0.0) rt.breaks.push_back(t1);
            }
        }
        if (cs.clip_complement) return trace_not(rt);
        return rt;
    }

    RayTrace trace(Vec2 o, Vec2 d) const {
        RayTrace rt = cs.set.trace(o, d);
        if (!cs.has_clip) return rt;
        return trace_and(rt, clip_trace(o, d));
    }

    std::optional<Box> bounds() const {
        std::optional<Box> sb = cs.set.bounds();
        if (cs.has_clip && !cs.clip_complement) {
            const Box cb = cs.clip.bounding_box();
            if (!sb) return cb;
            Box b{{std::max(sb->lo.x, cb.lo.x), std::max(sb->lo.y, cb.lo.y)},
                  {std::min(sb->hi.x, cb.hi.x), std::min(sb->hi.y, cb.hi.y)}};
            if (b.lo.x > b.hi.x || b.lo.y > b.hi.y) b = {{0, 0}, {0, 0}};
            return b;
        }
        return sb;
    }
};

// radial integral (1/s) sum over B-segments of (r_lo^{-s} - r_hi^{-s})
double radial_integral(const RayTrace& rt, double s) {
    double acc = 0.0;
    bool in = rt.start_inside;
    double prev = 0.0;
    const double floor_r = 1e-14;
    for (double b : rt.breaks) {
        if (in) {
            const double rl = std::max(prev, floor_r);
            acc += std::pow(rl, -s) - std::pow(b, -s);
        }
        in = !in;
        prev = b;
    }
    if (in) acc += std::pow(std::max(prev, floor_r), -s);
    return acc / s;
}

struct Leaf {
    Box box;
    Region cls_a;
};

// Stratified sampling of L_s(A,B) in 2-d: x in A by leaf-stratified uniform
// sampling, the inner integral computed exactly along the full line through
// x at a uniform angle (antithetic half-lines from one trace).
InteractionResult mc_interaction_2d(const Conj& A, const Conj& B, double s,
                                    const QuadSpec& quad) {
    auto boundsA = A.bounds();
    if (!boundsA) throw std::invalid_argument("interaction: outer set must be bounded");
    Box root = *boundsA;
    if (root.width() <= 0.0 || root.height() <= 0.0) return {0.0, 0.0};

    // stratification: refine where A is mixed or B's boundary is near
    std::vector<Leaf> leaves;
    const long leaf_cap = std::max<long>(64, quad.mc_samples / 16);
    struct Item { Box b; int depth; };
    std::vector<Item> stack{{root, 0}};
    while (!stack.empty()) {
        const Item it = stack.back();
        stack.pop_back();
        const Region ra = A.classify(it.b);
        if (ra == Region::Outside) continue;
        bool refine = false;
        if (it.depth < quad.max_depth && static_cast<long>(leaves.size()) + static_cast<long>(stack.size()) < leaf_cap) {
            if (ra == Region::Mixed) refine = true;
            else {
                const double w = it.b.width(), h = it.b.height();
                Box infl{{it.b.lo.x - w, it.b.lo.y - h}, {it.b.hi.x + w, it.b.hi.y + h}};
                if (B.classify(infl) == Region::Mixed) refine = true;
            }
        }
        if (refine) {
            const Vec2 c = it.b.center();
            stack.push_back({{it.b.lo, c}, it.depth + 1});
            stack.push_back({{{c.x, it.b.lo.y}, {it.b.hi.x, c.y}}, it.depth + 1});
            stack.push_back({{{it.b.lo.x, c.y}, {c.x, it.b.hi.y}}, it.depth + 1});
            stack.push_back({{c, it.b.hi}, it.depth + 1});
        } else {
            leaves.push_back({it.b, ra});
        }
    }
    if (leaves.empty()) return {0.0, 0.0};

    // sample allocation proportional to leaf area (refinement already
    // concentrates leaves where the integrand is rough)
    double total_area = 0.0;
    for (const Leaf& lf : leaves) total_area += lf.box.area(2);
    std::vector<double> vals(leaves.size(), 0.0);
    std::vector<double> vars(leaves.size(), 0.0);
    for (std::size_t li = 0; li < leaves.size(); ++li) {
        const Leaf& lf = leaves[li];
        const long per_leaf = std::max<long>(
            6, std::lround(static_cast<double>(quad.mc_samples) * lf.box.area(2) / total_area));
        Rng rng(quad.rng_seed ^ splitmix64(0x91e3c7a5u + li));
        double sum = 0.0, sum2 = 0.0;
        for (long k = 0; k < per_leaf; ++k) {
            const Vec2 x{rng.uniform(lf.box.lo.x, lf.box.hi.x),
                         rng.uniform(lf.box.lo.y, lf.box.hi.y)};
            double f = 0.0;
            if (lf.cls_a == Region::Inside || A.contains(x)) {
                const double th = kPi * rng.next_double();
                const Vec2 d = unit_from_angle(th);
                f = kPi * (radial_integral(B.trace(x, d), s) +
                           radial_integral(B.trace(x, {-d.x, -d.y}), s));
            }
            sum += f;
            sum2 += f * f;
        }
        const double mean = sum / static_cast<double>(per_leaf);
        const double area = lf.box.area(2);
        vals[li] = area * mean;
        const double var = std::max(0.0, sum2 / static_cast<double>(per_leaf) - mean * mean);
        vars[li] = area * area * var / static_cast<double>(per_leaf);
    }
    InteractionResult res;
    res.value = tree_sum(vals);
    res.est_error = 2.0 * std::sqrt(tree_sum(vars));
    return res;
}

bool reducible_to_intervals(const SetDescriptor& s) {
    try {
        (void)s.to_intervals();
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// public entry points
// ---------------------------------------------------------------------------

InteractionResult interaction_clipped(const ClippedSet& A, const ClippedSet& B,
                                      const FracParams& params, const QuadSpec& quad) {
    params.validate();
    quad.validate();
    if (params.n == 1) {
        Intervals ia = A.set.to_intervals();
        Intervals ib = B.set.to_intervals();
        auto apply_clip = [](Intervals v, const ClippedSet& c) {
            if (!c.has_clip) return v;
            const double lo = c.clip.box.lo.x, hi = c.clip.box.hi.x;
            if (!c.clip_complement) return clip_intervals(v, lo, hi);
            Intervals left = clip_intervals(v, -kInf, lo);
            Intervals right = clip_intervals(v, hi, kInf);
            left.insert(left.end(), right.begin(), right.end());
            return left;
        };
        ia = apply_clip(std::move(ia), A);
        ib = apply_clip(std::move(ib), B);
        return {intervals_interaction(ia, ib, params.s), 0.0};
    }
    Conj ca{A}, cb{B};
    // outer factor must be bounded; interactions are symmetric
    if (!ca.bounds() && cb.bounds()) return mc_interaction_2d(cb, ca, params.s, quad);
    return mc_interaction_2d(ca, cb, params.s, quad);
}

InteractionResult interaction(const SetDescriptor& A, const SetDescriptor& B,
                              const FracParams& params, const QuadSpec& quad) {
    params.validate();
    quad.validate();
    if (A.dim() != params.n || B.dim() != params.n)
        throw std::invalid_argument("interaction: set dimension does not match params.n");
    if (params.n == 1) {
        return {intervals_interaction(A.to_intervals(), B.to_intervals(), params.s), 0.0};
    }
    const auto ba = A.bounds(), bb = B.bounds();
    if (!ba && !bb) throw std::invalid_argument("interaction: both sets unbounded");
    // probabilistic overlap precondition (1000 rejection samples)
    {
        const Box probe = ba ? *ba : *bb;
        Rng rng(quad.rng_seed ^ 0xABCDEF12u);
        for (int k = 0; k < 1000; ++k) {
            const Vec2 x{rng.uniform(probe.lo.x, probe.hi.x), rng.uniform(probe.lo.y, probe.hi.y)};
            if (A.contains(x) && B.contains(x))
                throw std::invalid_argument("interaction: sets overlap with positive measure");
        }
    }
    return interaction_clipped(ClippedSet::plain(A), ClippedSet::plain(B), params, quad);
}

InteractionResult per_s_local(const SetDescriptor& E, const BoxDomain& omega,
                              const FracParams& params, const QuadSpec& quad) {
    params.validate();
    quad.validate();
    if (params.n == 1) {
        const double a = omega.box.lo.x, b = omega.box.hi.x;
        Intervals ie = E.to_intervals();
        Intervals in = clip_intervals(ie, a, b);
        Intervals out = clip_intervals(complement_of(ie), a, b);
        return {intervals_interaction(in, out, params.s), 0.0};
    }
    return interaction_clipped(ClippedSet::inside(E, omega),
                               ClippedSet::inside(SetDescriptor::complement(E), omega), params, quad);
}

PerimeterReport per_s(const SetDescriptor& E, const BoxDomain& omega,
                      const FracParams& params, const QuadSpec& quad) {
    params.validate();
    quad.validate();
    PerimeterReport rep;
    rep.truncation_radius_used = quad.truncation_radius;
    if (params.n == 1) {
        if (!reducible_to_intervals(E)) throw std::invalid_argument("per_s: not a 1-d set");
        const double a = omega.box.lo.x, b = omega.box.hi.x;
        Intervals ie = E.to_intervals();
        Intervals ce = complement_of(ie);
        Intervals e_in = clip_intervals(ie, a, b);
        Intervals e_out_l = clip_intervals(ie, -kInf, a), e_out_r = clip_intervals(ie, b, kInf);
        Intervals c_in = clip_intervals(ce, a, b);
        Intervals c_out_l = clip_intervals(ce, -kInf, a), c_out_r = clip_intervals(ce, b, kInf);
        rep.local = intervals_interaction(e_in, c_in, params.s);
        double nl = 0.0;
        for (const Intervals* co : {&c_out_l, &c_out_r}) nl += intervals_interaction(e_in, *co, params.s);
        for (const Intervals* eo : {&e_out_l, &e_out_r}) nl += intervals_interaction(*eo, c_in, params.s);
        rep.nonlocal = nl;
        rep.total = rep.local + rep.nonlocal;
        rep.est_error = 0.0;
        return rep;
    }
    const SetDescriptor CE = SetDescriptor::complement(E);
    const InteractionResult loc = interaction_clipped(ClippedSet::inside(E, omega),
                                                      ClippedSet::inside(CE, omega), params, quad);
    const InteractionResult nl1 = interaction_clipped(ClippedSet::inside(E, omega),
                                                      ClippedSet::outside(CE, omega), params, quad);
    const InteractionResult nl2 = interaction_clipped(ClippedSet::inside(CE, omega),
                                                      ClippedSet::outside(E, omega), params, quad);
    rep.local = loc.value;
    rep.nonlocal = nl1.value + nl2.value;
    rep.total = rep.local + rep.nonlocal;
    rep.est_error = loc.est_error + nl1.est_error + nl2.est_error;
    return rep;
}

}  // namespace fracgeom
