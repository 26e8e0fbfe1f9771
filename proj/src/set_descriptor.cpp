#include "fracgeom/set_descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fracgeom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSubgraphSearchRadius = 1024.0;

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0) a += kTwoPi;
    return a;
}

}  // namespace

// ---------------------------------------------------------------------------
// Profile
// ---------------------------------------------------------------------------

Profile Profile::linear(double slope, double intercept) {
    Profile p; p.kind_ = Kind::Linear; p.a_ = slope; p.c_ = intercept; return p;
}
Profile Profile::quadratic(double a, double c) {
    Profile p; p.kind_ = Kind::Quadratic; p.a_ = a; p.c_ = c; return p;
}
Profile Profile::cubic(double a, double c) {
    Profile p; p.kind_ = Kind::Cubic; p.a_ = a; p.c_ = c; return p;
}
Profile Profile::abs_power(double a, double pw, double c) {
    if (!(pw > 0) || pw == 1.0) throw std::invalid_argument("Profile::abs_power: need p>0, p!=1");
    Profile p; p.kind_ = Kind::AbsPower; p.a_ = a; p.p_ = pw; p.c_ = c; return p;
}
Profile Profile::bounded_tanh(double a, double c) {
    Profile p; p.kind_ = Kind::BoundedTanh; p.a_ = a; p.c_ = c; return p;
}
Profile Profile::table(std::vector<double> xs, std::vector<double> vals) {
    if (xs.size() < 2 || xs.size() != vals.size())
        throw std::invalid_argument("Profile::table: need >= 2 samples");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw std::invalid_argument("Profile::table: xs must increase");
    Profile p; p.kind_ = Kind::Table; p.xs_ = std::move(xs); p.vals_ = std::move(vals);
    return p;
}

double Profile::eval(double x) const {
    switch (kind_) {
        case Kind::Linear: return a_ * x + c_;
        case Kind::Quadratic: return a_ * x * x + c_;
        case Kind::Cubic: return a_ * x * x * x + c_;
        case Kind::AbsPower: return a_ * std::pow(std::abs(x), p_) + c_;
        case Kind::BoundedTanh: return a_ * std::tanh(x) + c_;
        case Kind::Table: {
            if (x <= xs_.front()) return vals_.front();
            if (x >= xs_.back()) return vals_.back();
            auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
            std::size_t i = static_cast<std::size_t>(it - xs_.begin());
            const double t = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
            return vals_[i - 1] + t * (vals_[i] - vals_[i - 1]);
        }
    }
    return 0.0;
}

std::pair<double, double> Profile::range(double lo, double hi) const {
    double a = eval(lo), b = eval(hi);
    double mn = std::min(a, b), mx = std::max(a, b);
    auto consider = [&](double x) {
        if (x > lo && x < hi) {
            const double v = eval(x);
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
    };
    switch (kind_) {
        case Kind::Linear:
        case Kind::Cubic:
        case Kind::BoundedTanh:
            break;  // monotone
        case Kind::Quadratic:
        case Kind::AbsPower:
            consider(0.0);
            break;
        case Kind::Table:
            for (std::size_t i = 0; i < xs_.size(); ++i)
                if (xs_[i] > lo && xs_[i] < hi) {
                    mn = std::min(mn, vals_[i]);
                    mx = std::max(mx, vals_[i]);
                }
            break;
    }
    return {mn, mx};
}

double Profile::lipschitz(double R) const {
    switch (kind_) {
        case Kind::Linear: return std::abs(a_);
        case Kind::Quadratic: return 2.0 * std::abs(a_) * R;
        case Kind::Cubic: return 3.0 * std::abs(a_) * R * R;
        case Kind::AbsPower:
            return p_ >= 1.0 ? std::abs(a_) * p_ * std::pow(R, p_ - 1.0) : kInf;
        case Kind::BoundedTanh: return std::abs(a_);
        case Kind::Table: {
            double L = 0;
            for (std::size_t i = 1; i < xs_.size(); ++i)
                L = std::max(L, std::abs(vals_[i] - vals_[i - 1]) / (xs_[i] - xs_[i - 1]));
            return L;
        }
    }
    return kInf;
}

int Profile::tail_sign(Vec2 o, Vec2 d) const {
    // sign of u(o.x + t d.x) - (o.y + t d.y) as t -> infinity
    auto lin = [&](double growth_limit) {
        // u approaches slope 'growth_limit' relative to x; compare with ray
        const double c1 = growth_limit * d.x - d.y;
        if (c1 != 0.0) return c1 > 0 ? 1 : -1;
        return 0;
    };
    switch (kind_) {
        case Kind::Linear: {
            int s = lin(a_);
            if (s != 0) return s;
            const double c0 = a_ * o.x + c_ - o.y;
            return c0 > 0 ? 1 : (c0 < 0 ? -1 : 0);
        }
        case Kind::Quadratic:
            if (d.x != 0.0) return a_ > 0 ? 1 : -1;
            if (d.y != 0.0) return d.y < 0 ? 1 : -1;
            return 0;
        case Kind::Cubic:
            if (d.x != 0.0) return a_ * d.x > 0 ? 1 : -1;
            if (d.y != 0.0) return d.y < 0 ? 1 : -1;
            return 0;
        case Kind::AbsPower:
            if (p_ > 1.0) {
                if (d.x != 0.0) return a_ > 0 ? 1 : -1;
                if (d.y != 0.0) return d.y < 0 ? 1 : -1;
                return 0;
            }
            // sublinear: the ray's own slope dominates
            if (d.y != 0.0) return d.y < 0 ? 1 : -1;
            if (d.x != 0.0) return a_ > 0 ? 1 : -1;
            return 0;
        case Kind::BoundedTanh:
        case Kind::Table: {
            if (d.y != 0.0) return d.y < 0 ? 1 : -1;
            double limit;
            if (kind_ == Kind::BoundedTanh)
                limit = d.x > 0 ? a_ + c_ : -a_ + c_;
            else
                limit = d.x > 0 ? vals_.back() : vals_.front();
            const double c0 = limit - o.y;
            return c0 > 0 ? 1 : (c0 < 0 ? -1 : 0);
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// RayTrace combinators
// ---------------------------------------------------------------------------

RayTrace trace_not(RayTrace a) {
    a.start_inside = !a.start_inside;
    a.final_inside = !a.final_inside;
    return a;
}

RayTrace trace_and(const RayTrace& a, const RayTrace& b) {
    RayTrace out;
    out.start_inside = a.start_inside && b.start_inside;
    bool ia = a.start_inside, ib = b.start_inside;
    bool cur = out.start_inside;
    std::size_t i = 0, j = 0;
    while (i < a.breaks.size() || j < b.breaks.size()) {
        double t;
        if (j >= b.breaks.size() || (i < a.breaks.size() && a.breaks[i] <= b.breaks[j])) {
            t = a.breaks[i++];
            ia = !ia;
            if (j < b.breaks.size() && t == b.breaks[j]) { ib = !ib; ++j; }
        } else {
            t = b.breaks[j++];
            ib = !ib;
        }
        const bool now = ia && ib;
        if (now != cur) {
            out.breaks.push_back(t);
            cur = now;
        }
    }
    out.final_inside = a.final_inside && b.final_inside;
    return out;
}

// ---------------------------------------------------------------------------
// constructors and validation
// ---------------------------------------------------------------------------

namespace {
std::shared_ptr<const SetNode> make_node(SetNode n) {
    return std::make_shared<const SetNode>(std::move(n));
}
}  // namespace

SetDescriptor SetDescriptor::half_space(Vec2 normal, double offset, int dim) {
    const double nn = normal.norm();
    if (!(nn > 0)) throw std::invalid_argument("half_space: zero normal");
    if (dim != 1 && dim != 2) throw std::invalid_argument("half_space: dim must be 1 or 2");
    if (dim == 1 && normal.y != 0.0) throw std::invalid_argument("half_space: 1-d normal must be +-e1");
    return SetDescriptor(make_node({HalfSpaceData{normal * (1.0 / nn), offset / nn, dim}}));
}

SetDescriptor SetDescriptor::ball(Vec2 center, double radius, int dim) {
    if (!(radius > 0)) throw std::invalid_argument("ball: radius must be positive");
    if (dim != 1 && dim != 2) throw std::invalid_argument("ball: dim must be 1 or 2");
    if (dim == 1 && center.y != 0.0) throw std::invalid_argument("ball: 1-d center must lie on the axis");
    return SetDescriptor(make_node({BallData{center, radius, dim}}));
}

SetDescriptor SetDescriptor::angular_cone(Vec2 vertex, std::vector<std::pair<double, double>> arcs) {
    // normalized storage: start in [0,2pi), end = start + width with width <= 2pi
    double total = 0;
    std::vector<std::pair<double, double>> norm;
    for (const auto& [a, b] : arcs) {
        if (!(b > a)) throw std::invalid_argument("angular_cone: arc must have positive width");
        const double width = std::min(b - a, kTwoPi);
        total += width;
        const double start = wrap_angle(a);
        norm.emplace_back(start, start + width);
    }
    if (total > kTwoPi + 1e-12) throw std::invalid_argument("angular_cone: arcs exceed the full circle");
    return SetDescriptor(make_node({AngularConeData{vertex, std::move(norm)}}));
}

SetDescriptor SetDescriptor::interval_union(std::vector<std::pair<double, double>> intervals) {
    std::sort(intervals.begin(), intervals.end());
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (!(intervals[i].second > intervals[i].first))
            throw std::invalid_argument("interval_union: empty interval");
        if (i > 0 && intervals[i].first < intervals[i - 1].second)
            throw std::invalid_argument("interval_union: intervals must be disjoint");
    }
    return SetDescriptor(make_node({IntervalUnionData{std::move(intervals)}}));
}

SetDescriptor SetDescriptor::polygon(std::vector<Vec2> vertices) {
    if (vertices.size() < 3) throw std::invalid_argument("polygon: need >= 3 vertices");
    double area2 = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Vec2 p = vertices[i], q = vertices[(i + 1) % vertices.size()];
        area2 += p.cross(q);
    }
    if (!(area2 > 0)) throw std::invalid_argument("polygon: vertices must be positively oriented");
    PolygonData pd;
    pd.bbox = {vertices[0], vertices[0]};
    for (const Vec2& v : vertices) {
        pd.bbox.lo.x = std::min(pd.bbox.lo.x, v.x);
        pd.bbox.lo.y = std::min(pd.bbox.lo.y, v.y);
        pd.bbox.hi.x = std::max(pd.bbox.hi.x, v.x);
        pd.bbox.hi.y = std::max(pd.bbox.hi.y, v.y);
    }
    pd.vertices = std::move(vertices);
    const std::size_t ne = pd.vertices.size();
    if (ne > 64) {
        // bucket the edges on a uniform grid, roughly one edge per cell
        const int target = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(ne))));
        pd.grid_nx = std::min(target, 512);
        pd.grid_ny = pd.grid_nx;
        pd.cell = std::max(pd.bbox.width() / pd.grid_nx, pd.bbox.height() / pd.grid_ny);
        pd.grid_nx = std::max(1, static_cast<int>(std::ceil(pd.bbox.width() / pd.cell)));
        pd.grid_ny = std::max(1, static_cast<int>(std::ceil(pd.bbox.height() / pd.cell)));
        pd.buckets.assign(static_cast<std::size_t>(pd.grid_nx) * pd.grid_ny, {});
        for (std::size_t e = 0; e < ne; ++e) {
            const Vec2 p = pd.vertices[e], q = pd.vertices[(e + 1) % ne];
            const double x0 = std::min(p.x, q.x), x1 = std::max(p.x, q.x);
            const double y0 = std::min(p.y, q.y), y1 = std::max(p.y, q.y);
            int i0 = std::clamp(static_cast<int>((x0 - pd.bbox.lo.x) / pd.cell), 0, pd.grid_nx - 1);
            int i1 = std::clamp(static_cast<int>((x1 - pd.bbox.lo.x) / pd.cell), 0, pd.grid_nx - 1);
            int j0 = std::clamp(static_cast<int>((y0 - pd.bbox.lo.y) / pd.cell), 0, pd.grid_ny - 1);
            int j1 = std::clamp(static_cast<int>((y1 - pd.bbox.lo.y) / pd.cell), 0, pd.grid_ny - 1);
            for (int j = j0; j <= j1; ++j)
                for (int i = i0; i <= i1; ++i)
                    pd.buckets[static_cast<std::size_t>(j) * pd.grid_nx + i].push_back(static_cast<int>(e));
        }
    }
    return SetDescriptor(make_node({std::move(pd)}));
}

SetDescriptor SetDescriptor::subgraph(Profile u) {
    return SetDescriptor(make_node({SubgraphData{std::move(u)}}));
}

SetDescriptor SetDescriptor::complement(const SetDescriptor& inner) {
    if (!inner.valid()) throw std::invalid_argument("complement: invalid inner set");
    if (auto* c = std::get_if<ComplementData>(&inner.node().v))
        return SetDescriptor(c->inner);  // involution reduces structurally
    return SetDescriptor(make_node({ComplementData{inner.node_ptr()}}));
}

SetDescriptor SetDescriptor::transformed(const SetDescriptor& inner, double scale,
                                         double rot_angle, Vec2 translation) {
    if (!(scale > 0)) throw std::invalid_argument("transformed: scale must be positive");
    if (!inner.valid()) throw std::invalid_argument("transformed: invalid inner set");
    return SetDescriptor(make_node({TransformedData{inner.node_ptr(), scale,
                                                    Rot2::from_angle(rot_angle), rot_angle,
                                                    translation}}));
}

int SetDescriptor::dim() const {
    struct V {
        int operator()(const HalfSpaceData& d) const { return d.dim; }
        int operator()(const BallData& d) const { return d.dim; }
        int operator()(const AngularConeData&) const { return 2; }
        int operator()(const IntervalUnionData&) const { return 1; }
        int operator()(const PolygonData&) const { return 2; }
        int operator()(const SubgraphData&) const { return 2; }
        int operator()(const ComplementData& d) const { return SetDescriptor_dim(*d.inner); }
        int operator()(const TransformedData& d) const { return SetDescriptor_dim(*d.inner); }
        static int SetDescriptor_dim(const SetNode& n) { return std::visit(V{}, n.v); }
    };
    return std::visit(V{}, node_->v);
}

// ---------------------------------------------------------------------------
// contains
// ---------------------------------------------------------------------------

namespace {

bool polygon_contains(const PolygonData& pd, Vec2 p) {
    if (p.x <= pd.bbox.lo.x || p.x >= pd.bbox.hi.x || p.y <= pd.bbox.lo.y || p.y >= pd.bbox.hi.y)
        return false;
    // even-odd crossing count along +x with the half-open vertical rule
    const std::size_t ne = pd.vertices.size();
    int crossings = 0;
    auto test_edge = [&](int e) {
        const Vec2 a = pd.vertices[static_cast<std::size_t>(e)];
        const Vec2 b = pd.vertices[(static_cast<std::size_t>(e) + 1) % ne];
        if ((a.y > p.y) == (b.y > p.y)) return;
        const double xcross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
        if (xcross > p.x) ++crossings;
    };
    if (pd.buckets.empty()) {
        for (std::size_t e = 0; e < ne; ++e) test_edge(static_cast<int>(e));
    } else {
        // walk the bucket row to the right of p
        const int j = std::clamp(static_cast<int>((p.y - pd.bbox.lo.y) / pd.cell), 0, pd.grid_ny - 1);
        const int i0 = std::clamp(static_cast<int>((p.x - pd.bbox.lo.x) / pd.cell), 0, pd.grid_nx - 1);
        std::vector<int> cand;
        for (int i = i0; i < pd.grid_nx; ++i) {
            const auto& b = pd.buckets[static_cast<std::size_t>(j) * pd.grid_nx + i];
            cand.insert(cand.end(), b.begin(), b.end());
        }
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        for (int e : cand) test_edge(e);
    }
    return (crossings % 2) == 1;
}

bool cone_contains(const AngularConeData& cd, Vec2 p) {
    const Vec2 r = p - cd.vertex;
    if (r.norm2() == 0.0) return false;
    const double th = wrap_angle(r.angle());
    for (const auto& [a, b] : cd.arcs) {
        const double width = b - a;
        double off = wrap_angle(th - a);
        if (off > 0.0 && off < width) return true;
    }
    return false;
}

}  // namespace

bool SetDescriptor::contains(Vec2 x) const {
    struct V {
        Vec2 x;
        bool operator()(const HalfSpaceData& d) const { return x.dot(d.normal) < d.offset; }
        bool operator()(const BallData& d) const { return (x - d.center).norm2() < d.radius * d.radius; }
        bool operator()(const AngularConeData& d) const { return cone_contains(d, x); }
        bool operator()(const IntervalUnionData& d) const {
            for (const auto& [a, b] : d.intervals)
                if (x.x > a && x.x < b) return true;
            return false;
        }
        bool operator()(const PolygonData& d) const { return polygon_contains(d, x); }
        bool operator()(const SubgraphData& d) const { return x.y < d.profile.eval(x.x); }
        bool operator()(const ComplementData& d) const { return !std::visit(V{x}, d.inner->v); }
        bool operator()(const TransformedData& d) const {
            const Vec2 inner_pt = d.rot.apply_inv(x - d.translation) * (1.0 / d.scale);
            return std::visit(V{inner_pt}, d.inner->v);
        }
    };
    return std::visit(V{x}, node_->v);
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

namespace {

Region classify_node(const SetNode& n, const Box& b);

bool segment_intersects_box(Vec2 p, Vec2 q, const Box& b) {
    // Liang-Barsky clip: each slab contributes the constraint pp * t <= qq
    const double dx = q.x - p.x, dy = q.y - p.y;
    double t0 = 0.0, t1 = 1.0;
    auto clip = [&](double pp, double qq) {
        if (pp == 0.0) return qq >= 0.0;
        const double r = qq / pp;
        if (pp < 0) {
            if (r > t1) return false;
            if (r > t0) t0 = r;
        } else {
            if (r < t0) return false;
            if (r < t1) t1 = r;
        }
        return true;
    };
    return clip(-dx, p.x - b.lo.x) && clip(dx, b.hi.x - p.x) &&
           clip(-dy, p.y - b.lo.y) && clip(dy, b.hi.y - p.y) && t0 <= t1;
}

Region classify_polygon(const PolygonData& pd, const Box& b) {
    if (b.hi.x < pd.bbox.lo.x || b.lo.x > pd.bbox.hi.x || b.hi.y < pd.bbox.lo.y ||
        b.lo.y > pd.bbox.hi.y)
        return Region::Outside;
    const std::size_t ne = pd.vertices.size();
    auto edge_hits = [&](int e) {
        return segment_intersects_box(pd.vertices[static_cast<std::size_t>(e)],
                                      pd.vertices[(static_cast<std::size_t>(e) + 1) % ne], b);
    };
    if (pd.buckets.empty()) {
        for (std::size_t e = 0; e < ne; ++e)
            if (edge_hits(static_cast<int>(e))) return Region::Mixed;
    } else {
        int i0 = std::clamp(static_cast<int>((b.lo.x - pd.bbox.lo.x) / pd.cell), 0, pd.grid_nx - 1);
        int i1 = std::clamp(static_cast<int>((b.hi.x - pd.bbox.lo.x) / pd.cell), 0, pd.grid_nx - 1);
        int j0 = std::clamp(static_cast<int>((b.lo.y - pd.bbox.lo.y) / pd.cell), 0, pd.grid_ny - 1);
        int j1 = std::clamp(static_cast<int>((b.hi.y - pd.bbox.lo.y) / pd.cell), 0, pd.grid_ny - 1);
        std::vector<int> cand;
        for (int j = j0; j <= j1; ++j)
            for (int i = i0; i <= i1; ++i) {
                const auto& bk = pd.buckets[static_cast<std::size_t>(j) * pd.grid_nx + i];
                cand.insert(cand.end(), bk.begin(), bk.end());
            }
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        for (int e : cand)
            if (edge_hits(e)) return Region::Mixed;
    }
    return polygon_contains(pd, b.center()) ? Region::Inside : Region::Outside;
}

Region classify_cone(const AngularConeData& cd, const Box& b) {
    if (b.contains(cd.vertex, 2) || b.dist(cd.vertex) == 0.0) return Region::Mixed;
    // angular span of the box as seen from the vertex (width < pi)
    const Vec2 corners[4] = {b.lo, {b.hi.x, b.lo.y}, b.hi, {b.lo.x, b.hi.y}};
    const double base = (b.center() - cd.vertex).angle();
    double lo = 0.0, hi = 0.0;
    for (const Vec2& c : corners) {
        double off = (c - cd.vertex).angle() - base;
        while (off > std::numbers::pi) off -= kTwoPi;
        while (off < -std::numbers::pi) off += kTwoPi;
        lo = std::min(lo, off);
        hi = std::max(hi, off);
    }
    bool any = false, all_in_one = false;
    for (const auto& [a, w_end] : cd.arcs) {
        const double width = w_end - a;
        // position of the box span relative to this arc
        const double rel = wrap_angle(base + lo - a);
        const double span = hi - lo;
        if (rel > 0.0 && rel + span < width) all_in_one = true;
        // overlap check: arc [0,width), box span [rel, rel+span) (mod 2pi)
        if (rel < width || rel + span > kTwoPi) any = true;
    }
    if (all_in_one) return Region::Inside;
    if (!any) return Region::Outside;
    return Region::Mixed;
}

Region classify_node(const SetNode& n, const Box& b) {
    struct V {
        const Box& b;
        Region operator()(const HalfSpaceData& d) const {
            if (d.dim == 1) {
                const double v0 = d.normal.x * b.lo.x, v1 = d.normal.x * b.hi.x;
                if (std::max(v0, v1) < d.offset) return Region::Inside;
                if (std::min(v0, v1) > d.offset) return Region::Outside;
                return Region::Mixed;
            }
            const Vec2 corners[4] = {b.lo, {b.hi.x, b.lo.y}, b.hi, {b.lo.x, b.hi.y}};
            int in = 0, out = 0;
            for (const Vec2& c : corners) (c.dot(d.normal) < d.offset ? in : out)++;
            if (in == 4) return Region::Inside;
            if (out == 4) return Region::Outside;
            return Region::Mixed;
        }
        Region operator()(const BallData& d) const {
            if (d.dim == 1) {
                const double lo = d.center.x - d.radius, hi = d.center.x + d.radius;
                if (b.lo.x >= lo && b.hi.x <= hi) return Region::Inside;
                if (b.hi.x <= lo || b.lo.x >= hi) return Region::Outside;
                return Region::Mixed;
            }
            if (b.dist(d.center) >= d.radius) return Region::Outside;
            if (b.max_dist(d.center) <= d.radius) return Region::Inside;
            return Region::Mixed;
        }
        Region operator()(const AngularConeData& d) const { return classify_cone(d, b); }
        Region operator()(const IntervalUnionData& d) const {
            for (const auto& [a, bb] : d.intervals) {
                if (b.lo.x >= a && b.hi.x <= bb) return Region::Inside;
                if (b.hi.x > a && b.lo.x < bb) return Region::Mixed;
            }
            return Region::Outside;
        }
        Region operator()(const PolygonData& d) const { return classify_polygon(d, b); }
        Region operator()(const SubgraphData& d) const {
            const auto [umin, umax] = d.profile.range(b.lo.x, b.hi.x);
            if (b.hi.y <= umin) return Region::Inside;
            if (b.lo.y >= umax) return Region::Outside;
            return Region::Mixed;
        }
        Region operator()(const ComplementData& d) const {
            const Region r = classify_node(*d.inner, b);
            if (r == Region::Inside) return Region::Outside;
            if (r == Region::Outside) return Region::Inside;
            return Region::Mixed;
        }
        Region operator()(const TransformedData& d) const {
            // map the box into inner coordinates; classify its AABB (conservative)
            const Vec2 corners[4] = {b.lo, {b.hi.x, b.lo.y}, b.hi, {b.lo.x, b.hi.y}};
            Vec2 lo{kInf, kInf}, hi{-kInf, -kInf};
            for (const Vec2& c : corners) {
                const Vec2 p = d.rot.apply_inv(c - d.translation) * (1.0 / d.scale);
                lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y);
                hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y);
            }
            return classify_node(*d.inner, Box{lo, hi});
        }
    };
    return std::visit(V{b}, n.v);
}

}  // namespace

Region SetDescriptor::classify(const Box& b) const { return classify_node(*node_, b); }

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

std::optional<Box> SetDescriptor::bounds() const {
    struct V {
        std::optional<Box> operator()(const HalfSpaceData&) const { return std::nullopt; }
        std::optional<Box> operator()(const BallData& d) const {
            return Box{{d.center.x - d.radius, d.dim == 1 ? 0.0 : d.center.y - d.radius},
                       {d.center.x + d.radius, d.dim == 1 ? 0.0 : d.center.y + d.radius}};
        }
        std::optional<Box> operator()(const AngularConeData&) const { return std::nullopt; }
        std::optional<Box> operator()(const IntervalUnionData& d) const {
            if (d.intervals.empty()) return Box{{0, 0}, {0, 0}};
            const double a = d.intervals.front().first, b = d.intervals.back().second;
            if (!std::isfinite(a) || !std::isfinite(b)) return std::nullopt;
            return Box{{a, 0}, {b, 0}};
        }
        std::optional<Box> operator()(const PolygonData& d) const { return d.bbox; }
        std::optional<Box> operator()(const SubgraphData&) const { return std::nullopt; }
        std::optional<Box> operator()(const ComplementData&) const { return std::nullopt; }
        std::optional<Box> operator()(const TransformedData& d) const {
            auto inner = std::visit(V{}, d.inner->v);
            if (!inner) return std::nullopt;
            const Box ib = *inner;
            const Vec2 corners[4] = {ib.lo, {ib.hi.x, ib.lo.y}, ib.hi, {ib.lo.x, ib.hi.y}};
            Vec2 lo{kInf, kInf}, hi{-kInf, -kInf};
            for (const Vec2& c : corners) {
                const Vec2 p = d.rot.apply(c) * d.scale + d.translation;
                lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y);
                hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y);
            }
            return Box{lo, hi};
        }
    };
    return std::visit(V{}, node_->v);
}

// ---------------------------------------------------------------------------
// ray tracing (n = 2)
// ---------------------------------------------------------------------------

namespace {

RayTrace trace_node(const SetNode& n, Vec2 o, Vec2 d);

void push_sorted(std::vector<double>& v) { std::sort(v.begin(), v.end()); }

RayTrace trace_halfspace(const HalfSpaceData& hs, Vec2 o, Vec2 d) {
    RayTrace rt;
    const double f0 = o.dot(hs.normal) - hs.offset;
    const double df = d.dot(hs.normal);
    rt.start_inside = f0 < 0.0;
    rt.final_inside = df < 0.0 || (df == 0.0 && rt.start_inside);
    if (df != 0.0) {
        const double t = -f0 / df;
        if (t > 0.0) rt.breaks.push_back(t);
    }
    if (rt.breaks.empty()) rt.final_inside = rt.start_inside;
    return rt;
}

RayTrace trace_ball(const BallData& bd, Vec2 o, Vec2 d) {
    RayTrace rt;
    const Vec2 m = o - bd.center;
    const double b = m.dot(d);
    const double c = m.norm2() - bd.radius * bd.radius;
    rt.start_inside = c < 0.0;
    rt.final_inside = false;
    const double disc = b * b - c;
    if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        const double t1 = -b - sq, t2 = -b + sq;
        if (t1 > 0.0) rt.breaks.push_back(t1);
        if (t2 > 0.0) rt.breaks.push_back(t2);
    }
    return rt;
}

RayTrace trace_cone(const AngularConeData& cd, Vec2 o, Vec2 d) {
    RayTrace rt;
    rt.start_inside = cone_contains(cd, o);
    std::vector<double> ts;
    for (const auto& [a, b] : cd.arcs) {
        for (double psi : {a, b}) {
            const Vec2 e = unit_from_angle(psi);
            const double den = d.cross(e);
            if (den == 0.0) continue;
            const Vec2 rhs = cd.vertex - o;
            const double t = rhs.cross(e) / den;
            const double r = rhs.cross(d) / den;
            // r > 0 restricts to the actual boundary half-line
            if (t > 0.0 && r > 0.0) ts.push_back(t);
        }
    }
    push_sorted(ts);
    rt.breaks = std::move(ts);
    // direction angle decides the state at infinity
    bool fin = false;
    const double th = wrap_angle(d.angle());
    for (const auto& [a, b] : cd.arcs) {
        const double off = wrap_angle(th - a);
        if (off > 0.0 && off < b - a) { fin = true; break; }
    }
    rt.final_inside = fin;
    // reconcile parity with the computed crossings (degenerate grazes)
    bool parity = rt.start_inside;
    if (rt.breaks.size() % 2) parity = !parity;
    if (parity != rt.final_inside && !rt.breaks.empty()) rt.breaks.pop_back();
    return rt;
}

RayTrace trace_polygon(const PolygonData& pd, Vec2 o, Vec2 d) {
    RayTrace rt;
    rt.start_inside = polygon_contains(pd, o);
    rt.final_inside = false;
    const std::size_t ne = pd.vertices.size();
    std::vector<double> ts;
    auto test_edge = [&](int e) {
        const Vec2 p = pd.vertices[static_cast<std::size_t>(e)];
        const Vec2 q = pd.vertices[(static_cast<std::size_t>(e) + 1) % ne];
        const Vec2 eq = q - p;
        const double den = d.cross(eq);
        if (den == 0.0) return;
        const Vec2 rhs = p - o;
        const double t = rhs.cross(eq) / den;
        const double s = rhs.cross(d) / den;
        if (t > 0.0 && s >= 0.0 && s < 1.0) ts.push_back(t);
    };
    if (pd.buckets.empty()) {
        for (std::size_t e = 0; e < ne; ++e) test_edge(static_cast<int>(e));
    } else {
        // clip the ray to the bbox, then walk the grid (Amanatides-Woo)
        double t0 = 0.0, t1 = kInf;
        auto clip = [&](double org, double dir, double lo, double hi) {
            if (dir == 0.0) return org >= lo && org <= hi;
            double ta = (lo - org) / dir, tb = (hi - org) / dir;
            if (ta > tb) std::swap(ta, tb);
            t0 = std::max(t0, ta);
            t1 = std::min(t1, tb);
            return t0 <= t1;
        };
        if (!clip(o.x, d.x, pd.bbox.lo.x, pd.bbox.hi.x) ||
            !clip(o.y, d.y, pd.bbox.lo.y, pd.bbox.hi.y) || t1 < 0.0) {
            return rt;
        }
        t0 = std::max(t0, 0.0);
        Vec2 p = o + d * (t0 + 1e-12);
        int ci = std::clamp(static_cast<int>((p.x - pd.bbox.lo.x) / pd.cell), 0, pd.grid_nx - 1);
        int cj = std::clamp(static_cast<int>((p.y - pd.bbox.lo.y) / pd.cell), 0, pd.grid_ny - 1);
        const int stepi = d.x > 0 ? 1 : (d.x < 0 ? -1 : 0);
        const int stepj = d.y > 0 ? 1 : (d.y < 0 ? -1 : 0);
        auto boundary = [&](int idx, int step, double lo) {
            return lo + (idx + (step > 0 ? 1 : 0)) * pd.cell;
        };
        double tmaxx = stepi ? (boundary(ci, stepi, pd.bbox.lo.x) - o.x) / d.x : kInf;
        double tmaxy = stepj ? (boundary(cj, stepj, pd.bbox.lo.y) - o.y) / d.y : kInf;
        const double tdx = stepi ? pd.cell / std::abs(d.x) : kInf;
        const double tdy = stepj ? pd.cell / std::abs(d.y) : kInf;
        std::vector<int> cand;
        while (true) {
            const auto& bk = pd.buckets[static_cast<std::size_t>(cj) * pd.grid_nx + ci];
            cand.insert(cand.end(), bk.begin(), bk.end());
            if (tmaxx < tmaxy) {
                if (tmaxx > t1) break;
                ci += stepi;
                if (ci < 0 || ci >= pd.grid_nx) break;
                tmaxx += tdx;
            } else {
                if (tmaxy > t1) break;
                cj += stepj;
                if (cj < 0 || cj >= pd.grid_ny) break;
                tmaxy += tdy;
            }
        }
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        for (int e : cand) test_edge(e);
    }
    push_sorted(ts);
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    rt.breaks = std::move(ts);
    bool parity = rt.start_inside;
    if (rt.breaks.size() % 2) parity = !parity;
    if (parity) {
        // grazing artifact: drop the furthest crossing to restore consistency
        if (!rt.breaks.empty()) rt.breaks.pop_back();
    }
    return rt;
}

RayTrace trace_subgraph(const SubgraphData& sd, Vec2 o, Vec2 d) {
    RayTrace rt;
    const Profile& u = sd.profile;
    auto phi = [&](double t) { return u.eval(o.x + t * d.x) - (o.y + t * d.y); };
    rt.start_inside = phi(0.0) > 0.0;
    std::vector<double> ts;
    if (d.x == 0.0) {
        // vertical ray: single linear crossing
        if (d.y != 0.0) {
            const double t = (u.eval(o.x) - o.y) / d.y;
            if (t > 0.0) ts.push_back(t);
        }
    } else {
        // sign-change scan: linear near the origin, geometric out to the horizon
        std::vector<double> grid;
        for (int i = 1; i <= 200; ++i) grid.push_back(4.0 * i / 200.0);
        double t = 4.0;
        while (t < kSubgraphSearchRadius) {
            t *= 1.02;
            grid.push_back(t);
        }
        double prev_t = 0.0, prev_phi = phi(0.0);
        for (double g : grid) {
            const double ph = phi(g);
            if ((ph > 0) != (prev_phi > 0)) {
                double lo = prev_t, hi = g;
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if ((phi(mid) > 0) == (prev_phi > 0)) lo = mid; else hi = mid;
                }
                ts.push_back(0.5 * (lo + hi));
            }
            prev_t = g;
            prev_phi = ph;
        }
    }
    rt.breaks = std::move(ts);
    int fin = u.tail_sign(o, d);
    bool parity = rt.start_inside;
    if (rt.breaks.size() % 2) parity = !parity;
    if (fin == 0) {
        rt.final_inside = parity;
    } else {
        rt.final_inside = fin > 0;
        if (parity != rt.final_inside) rt.breaks.push_back(kSubgraphSearchRadius);
    }
    return rt;
}

RayTrace trace_node(const SetNode& n, Vec2 o, Vec2 d) {
    struct V {
        Vec2 o, d;
        RayTrace operator()(const HalfSpaceData& x) const { return trace_halfspace(x, o, d); }
        RayTrace operator()(const BallData& x) const { return trace_ball(x, o, d); }
        RayTrace operator()(const AngularConeData& x) const { return trace_cone(x, o, d); }
        RayTrace operator()(const IntervalUnionData&) const {
            throw std::logic_error("trace: 1-d set has no 2-d rays");
        }
        RayTrace operator()(const PolygonData& x) const { return trace_polygon(x, o, d); }
        RayTrace operator()(const SubgraphData& x) const { return trace_subgraph(x, o, d); }
        RayTrace operator()(const ComplementData& x) const {
            return trace_not(trace_node(*x.inner, o, d));
        }
        RayTrace operator()(const TransformedData& x) const {
            const Vec2 oi = x.rot.apply_inv(o - x.translation) * (1.0 / x.scale);
            const Vec2 di = x.rot.apply_inv(d);
            RayTrace rt = trace_node(*x.inner, oi, di);
            for (double& b : rt.breaks) b *= x.scale;
            return rt;
        }
    };
    return std::visit(V{o, d}, n.v);
}

}  // namespace

RayTrace SetDescriptor::trace(Vec2 origin, Vec2 dir) const {
    return trace_node(*node_, origin, dir);
}

// ---------------------------------------------------------------------------
// 1-d interval view
// ---------------------------------------------------------------------------

namespace {

using Intervals = std::vector<std::pair<double, double>>;

Intervals complement_intervals(const Intervals& in) {
    Intervals out;
    double cur = -kInf;
    for (const auto& [a, b] : in) {
        if (a > cur) out.emplace_back(cur, a);
        cur = std::max(cur, b);
    }
    if (cur < kInf) out.emplace_back(cur, kInf);
    return out;
}

Intervals intervals_node(const SetNode& n) {
    struct V {
        Intervals operator()(const HalfSpaceData& d) const {
            if (d.dim != 1) throw std::invalid_argument("to_intervals: set is 2-dimensional");
            if (d.normal.x > 0) return {{-kInf, d.offset / d.normal.x}};
            return {{d.offset / d.normal.x, kInf}};
        }
        Intervals operator()(const BallData& d) const {
            if (d.dim != 1) throw std::invalid_argument("to_intervals: set is 2-dimensional");
            return {{d.center.x - d.radius, d.center.x + d.radius}};
        }
        Intervals operator()(const AngularConeData&) const {
            throw std::invalid_argument("to_intervals: set is 2-dimensional");
        }
        Intervals operator()(const IntervalUnionData& d) const { return d.intervals; }
        Intervals operator()(const PolygonData&) const {
            throw std::invalid_argument("to_intervals: set is 2-dimensional");
        }
        Intervals operator()(const SubgraphData&) const {
            throw std::invalid_argument("to_intervals: set is 2-dimensional");
        }
        Intervals operator()(const ComplementData& d) const {
            return complement_intervals(std::visit(V{}, d.inner->v));
        }
        Intervals operator()(const TransformedData& d) const {
            const double r = d.rot.c;  // in 1-d the rotation reduces to +-1
            if (std::abs(d.rot.s) > 1e-12)
                throw std::invalid_argument("to_intervals: 1-d rotation must be a flip");
            Intervals in = std::visit(V{}, d.inner->v);
            Intervals out;
            for (auto [a, b] : in) {
                double u = d.scale * r * a + d.translation.x;
                double v = d.scale * r * b + d.translation.x;
                if (u > v) std::swap(u, v);
                out.emplace_back(u, v);
            }
            std::sort(out.begin(), out.end());
            return out;
        }
    };
    return std::visit(V{}, n.v);
}

}  // namespace

std::vector<std::pair<double, double>> SetDescriptor::to_intervals() const {
    return intervals_node(*node_);
}

// ---------------------------------------------------------------------------
// transform
// ---------------------------------------------------------------------------

SetDescriptor SetDescriptor::transform(double scale, double rot_angle, Vec2 translation) const {
    if (!(scale > 0)) throw std::invalid_argument("transform: scale must be positive");
    const Rot2 R = Rot2::from_angle(rot_angle);
    const Vec2 t = translation;

    if (auto* c = std::get_if<ComplementData>(&node_->v))
        return complement(SetDescriptor(c->inner).transform(scale, rot_angle, t));
    if (auto* tr = std::get_if<TransformedData>(&node_->v))
        return transformed(SetDescriptor(tr->inner), scale * tr->scale, rot_angle + tr->rot_angle,
                           R.apply(tr->translation) * scale + t);

    // in 1-d the rotation reduces to the flip +-1
    auto flip_1d = [&]() {
        if (std::abs(R.s) > 1e-9) throw std::invalid_argument("transform: 1-d rotation must be a flip");
        return R.c > 0 ? 1.0 : -1.0;
    };

    if (auto* hs = std::get_if<HalfSpaceData>(&node_->v)) {
        if (hs->dim == 1) {
            const double f = flip_1d();
            const Vec2 nu{f * hs->normal.x, 0.0};
            return half_space(nu, scale * hs->offset + t.x * nu.x, 1);
        }
        const Vec2 nu = R.apply(hs->normal);
        return half_space(nu, scale * hs->offset + t.dot(nu), 2);
    }
    if (auto* bl = std::get_if<BallData>(&node_->v)) {
        if (bl->dim == 1)
            return ball({flip_1d() * scale * bl->center.x + t.x, 0.0}, scale * bl->radius, 1);
        return ball(R.apply(bl->center) * scale + t, scale * bl->radius, 2);
    }
    if (auto* cn = std::get_if<AngularConeData>(&node_->v)) {
        std::vector<std::pair<double, double>> arcs;
        for (const auto& [a, b] : cn->arcs) arcs.emplace_back(a + rot_angle, b + rot_angle);
        return angular_cone(R.apply(cn->vertex) * scale + t, std::move(arcs));
    }
    if (auto* iu = std::get_if<IntervalUnionData>(&node_->v)) {
        const double f = flip_1d();
        std::vector<std::pair<double, double>> out;
        for (auto [a, b] : iu->intervals) {
            double u = scale * f * a + t.x, v = scale * f * b + t.x;
            if (u > v) std::swap(u, v);
            out.emplace_back(u, v);
        }
        return interval_union(std::move(out));
    }
    if (auto* pg = std::get_if<PolygonData>(&node_->v)) {
        std::vector<Vec2> vs;
        vs.reserve(pg->vertices.size());
        for (const Vec2& v : pg->vertices) vs.push_back(R.apply(v) * scale + t);
        return polygon(std::move(vs));
    }
    return transformed(*this, scale, rot_angle, t);
}

}  // namespace fracgeom
