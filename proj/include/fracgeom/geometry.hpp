#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fracgeom {

struct Vec2 {
    double x = 0.0, y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double c) const { return {c * x, c * y}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
    double angle() const { return std::atan2(y, x); }
};

inline Vec2 unit_from_angle(double a) { return {std::cos(a), std::sin(a)}; }

// Rotation by angle (n=2); in n=1 only the flip +-1 survives.
struct Rot2 {
    double c = 1.0, s = 0.0;
    static Rot2 from_angle(double a) { return {std::cos(a), std::sin(a)}; }
    Vec2 apply(Vec2 v) const { return {c * v.x - s * v.y, s * v.x + c * v.y}; }
    Vec2 apply_inv(Vec2 v) const { return {c * v.x + s * v.y, -s * v.x + c * v.y}; }
    Rot2 compose(Rot2 o) const { return {c * o.c - s * o.s, s * o.c + c * o.s}; }
};

struct Box {
    Vec2 lo, hi;

    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
    Vec2 center() const { return {0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y)}; }
    double diam(int n) const {
        return n == 1 ? width() : std::hypot(width(), height());
    }
    double area(int n) const { return n == 1 ? width() : width() * height(); }
    bool contains(Vec2 p, int n) const {
        if (n == 1) return p.x > lo.x && p.x < hi.x;
        return p.x > lo.x && p.x < hi.x && p.y > lo.y && p.y < hi.y;
    }
    // Distance from p to the box (0 if inside).
    double dist(Vec2 p) const {
        const double dx = std::max({lo.x - p.x, 0.0, p.x - hi.x});
        const double dy = std::max({lo.y - p.y, 0.0, p.y - hi.y});
        return std::hypot(dx, dy);
    }
    double max_dist(Vec2 p) const {
        const double dx = std::max(std::abs(p.x - lo.x), std::abs(p.x - hi.x));
        const double dy = std::max(std::abs(p.y - lo.y), std::abs(p.y - hi.y));
        return std::hypot(dx, dy);
    }
    static Box hull(const Box& a, const Box& b) {
        return {{std::min(a.lo.x, b.lo.x), std::min(a.lo.y, b.lo.y)},
                {std::max(a.hi.x, b.hi.x), std::max(a.hi.y, b.hi.y)}};
    }
};

// Gap between two boxes, 0 when they touch or overlap.
inline double box_gap(const Box& a, const Box& b) {
    const double dx = std::max({a.lo.x - b.hi.x, 0.0, b.lo.x - a.hi.x});
    const double dy = std::max({a.lo.y - b.hi.y, 0.0, b.lo.y - a.hi.y});
    return std::hypot(dx, dy);
}

// Open axis-aligned box or ball: the localizing domains Omega.
struct BoxDomain {
    bool is_ball = false;
    Box box{};             // valid when !is_ball
    Vec2 center{};         // valid when is_ball
    double radius = 0.0;

    static BoxDomain make_box(Vec2 lo, Vec2 hi) {
        BoxDomain d; d.is_ball = false; d.box = {lo, hi}; return d;
    }
    static BoxDomain make_interval(double a, double b) {
        return make_box({a, 0.0}, {b, 0.0});
    }
    static BoxDomain make_ball(Vec2 c, double r) {
        BoxDomain d; d.is_ball = true; d.center = c; d.radius = r;
        d.box = {{c.x - r, c.y - r}, {c.x + r, c.y + r}};
        return d;
    }
    Box bounding_box() const { return box; }
    double measure(int n) const {
        if (is_ball) return n == 1 ? 2.0 * radius : std::numbers::pi * radius * radius;
        return box.area(n);
    }
    double diam(int n) const { return is_ball ? 2.0 * radius : box.diam(n); }
    bool contains(Vec2 p, int n) const {
        if (is_ball) {
            if (n == 1) return std::abs(p.x - center.x) < radius;
            return (p - center).norm2() < radius * radius;
        }
        return box.contains(p, n);
    }
};

}  // namespace fracgeom
