#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace fracgeom {

// Pairwise tree summation: deterministic result independent of how the
// terms were produced (serial or parallel), bounded rounding growth.
inline double tree_sum(std::span<const double> v) {
    if (v.empty()) return 0.0;
    std::vector<double> buf(v.begin(), v.end());
    std::size_t n = buf.size();
    while (n > 1) {
        std::size_t m = 0;
        for (std::size_t i = 0; i + 1 < n; i += 2) buf[m++] = buf[i] + buf[i + 1];
        if (n % 2) buf[m++] = buf[n - 1];
        n = m;
    }
    return buf[0];
}

// Neville polynomial extrapolation of (t_i, f_i) to t = 0.
// Used for Richardson limits s->0, s->1 (with t = 1-s) and ring sequences.
inline double extrapolate_to_zero(std::span<const double> t, std::span<const double> f) {
    const std::size_t n = t.size();
    if (n == 0 || f.size() != n) throw std::invalid_argument("extrapolate_to_zero: bad input");
    std::vector<double> p(f.begin(), f.end());
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = 0; i + k < n; ++i)
            p[i] = (t[i + k] * p[i] - t[i] * p[i + 1]) / (t[i + k] - t[i]);
    return p[0];
}

// Least-squares line y = a + b x; returns {a, b}.
inline std::pair<double, double> fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw std::invalid_argument("fit_line: need >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i]; sy += y[i]; sxx += x[i] * x[i]; sxy += x[i] * y[i];
    }
    const double d = n * sxx - sx * sx;
    if (d == 0) throw std::invalid_argument("fit_line: degenerate abscissae");
    const double b = (n * sxy - sx * sy) / d;
    const double a = (sy - b * sx) / n;
    return {a, b};
}

// Aitken delta-squared acceleration; returns the last accelerated value.
inline double aitken_limit(std::span<const double> s) {
    if (s.size() < 3) return s.empty() ? 0.0 : s.back();
    std::vector<double> cur(s.begin(), s.end());
    while (cur.size() >= 3) {
        std::vector<double> nxt;
        for (std::size_t i = 0; i + 2 < cur.size(); ++i) {
            const double d1 = cur[i + 1] - cur[i];
            const double d2 = cur[i + 2] - 2 * cur[i + 1] + cur[i];
            nxt.push_back(std::abs(d2) > 1e-300 ? cur[i] - d1 * d1 / d2 : cur[i + 2]);
        }
        cur = std::move(nxt);
    }
    return cur.back();
}

namespace detail {
// 15-point Gauss-Legendre nodes/weights on [-1,1].
inline constexpr double kGL15x[15] = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
inline constexpr double kGL15w[15] = {
    0.03075324199611727, 0.07036604748810812, 0.10715922046717194,
    0.13957067792615432, 0.16626920581699392, 0.18616100001556220,
    0.19843148532711158, 0.20257824192556127, 0.19843148532711158,
    0.18616100001556220, 0.16626920581699392, 0.13957067792615432,
    0.10715922046717194, 0.07036604748810812, 0.03075324199611727};

inline double gl15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0;
    for (int i = 0; i < 15; ++i) s += kGL15w[i] * f(c + h * kGL15x[i]);
    return s * h;
}

inline double adapt_rec(const std::function<double(double)>& f, double a, double b,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = gl15(f, a, m), right = gl15(f, m, b);
    const double delta = left + right - whole;
    if (std::abs(delta) <= tol || depth <= 0) return left + right;
    return adapt_rec(f, a, m, left, 0.5 * tol, depth - 1) +
           adapt_rec(f, m, b, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

// Adaptive Gauss quadrature of f over [a,b] to absolute tolerance tol.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int max_depth = 40) {
    if (a == b) return 0.0;
    return detail::adapt_rec(f, a, b, detail::gl15(f, a, b), tol, max_depth);
}

// splitmix64: decorrelates per-stratum seeds from a base seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// xoshiro-free tiny counter RNG, deterministic across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(splitmix64(seed)) {}
    std::uint64_t next_u64() { return state_ = splitmix64(state_); }
    // uniform in [0,1)
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * next_double(); }

  private:
    std::uint64_t state_;
};

}  // namespace fracgeom
