#include "fracgeom/kernel.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "fracgeom/numerics.hpp"

namespace fracgeom {

namespace {
constexpr double kTableMax = 64.0;
constexpr int kTableN = 16384;  // step 1/256, cubic Hermite keeps |err| < 1e-11
}  // namespace

Kernel::Kernel(int graph_dim, double s) : d_(graph_dim), s_(s) {
    if (graph_dim < 1 || graph_dim > 2) throw std::invalid_argument("Kernel: graph_dim must be 1 or 2");
    if (!(s > 0 && s < 1)) throw std::invalid_argument("Kernel: s must lie in (0,1)");
    p_ = 0.5 * (d_ + 1 + s_);
    Lambda_ = std::sqrt(std::numbers::pi) * std::tgamma(p_ - 0.5) / std::tgamma(p_);
    lambda_ = 1.0 / (d_ + s_ - 1.0);
    c_star_ = std::pow(2.0, -p_);
    t_max_ = kTableMax;
    step_ = t_max_ / kTableN;
    table_.resize(kTableN + 1);
    table_[0] = 0.0;
    // cumulative Gauss panels: g is analytic, each panel is exact to roundoff
    double acc = 0.0;
    for (int i = 1; i <= kTableN; ++i) {
        const double a = (i - 1) * step_, b = i * step_;
        acc += detail::gl15([this](double t) { return g(t); }, a, b);
        table_[i] = acc;
    }
}

double Kernel::g(double t) const { return std::pow(1.0 + t * t, -p_); }

double Kernel::tail_integral(double t) const {
    // int_t^inf (1+tau^2)^{-p} dtau expanded at infinity, |t| >= t_max
    const double m = 2.0 * p_;  // d+1+s
    const double t1 = std::pow(t, 1.0 - m) / (m - 1.0);
    const double t2 = p_ * std::pow(t, -1.0 - m) / (m + 1.0);
    const double t3 = 0.5 * p_ * (p_ + 1.0) * std::pow(t, -3.0 - m) / (m + 3.0);
    return t1 - t2 + t3;
}

double Kernel::G(double t) const {
    const double a = std::abs(t);
    double v;
    if (a >= t_max_) {
        v = 0.5 * Lambda_ - tail_integral(a);
    } else {
        const double u = a / step_;
        int i = static_cast<int>(u);
        if (i >= kTableN) i = kTableN - 1;
        const double x = u - i;  // in [0,1)
        const double h = step_;
        const double f0 = table_[i], f1 = table_[i + 1];
        const double d0 = g(i * h), d1 = g((i + 1) * h);
        const double x2 = x * x, x3 = x2 * x;
        v = (2 * x3 - 3 * x2 + 1) * f0 + (x3 - 2 * x2 + x) * h * d0 +
            (-2 * x3 + 3 * x2) * f1 + (x3 - x2) * h * d1;
    }
    return t < 0 ? -v : v;
}

double Kernel::Gcal(double t) const {
    // int_0^t G = t G(t) - int_0^t tau g(tau), the last integral is closed form
    const double a = std::abs(t);
    const double first_moment = lambda_ * (1.0 - std::pow(1.0 + a * a, 1.0 - p_));
    return a * G(a) - first_moment;
}

const Kernel& kernel_for(int graph_dim, double s) {
    static std::map<std::pair<int, long long>, Kernel> cache;
    static std::mutex mu;
    const std::pair<int, long long> key{graph_dim, std::llround(s * 1e12)};
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, Kernel(graph_dim, s)).first;
    return it->second;
}

KernelValues kernel_antiderivatives(double t, int graph_dim, double s) {
    const Kernel& k = kernel_for(graph_dim, s);
    return {k.g(t), k.G(t), k.Gcal(t)};
}

}  // namespace fracgeom
