#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracgeom/kernel.hpp"
#include "fracgeom/numerics.hpp"

using namespace fracgeom;

TEST_CASE("G table matches adaptive quadrature to 1e-10") {
    for (double s : {0.1, 0.5, 0.9}) {
        const Kernel& k = kernel_for(1, s);
        for (double t : {0.01, 0.3, 1.0, 2.7, 10.0, 40.0, 63.9, 64.0, 100.0, 1e4}) {
            double ref;
            if (t <= 200.0) {
                ref = integrate([&](double u) { return k.g(u); }, 0.0, t, 1e-13, 48);
            } else {
                const double cut = t * 100;
                const double remainder = std::pow(cut, -1.0 - s) / (1.0 + s);
                ref = 0.5 * k.Lambda() -
                      integrate([&](double u) { return k.g(u); }, t, cut, 1e-13, 48) - remainder;
            }
            CHECK(std::abs(k.G(t) - ref) < 1e-10);
            CHECK(k.G(-t) == doctest::Approx(-k.G(t)));
        }
    }
}

TEST_CASE("Lambda agrees with quadrature; lambda_small is exact") {
    for (double s : {0.25, 0.75}) {
        const Kernel& k = kernel_for(1, s);
        const double lam_quad =
            2.0 * integrate([&](double u) { return k.g(u); }, 0.0, 1000.0, 1e-12, 48) +
            2.0 * std::pow(1000.0, -s - 1.0) / (s + 1.0);
        CHECK(k.Lambda() == doctest::Approx(lam_quad).epsilon(1e-8));
        const double T = 5000.0;
        const double lam1 =
            integrate([&](double u) { return u * k.g(u); }, 0.0, T, 1e-12, 48) +
            std::pow(1.0 + T * T, -0.5 * s) / s;  // exact tail of t*g
        CHECK(k.lambda_small() == doctest::Approx(lam1).epsilon(1e-9));
        CHECK(k.lambda_small() == doctest::Approx(1.0 / s));
    }
}

TEST_CASE("G(0) and Gcal(0) vanish") {
    const Kernel& k = kernel_for(1, 0.5);
    CHECK(k.G(0.0) == 0.0);
    CHECK(k.Gcal(0.0) == 0.0);
}

TEST_CASE("G bounds: c* min(1,|t|) <= |G| <= min(Lambda/2, |t|)") {
    for (double s : {0.15, 0.5, 0.85}) {
        const Kernel& k = kernel_for(1, s);
        for (int i = 1; i <= 1000; ++i) {
            const double t = -30.0 + 60.0 * i / 1000.0;
            if (t == 0.0) continue;
            const double a = std::abs(k.G(t));
            CHECK(a >= k.c_star() * std::min(1.0, std::abs(t)) - 1e-12);
            CHECK(a <= std::min(0.5 * k.Lambda(), std::abs(t)) + 1e-12);
        }
    }
}

TEST_CASE("Gcal bounds from the kernel lemma on a 1000-point grid") {
    for (double s : {0.2, 0.6}) {
        const Kernel& k = kernel_for(1, s);
        for (int i = 0; i <= 1000; ++i) {
            const double t = -40.0 + 80.0 * i / 1000.0;
            const double v = k.Gcal(t);
            const double at = std::abs(t);
            CHECK(v >= 0.5 * k.c_star() * std::min(at, t * t) - 1e-12);
            CHECK(v <= 0.5 * t * t + 1e-12);
            CHECK(v <= 0.5 * k.Lambda() * at + 1e-12);
            CHECK(v >= 0.5 * k.Lambda() * at - k.lambda_small() - 1e-10);
        }
    }
}

TEST_CASE("Gcal equals its defining double integral") {
    const Kernel& k = kernel_for(1, 0.4);
    for (double t : {0.2, 1.0, 3.0, 20.0}) {
        const double ref = integrate([&](double u) { return k.G(u); }, 0.0, t, 1e-12, 40);
        CHECK(k.Gcal(t) == doctest::Approx(ref).epsilon(1e-9));
        CHECK(k.Gcal(-t) == doctest::Approx(k.Gcal(t)));
    }
}

TEST_CASE("kernel_antiderivatives entry point") {
    auto kv = kernel_antiderivatives(0.0, 1, 0.5);
    CHECK(kv.g == 1.0);
    CHECK(kv.G == 0.0);
    CHECK(kv.Gcal == 0.0);
}
