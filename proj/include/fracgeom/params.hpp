#pragma once

#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace fracgeom {

// Volume of the d-dimensional unit ball, d = 0,1,2.
inline double omega_d(int d) {
    switch (d) {
        case 0: return 1.0;
        case 1: return 2.0;
        case 2: return std::numbers::pi;
        default: throw std::invalid_argument("omega_d: d must be 0, 1 or 2");
    }
}

// Surface measure of S^{d-1}; varpi_0 = 0 by convention.
inline double varpi_d(int d) {
    switch (d) {
        case 0: return 0.0;
        case 1: return 2.0;
        case 2: return 2.0 * std::numbers::pi;
        default: throw std::invalid_argument("varpi_d: d must be 0, 1 or 2");
    }
}

// Ambient dimension and fractional exponent: the (n, s) pair every kernel
// is parameterized by.
struct FracParams {
    int n = 1;
    double s = 0.5;

    FracParams(int n_, double s_) : n(n_), s(s_) { validate(); }

    void validate() const {
        if (n != 1 && n != 2) throw std::invalid_argument("FracParams: n must be 1 or 2");
        if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("FracParams: s must lie in (0,1)");
    }

    double omega_n() const { return omega_d(n); }
    double varpi_n() const { return varpi_d(n); }
};

// Quadrature policy shared by the numeric paths.
struct QuadSpec {
    double abs_tol = 1e-8;
    double rel_tol = 1e-6;
    int max_depth = 9;             // stratification depth of the sampling quadtree
    double truncation_radius = 64.0;
    long mc_samples = 200000;
    std::uint64_t rng_seed = 0;

    void validate() const {
        if (!(abs_tol > 0) || !(rel_tol > 0)) throw std::invalid_argument("QuadSpec: tolerances must be positive");
        if (max_depth < 1) throw std::invalid_argument("QuadSpec: max_depth must be >= 1");
        if (!(truncation_radius > 0)) throw std::invalid_argument("QuadSpec: truncation_radius must be positive");
        if (mc_samples < 1) throw std::invalid_argument("QuadSpec: mc_samples must be >= 1");
    }
};

}  // namespace fracgeom
