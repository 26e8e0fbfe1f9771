#pragma once

#include <optional>
#include <vector>

#include "fracgeom/params.hpp"
#include "fracgeom/set_descriptor.hpp"

namespace fracgeom {

// Weighted tail integral alpha_s(q,r,E) = int_{CB_r(q)} chi_E(y) |q-y|^{-n-s} dy.
// Exact for cones anchored at q and for 1-d interval sets; otherwise an
// adaptive angular quadrature of exact radial integrals.
double alpha_s(Vec2 q, double r, const SetDescriptor& E, const FracParams& params,
               const QuadSpec& quad);

struct AlphaReport {
    std::vector<double> s_values;
    std::vector<double> s_alpha;     // s * alpha_s(0,1,E)
    double alpha_bar = 0.0;          // limsup envelope of the extrapolations
    double alpha_lower = 0.0;        // liminf envelope
    bool exists = false;             // envelopes agree within 0.02 * varpi_n
    double base_check_deviation = 0.0;
};

// Extrapolates s*alpha_s along a decreasing s-sequence (default
// {0.2,0.1,0.05,0.025}) with the linear-in-s error model, and verifies
// base independence at a second (q,r).
AlphaReport alpha_limit(const SetDescriptor& E, std::vector<double> s_sequence,
                        const FracParams& params, const QuadSpec& quad);

// Catalog of sets with a known contribution from infinity.
std::optional<double> alpha_analytic(const SetDescriptor& E, const FracParams& params);

}  // namespace fracgeom
