#pragma once

#include "fracgeom/geometry.hpp"
#include "fracgeom/params.hpp"
#include "fracgeom/set_descriptor.hpp"

namespace fracgeom {

// Exact value of the rectangle integral int_a^b int_c^d |x-y|^{-1-s} dx dy
// for a < b <= c < d. Degenerate (empty) intervals give 0; a = -inf or
// d = +inf take the limiting closed forms.
double interval_interaction_exact(double a, double b, double c, double d, double s);

struct InteractionResult {
    double value = 0.0;
    double est_error = 0.0;
};

// Kernel interaction L_s(A,B) for essentially disjoint A, B. The 1-d path
// is an exact sum of interval closed forms; the 2-d path is stratified
// sampling with the radial integral of the kernel evaluated exactly along
// traced rays (analytic tails included).
InteractionResult interaction(const SetDescriptor& A, const SetDescriptor& B,
                              const FracParams& params, const QuadSpec& quad);

struct PerimeterReport {
    double local = 0.0;
    double nonlocal = 0.0;
    double total = 0.0;
    double est_error = 0.0;
    double truncation_radius_used = 0.0;
};

PerimeterReport per_s(const SetDescriptor& E, const BoxDomain& omega,
                      const FracParams& params, const QuadSpec& quad);

// Local part only: L_s(E cap Omega, CE cap Omega).
InteractionResult per_s_local(const SetDescriptor& E, const BoxDomain& omega,
                              const FracParams& params, const QuadSpec& quad);

// Interaction between A intersected with `clipA` and B intersected with
// `clipB` (complement clips allowed); used to assemble perimeter splits
// and fractal increments without a general CSG type.
struct ClippedSet {
    SetDescriptor set;
    // clip regions are optional; complemented=true means "outside omega"
    bool has_clip = false;
    BoxDomain clip{};
    bool clip_complement = false;

    static ClippedSet plain(SetDescriptor s) { return {std::move(s), false, {}, false}; }
    static ClippedSet inside(SetDescriptor s, BoxDomain om) {
        return {std::move(s), true, om, false};
    }
    static ClippedSet outside(SetDescriptor s, BoxDomain om) {
        return {std::move(s), true, om, true};
    }
};

InteractionResult interaction_clipped(const ClippedSet& A, const ClippedSet& B,
                                      const FracParams& params, const QuadSpec& quad);

}  // namespace fracgeom
