#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fracgeom/interaction.hpp"
#include "fracgeom/params.hpp"
#include "fracgeom/set_descriptor.hpp"

namespace fracgeom {

struct KochPrefix {
    int level = 0;
    SetDescriptor polygon;  // snowflake after `level` replacements, unit side
    double area = 0.0;
};

// Snowflake prefix: equilateral triangle of unit side, barycenter at the
// origin, one vertex on the +y axis; levels up to 8 (3*4^8 vertices).
KochPrefix koch_prefix(int level);

// Prefix sequence with the per-level added pieces, which make the
// increments of the local perimeter directly computable.
struct PrefixSequence {
    std::vector<SetDescriptor> prefixes;                 // T_k, k = k0..k1
    std::vector<std::vector<SetDescriptor>> increments;  // pieces of T_k \ T_{k-1}
    int first_level = 0;
};

PrefixSequence koch_prefix_sequence(int level_min, int level_max);

// Recursive family T = union of a*b^{k-1} placed copies of lambda^{-k} T0.
struct SelfSimilarFamily {
    SetDescriptor building_block;   // bounded, finite perimeter
    double lambda = 3.0;            // scale factor > 1
    int seed_count = 3;             // a
    int growth = 4;                 // b
    std::function<std::pair<double, Vec2>(int, int)> placement;  // (rotation, translation)
};

// s* = n - log b / log lambda, the finite/infinite perimeter threshold.
double threshold_exact(const SelfSimilarFamily& family, int n);

struct DivergenceRow {
    double s = 0.0;
    int level = 0;
    double per_local = 0.0;         // Per_s^L(T_level, Omega)
    double increment_ratio = 0.0;   // Delta_level / Delta_{level-1}, 0 if undefined
};

struct DimFResult {
    double dim = 0.0;
    std::vector<DivergenceRow> table;
    bool bracketed = true;  // false when every rho(s) fell on one side
};

// Fits the per-level increment ratio rho(s) of Per_s^L(prefix_k, Omega) for
// each s in the grid, classifies convergent/divergent around rho = 1, and
// bisects the crossover s*. dim = n - s*.
DimFResult dimf_estimate(const PrefixSequence& prefixes, const BoxDomain& omega,
                         std::vector<double> s_grid, const FracParams& params,
                         const QuadSpec& quad);

// Least-squares slope of log N(delta) against log(1/delta), where N counts
// grid boxes meeting the boundary of E inside Omega.
double box_counting_dim(const SetDescriptor& E, const BoxDomain& omega,
                        const std::vector<double>& scales);

}  // namespace fracgeom
