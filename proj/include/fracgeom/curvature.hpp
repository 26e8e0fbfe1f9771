#pragma once

#include <functional>
#include <vector>

#include "fracgeom/params.hpp"
#include "fracgeom/set_descriptor.hpp"

namespace fracgeom {

struct CurvatureReport {
    double value = 0.0;
    double inner = 0.0;             // near-field (patch or small-radius) part
    double outer = 0.0;             // far-field part
    std::vector<double> ring_partial_sums;  // I_s^{rho_k} for the rho sequence
    double est_error = 0.0;
    bool converged = true;
};

// Local supergraph chart of E at p: E cap Q_{2r,2h}(p) = { v(x) < y < p_y + 2h }.
struct GraphPatch {
    std::function<double(double)> v;   // profile on [p_x - r, p_x + r]
    double grad_at_p = 0.0;            // v'(p_x)
    double holder_alpha = 1.0;         // v in C^{1,alpha}, requires s < alpha
    double holder_const = 1.0;         // ||v||_{C^{1,alpha}} bound on the patch
    double radius = 0.5;               // r
    double height = 0.25;              // h
};

// Fractional mean curvature by principal value: symmetric-pair sampling over
// directions with exact radial integrals per ring, extrapolated rho -> 0.
// Empty rho_sequence selects the default geometric sequence 0.5 * 2^{-k},
// eight rings.
CurvatureReport curvature_pv(const SetDescriptor& E, Vec2 q, const FracParams& params,
                             const QuadSpec& quad, std::vector<double> rho_sequence = {});

// Fractional mean curvature through the graph chart: the PV collapses into
// an absolutely convergent integral of kernel antiderivative differences.
CurvatureReport curvature_graph(const GraphPatch& patch, const SetDescriptor& E_far, Vec2 p,
                                const FracParams& params, const QuadSpec& quad);

// Exterior-tangent-ball radius below which the small-s curvature is forced
// positive when alpha_bar < varpi_n / 2.
double delta_threshold(double alpha_bar, double s, int n);

enum class AsymptoticRegime { ToOne, ToZero };

struct AsymptoticsTable {
    std::vector<double> s_values;
    std::vector<double> raw;        // I_s
    std::vector<double> rescaled;   // (1-s) I_s or s I_s
    double limit = 0.0;
};

// Richardson-extrapolated limit of (1-s) I_s (s->1) or s I_s (s->0) along
// the given sequence; empty sequence picks {0.8,0.9,0.95} or {0.1,0.05,0.025}.
AsymptoticsTable curvature_asymptotics(const SetDescriptor& E, Vec2 q, AsymptoticRegime regime,
                                       std::vector<double> s_sequence, int n,
                                       const QuadSpec& quad);

}  // namespace fracgeom
