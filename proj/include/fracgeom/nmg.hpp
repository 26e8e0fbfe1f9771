#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fracgeom/params.hpp"
#include "fracgeom/raster.hpp"
#include "fracgeom/set_descriptor.hpp"

namespace fracgeom {

enum class TailModel { Zero, Bounded, Affine };

// Cell-centered sample of u on Omega = (a,b) plus exterior data phi on the
// collar (a-L,a) u (b,b+L); beyond the collar a declared tail model. The
// Affine model is accepted by the weak pairing only, not by the functionals.
struct GridFunction1D {
    double a = 0.0, b = 1.0;
    int N = 8;
    int collar_cells = 16;
    std::vector<double> u;          // N interior values
    std::vector<double> phi_left;   // collar values, x increasing
    std::vector<double> phi_right;
    TailModel tail = TailModel::Zero;
    double tail_left_value = 0.0;   // Bounded: constants; Affine: slope
    double tail_right_value = 0.0;
    double tail_left_slope = 0.0;
    double tail_right_slope = 0.0;

    double h() const { return (b - a) / N; }
    double L() const { return collar_cells * h(); }
    int total_cells() const { return N + 2 * collar_cells; }
    // global index: [0, collar) left collar, [collar, collar+N) interior
    double x_at(int g) const { return a - L() + (g + 0.5) * h(); }
    bool is_interior(int g) const { return g >= collar_cells && g < collar_cells + N; }
    double value_at(int g) const {
        if (g < collar_cells) return phi_left[g];
        if (g < collar_cells + N) return u[g - collar_cells];
        return phi_right[g - collar_cells - N];
    }
    void validate() const;

    static GridFunction1D make(double a, double b, int N, int collar_cells,
                               std::function<double(double)> interior,
                               std::function<double(double)> collar);
};

// exact cell-pair weights on a uniform 1-d grid (cells of width h at center
// distance D): kernel exponents s and 1+s
double cell_pair_weight_1s(double D, double h, double s);   // int int |x-y|^{-1-s}
double cell_pair_weight_s(double D, double h, double s);    // D * (the above): |x-y|^{-s} surrogate
double cell_self_weight_s(double h, double s);              // same-cell int int |x-y|^{-s}

// A(u,Omega): Gcal energy over Omega x Omega with the diagonal handled by
// the one-cell slope.
double area_local(const GridFunction1D& u, const FracParams& params);

// Truncated nonlocal part N^M over Omega x (collar), with the exact
// M-Lambda term over the full complement; the bracket beyond the collar is
// dropped (Zero/Bounded tails).
double area_nonlocal_truncated(const GridFunction1D& u, double M, const FracParams& params);

double functional_FM(const GridFunction1D& u, double M, const FracParams& params);

// Weak pairing <H u, v> with v supported in Omega (v has N entries); the
// exact differential of the discrete functional, plus exact tail rows for
// the Affine model.
double hs_weak(const GridFunction1D& u, const std::vector<double>& v, const FracParams& params);

// all rows <H u, e_i> at once
std::vector<double> hs_weak_gradient(const GridFunction1D& u, const FracParams& params);

// discrete W^{s,1} seminorm matching the pairing weights; interior_pairs_only
// restricts to Omega x Omega, otherwise pairs with one collar end count too
double grid_seminorm_ws1(const GridFunction1D& u, double s, bool interior_pairs_only);

// Pointwise H u(x) for a C^{1,gamma} profile, gamma > s, via the
// delta_g symmetrization (absolutely convergent; far field analytic).
double hs_pointwise(const std::function<double(double)>& u, double x, const FracParams& params,
                    const QuadSpec& quad);

struct MinimizeOptions {
    double M = 0.0;
    std::optional<std::vector<double>> obstacle;  // size N where active
    double theta = 2.0;          // required collar reach factor
    double armijo_factor = 0.5;
    double stop_tol = 1e-6;      // on max_i |<H u, e_i>| / h
    long max_iter = 50000;
};

struct MinimizeDiagnostics {
    long iterations = 0;
    double final_value = 0.0;
    double final_residual = 0.0;
    std::vector<double> residual_profile;
    bool converged = false;
};

// Projected gradient descent on the strictly convex discrete F^M starting
// from the interior values of `start`.
GridFunction1D minimize(const GridFunction1D& start, const MinimizeOptions& opts,
                        const FracParams& params, MinimizeDiagnostics* diag = nullptr);

// min(u, level) inside Omega, collar untouched
GridFunction1D truncate_level(const GridFunction1D& u, double level);

struct RearrangeResult {
    std::vector<double> w;    // per-column w_E over the whole raster
    RasterSet rearranged;     // E_star
};

// Vertical rearrangement of a raster set inside columns [col_lo, col_hi);
// each such column must contain the band below -M and nothing above M.
RearrangeResult rearrange_vertical(const RasterSet& E, int col_lo, int col_hi, double M);

}  // namespace fracgeom
