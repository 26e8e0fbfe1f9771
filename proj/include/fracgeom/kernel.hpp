#pragma once

#include <vector>

#include "fracgeom/params.hpp"

namespace fracgeom {

// Antiderivatives of the graph kernel g(t) = (1+t^2)^{-(d+1+s)/2}, where d
// is the dimension of the graph variable. G is tabulated once per (d,s) on
// a uniform grid with analytic tails; Gcal reduces to G exactly through
// integration by parts.
class Kernel {
  public:
    Kernel(int graph_dim, double s);

    double g(double t) const;
    double G(double t) const;      // int_0^t g, odd, |G| <= Lambda/2
    double Gcal(double t) const;   // int_0^t G, even, convex

    double Lambda() const { return Lambda_; }        // int_R g
    double lambda_small() const { return lambda_; }  // int_0^inf t g(t) dt
    double c_star() const { return c_star_; }        // inf_{[0,1]} g = g(1)
    double s() const { return s_; }
    int graph_dim() const { return d_; }

  private:
    double tail_integral(double t) const;  // int_t^inf g, t >= table edge

    int d_;
    double s_;
    double p_;        // (d+1+s)/2
    double Lambda_;
    double lambda_;
    double c_star_;
    double t_max_;
    double step_;
    std::vector<double> table_;  // G at uniform nodes on [0, t_max]
};

// Cached registry; references stay valid for the process lifetime.
const Kernel& kernel_for(int graph_dim, double s);

struct KernelValues {
    double g;
    double G;
    double Gcal;
};

// The (g_s, G_s, Gcal_s) triple at t for a graph of dimension graph_dim.
KernelValues kernel_antiderivatives(double t, int graph_dim, double s);

}  // namespace fracgeom
