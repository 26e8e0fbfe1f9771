#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "fracgeom/geometry.hpp"

namespace fracgeom {

// 1-D profile of a graph {x2 < u(x1)}. The analytic kinds carry enough
// structure for exact ray tails at infinity; tables extend by their
// endpoint values.
class Profile {
  public:
    enum class Kind { Linear, Quadratic, Cubic, AbsPower, BoundedTanh, Table };

    static Profile linear(double slope, double intercept = 0.0);
    static Profile quadratic(double a, double c = 0.0);
    static Profile cubic(double a, double c = 0.0);
    static Profile abs_power(double a, double p, double c = 0.0);  // a|x|^p + c, p>0, p!=1
    static Profile bounded_tanh(double a, double c = 0.0);
    static Profile table(std::vector<double> xs, std::vector<double> vals);

    Kind kind() const { return kind_; }
    double eval(double x) const;
    // Range of u over [lo, hi].
    std::pair<double, double> range(double lo, double hi) const;
    // Lipschitz bound of u on [-R, R] (infinite growth handled by caller).
    double lipschitz(double R) const;
    double a() const { return a_; }
    double c() const { return c_; }
    double p() const { return p_; }

    // For rays: eventual sign of u(x(t)) - y(t) along x(t)=ox+t*dx,
    // y(t)=oy+t*dy as t->infinity (+1 below graph i.e. inside subgraph,
    // -1 above, 0 undecidable analytically).
    int tail_sign(Vec2 origin, Vec2 dir) const;

    bool operator==(const Profile&) const = default;

  private:
    Kind kind_ = Kind::Linear;
    double a_ = 0.0, c_ = 0.0, p_ = 1.0;
    std::vector<double> xs_, vals_;
};

enum class Region { Inside, Outside, Mixed };

// Exact in/out structure of a set along a ray o + t d, t in (0, inf).
struct RayTrace {
    bool start_inside = false;        // state just after t = 0
    std::vector<double> breaks;       // strictly increasing crossing radii
    bool final_inside = false;        // state beyond the last break

    bool inside_at(double t) const {
        bool in = start_inside;
        for (double b : breaks) {
            if (t < b) break;
            in = !in;
        }
        return in;
    }
};

RayTrace trace_and(const RayTrace& a, const RayTrace& b);
RayTrace trace_not(RayTrace a);

struct SetNode;

// Immutable description of a measurable set: analytic primitives plus
// complement and affine combinators. Thread-safe to share; all operations
// are pure.
class SetDescriptor {
  public:
    SetDescriptor() = default;

    // -- constructors -------------------------------------------------------
    static SetDescriptor half_space(Vec2 normal, double offset, int dim = 2);
    static SetDescriptor ball(Vec2 center, double radius, int dim = 2);
    // arcs: list of (start, end) angles, start < end, width <= 2*pi total.
    static SetDescriptor angular_cone(Vec2 vertex, std::vector<std::pair<double, double>> arcs);
    static SetDescriptor interval_union(std::vector<std::pair<double, double>> intervals);
    static SetDescriptor polygon(std::vector<Vec2> vertices);  // simple, CCW
    static SetDescriptor subgraph(Profile u);                  // {x2 < u(x1)}
    static SetDescriptor complement(const SetDescriptor& inner);
    static SetDescriptor transformed(const SetDescriptor& inner, double scale,
                                     double rot_angle, Vec2 translation);

    int dim() const;
    bool valid() const { return node_ != nullptr; }

    // -- queries -------------------------------------------------------------
    // Membership in the open representative: analytic boundary points
    // report false.
    bool contains(Vec2 x) const;
    Region classify(const Box& b) const;
    std::optional<Box> bounds() const;   // nullopt when unbounded
    bool is_bounded() const { return bounds().has_value(); }

    // n=2 only: exact crossing structure along a ray.
    RayTrace trace(Vec2 origin, Vec2 dir) const;

    // n=1 only: the set as sorted disjoint open intervals; +-inf endpoints
    // mark half-lines.
    std::vector<std::pair<double, double>> to_intervals() const;

    // Affine image lambda*R*E + t; primitives simplify structurally.
    SetDescriptor transform(double scale, double rot_angle, Vec2 translation) const;

    const SetNode& node() const { return *node_; }
    std::shared_ptr<const SetNode> node_ptr() const { return node_; }
    static SetDescriptor wrap(std::shared_ptr<const SetNode> n) { return SetDescriptor(std::move(n)); }

  private:
    explicit SetDescriptor(std::shared_ptr<const SetNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const SetNode> node_;
};

// -- variant payloads --------------------------------------------------------
struct HalfSpaceData { Vec2 normal; double offset; int dim; };
struct BallData { Vec2 center; double radius; int dim; };
struct AngularConeData { Vec2 vertex; std::vector<std::pair<double, double>> arcs; };
struct IntervalUnionData { std::vector<std::pair<double, double>> intervals; };
struct PolygonData {
    std::vector<Vec2> vertices;
    Box bbox;
    // uniform bucket grid over the edges, built when the polygon is large
    int grid_nx = 0, grid_ny = 0;
    double cell = 0.0;
    std::vector<std::vector<int>> buckets;
};
struct SubgraphData { Profile profile; };
struct ComplementData { std::shared_ptr<const SetNode> inner; };
struct TransformedData {
    std::shared_ptr<const SetNode> inner;
    double scale;
    Rot2 rot;
    double rot_angle;
    Vec2 translation;
};

struct SetNode {
    std::variant<HalfSpaceData, BallData, AngularConeData, IntervalUnionData,
                 PolygonData, SubgraphData, ComplementData, TransformedData> v;
};

}  // namespace fracgeom
