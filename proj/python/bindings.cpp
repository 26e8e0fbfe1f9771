#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fracgeom/curvature.hpp"
#include "fracgeom/fractal.hpp"
#include "fracgeom/interaction.hpp"
#include "fracgeom/json_io.hpp"
#include "fracgeom/kernel.hpp"
#include "fracgeom/nmg.hpp"
#include "fracgeom/tail.hpp"

namespace py = pybind11;
using namespace fracgeom;

namespace {

SetDescriptor set_from_json_str(const std::string& text) {
    return set_from_json(json::parse(text));
}

QuadSpec quad_from_kwargs(double abs_tol, long mc_samples, std::uint64_t seed, double rmax,
                          int max_depth) {
    QuadSpec q;
    q.abs_tol = abs_tol;
    q.rel_tol = abs_tol;
    q.mc_samples = mc_samples;
    q.rng_seed = seed;
    q.truncation_radius = rmax;
    q.max_depth = max_depth;
    return q;
}

}  // namespace

PYBIND11_MODULE(_fracgeom, m) {
    m.doc() = "fractional perimeters, tails, curvature and nonlocal minimal graphs";

    py::enum_<Region>(m, "Region")
        .value("Inside", Region::Inside)
        .value("Outside", Region::Outside)
        .value("Mixed", Region::Mixed);

    py::class_<Vec2>(m, "Vec2")
        .def(py::init<double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0)
        .def_readwrite("x", &Vec2::x)
        .def_readwrite("y", &Vec2::y);

    py::class_<FracParams>(m, "FracParams")
        .def(py::init<int, double>(), py::arg("n"), py::arg("s"))
        .def_readonly("n", &FracParams::n)
        .def_readonly("s", &FracParams::s);

    py::class_<QuadSpec>(m, "QuadSpec")
        .def(py::init(&quad_from_kwargs), py::arg("abs_tol") = 1e-8,
             py::arg("mc_samples") = 200000, py::arg("seed") = 0, py::arg("rmax") = 64.0,
             py::arg("max_depth") = 9);

    py::class_<SetDescriptor>(m, "SetDescriptor")
        .def_static("ball", &SetDescriptor::ball, py::arg("center"), py::arg("radius"),
                    py::arg("dim") = 2)
        .def_static("half_space", &SetDescriptor::half_space, py::arg("normal"),
                    py::arg("offset"), py::arg("dim") = 2)
        .def_static("angular_cone", &SetDescriptor::angular_cone)
        .def_static("interval_union", &SetDescriptor::interval_union)
        .def_static("polygon", &SetDescriptor::polygon)
        .def_static("complement", &SetDescriptor::complement)
        .def_static("from_json", &set_from_json_str)
        .def("contains", &SetDescriptor::contains)
        .def("transform", &SetDescriptor::transform, py::arg("scale"), py::arg("rot_angle"),
             py::arg("translation"))
        .def("to_json", [](const SetDescriptor& s) { return to_json(s).dump(); });

    py::class_<BoxDomain>(m, "BoxDomain")
        .def_static("interval", &BoxDomain::make_interval)
        .def_static("box", &BoxDomain::make_box)
        .def_static("ball", &BoxDomain::make_ball);

    py::class_<PerimeterReport>(m, "PerimeterReport")
        .def_readonly("local", &PerimeterReport::local)
        .def_readonly("nonlocal_part", &PerimeterReport::nonlocal)
        .def_readonly("total", &PerimeterReport::total)
        .def_readonly("est_error", &PerimeterReport::est_error);

    m.def("interval_interaction_exact", &interval_interaction_exact);
    m.def("per_s", &per_s, py::arg("E"), py::arg("omega"), py::arg("params"), py::arg("quad"));
    m.def("interaction", &interaction);

    m.def("alpha_s", &alpha_s);
    m.def("alpha_analytic", [](const SetDescriptor& E, const FracParams& p) {
        auto v = alpha_analytic(E, p);
        return v ? py::cast(*v) : py::none().cast<py::object>();
    });

    py::class_<CurvatureReport>(m, "CurvatureReport")
        .def_readonly("value", &CurvatureReport::value)
        .def_readonly("est_error", &CurvatureReport::est_error)
        .def_readonly("converged", &CurvatureReport::converged);

    m.def("curvature_pv", &curvature_pv, py::arg("E"), py::arg("q"), py::arg("params"),
          py::arg("quad"), py::arg("rho_sequence") = std::vector<double>{});
    m.def("delta_threshold", &delta_threshold);

    py::class_<KochPrefix>(m, "KochPrefix")
        .def_readonly("level", &KochPrefix::level)
        .def_readonly("area", &KochPrefix::area)
        .def_readonly("polygon", &KochPrefix::polygon);
    m.def("koch_prefix", &koch_prefix);
    m.def("box_counting_dim", &box_counting_dim);

    py::class_<GridFunction1D>(m, "GridFunction1D")
        .def_readonly("a", &GridFunction1D::a)
        .def_readonly("b", &GridFunction1D::b)
        .def_readonly("N", &GridFunction1D::N)
        .def_readonly("u", &GridFunction1D::u);

    m.def("kernel_G", [](double t, double s) { return kernel_for(1, s).G(t); });
    m.def("kernel_Gcal", [](double t, double s) { return kernel_for(1, s).Gcal(t); });

    m.def("minimize_graph",
          [](double a, double b, int N, int collar_cells, double phi_left, double phi_right,
             double M, double s, double tol, long max_iter) {
              GridFunction1D g;
              g.a = a; g.b = b; g.N = N; g.collar_cells = collar_cells;
              g.u.assign(static_cast<std::size_t>(N), 0.0);
              g.phi_left.assign(static_cast<std::size_t>(collar_cells), phi_left);
              g.phi_right.assign(static_cast<std::size_t>(collar_cells), phi_right);
              g.tail = TailModel::Bounded;
              g.tail_left_value = phi_left;
              g.tail_right_value = phi_right;
              MinimizeOptions opts;
              opts.M = M;
              opts.stop_tol = tol;
              opts.max_iter = max_iter;
              MinimizeDiagnostics diag;
              GridFunction1D out = minimize(g, opts, FracParams(1, s), &diag);
              return py::make_tuple(out, diag.iterations, diag.final_residual, diag.converged);
          },
          py::arg("a"), py::arg("b"), py::arg("N"), py::arg("collar_cells"),
          py::arg("phi_left"), py::arg("phi_right"), py::arg("M") = 0.0, py::arg("s") = 0.25,
          py::arg("tol") = 1e-6, py::arg("max_iter") = 50000);
}
