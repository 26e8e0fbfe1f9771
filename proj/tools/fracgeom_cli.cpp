// fracgeom command line: fractional perimeters, contributions from
// infinity, fractional curvature, Koch dimension estimates, and 1-d
// nonlocal minimal graphs. Deterministic outputs for fixed (config, seed).
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "fracgeom/curvature.hpp"
#include "fracgeom/fractal.hpp"
#include "fracgeom/interaction.hpp"
#include "fracgeom/json_io.hpp"
#include "fracgeom/nmg.hpp"
#include "fracgeom/tail.hpp"

using namespace fracgeom;

namespace {

struct CommonOpts {
    double s = 0.5;
    int n = 2;
    std::uint64_t seed = 0;
    double tol = 1e-8;
    double rmax = 64.0;
    int threads = 0;
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--s", c.s, "fractional exponent in (0,1)");
    cmd->add_option("--n", c.n, "ambient dimension (1 or 2)");
    cmd->add_option("--seed", c.seed, "rng seed (default 0, deterministic)");
    cmd->add_option("--tol", c.tol, "absolute tolerance");
    cmd->add_option("--rmax", c.rmax, "truncation radius");
    cmd->add_option("--threads", c.threads, "worker cap (0 = env FRACGEOM_THREADS or 1)");
    cmd->add_option("--out", c.out, "output path (default stdout)");
    cmd->add_option("--format", c.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
}

QuadSpec quad_of(const CommonOpts& c, long samples = 200000) {
    QuadSpec q;
    q.abs_tol = c.tol;
    q.rel_tol = c.tol;
    q.rng_seed = c.seed;
    q.truncation_radius = c.rmax;
    q.mc_samples = samples;
    return q;
}

void emit(const CommonOpts& c, const std::string& text) {
    if (c.out.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + c.out);
    f << text;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

SetDescriptor named_set(const std::string& name, int n) {
    if (name == "halfline") return SetDescriptor::half_space({1, 0}, 0.0, 1);
    if (name == "halfplane") return SetDescriptor::half_space({0, 1}, 0.0, 2);
    if (name == "disk") return SetDescriptor::ball({0, 0}, 1.0, 2);
    if (name == "interval") return SetDescriptor::interval_union({{0.0, 1.0}});
    if (name == "quarter_plane")
        return SetDescriptor::angular_cone({0, 0}, {{0.0, 0.5 * std::numbers::pi}});
    if (name == "parabola_super")
        return SetDescriptor::complement(SetDescriptor::subgraph(Profile::quadratic(1.0)));
    if (name == "cubic_super")
        return SetDescriptor::complement(SetDescriptor::subgraph(Profile::cubic(1.0)));
    (void)n;
    throw CLI::ValidationError("unknown --set name: " + name);
}

int run_per(const CommonOpts& c, const std::string& set_name, const std::string& set_json,
            std::vector<double> omega, long samples) {
    FracParams p(c.n, c.s);
    SetDescriptor E = set_json.empty() ? named_set(set_name, c.n)
                                       : set_from_json(json::parse(set_json));
    BoxDomain om = c.n == 1 ? BoxDomain::make_interval(omega.at(0), omega.at(1))
                            : (omega.size() == 3
                                   ? BoxDomain::make_ball({omega[0], omega[1]}, omega[2])
                                   : BoxDomain::make_box({omega.at(0), omega.at(1)},
                                                         {omega.at(2), omega.at(3)}));
    PerimeterReport rep = per_s(E, om, p, quad_of(c, samples));
    if (c.format == "csv") {
        std::string text = "local,nonlocal,total,est_error\n" + fmt(rep.local) + "," +
                           fmt(rep.nonlocal) + "," + fmt(rep.total) + "," + fmt(rep.est_error) +
                           "\n";
        emit(c, text);
    } else {
        emit(c, to_json(rep).dump(2) + "\n");
    }
    return 0;
}

int run_alpha(const CommonOpts& c, const std::string& set_name, const std::string& set_json,
              std::vector<double> s_seq, bool limit_mode) {
    SetDescriptor E = set_json.empty() ? named_set(set_name, c.n)
                                       : set_from_json(json::parse(set_json));
    FracParams p(c.n, c.s);
    if (!limit_mode) {
        const double v = alpha_s({0, 0}, 1.0, E, p, quad_of(c));
        json j{{"s", c.s}, {"alpha_s", v}, {"s_alpha_s", c.s * v}};
        if (auto exact = alpha_analytic(E, p)) j["alpha_analytic"] = *exact;
        emit(c, c.format == "csv" ? "s,alpha_s,s_alpha_s\n" + fmt(c.s) + "," + fmt(v) + "," +
                                        fmt(c.s * v) + "\n"
                                  : j.dump(2) + "\n");
        return 0;
    }
    AlphaReport rep = alpha_limit(E, s_seq, p, quad_of(c));
    if (c.format == "csv") {
        std::string text = "s,s_alpha_s\n";
        for (std::size_t i = 0; i < rep.s_values.size(); ++i)
            text += fmt(rep.s_values[i]) + "," + fmt(rep.s_alpha[i]) + "\n";
        emit(c, text);
    } else {
        json j{{"alpha_bar", rep.alpha_bar},
               {"alpha_lower", rep.alpha_lower},
               {"exists", rep.exists},
               {"base_check_deviation", rep.base_check_deviation},
               {"s_values", rep.s_values},
               {"s_alpha", rep.s_alpha}};
        emit(c, j.dump(2) + "\n");
    }
    return 0;
}

int run_curv(const CommonOpts& c, const std::string& set_name, const std::string& set_json,
             std::vector<double> at) {
    SetDescriptor E = set_json.empty() ? named_set(set_name, c.n)
                                       : set_from_json(json::parse(set_json));
    FracParams p(c.n, c.s);
    Vec2 q{at.at(0), at.size() > 1 ? at[1] : 0.0};
    CurvatureReport rep = curvature_pv(E, q, p, quad_of(c));
    json j{{"value", rep.value},
           {"inner", rep.inner},
           {"outer", rep.outer},
           {"est_error", rep.est_error},
           {"converged", rep.converged},
           {"ring_partial_sums", rep.ring_partial_sums}};
    if (c.format == "csv") {
        std::string text = "ring,partial_sum\n";
        for (std::size_t i = 0; i < rep.ring_partial_sums.size(); ++i)
            text += std::to_string(i) + "," + fmt(rep.ring_partial_sums[i]) + "\n";
        text += "value," + fmt(rep.value) + "\n";
        emit(c, text);
    } else {
        emit(c, j.dump(2) + "\n");
    }
    return 0;
}

int run_asym(const CommonOpts& c, const std::string& set_name, const std::string& set_json,
             std::vector<double> at, const std::string& regime, std::vector<double> s_seq) {
    SetDescriptor E = set_json.empty() ? named_set(set_name, c.n)
                                       : set_from_json(json::parse(set_json));
    Vec2 q{at.at(0), at.size() > 1 ? at[1] : 0.0};
    const AsymptoticRegime reg =
        regime == "s1" ? AsymptoticRegime::ToOne : AsymptoticRegime::ToZero;
    AsymptoticsTable tab = curvature_asymptotics(E, q, reg, s_seq, c.n, quad_of(c));
    if (c.format == "csv") {
        std::string text = "s,raw,rescaled\n";
        for (std::size_t i = 0; i < tab.s_values.size(); ++i)
            text += fmt(tab.s_values[i]) + "," + fmt(tab.raw[i]) + "," + fmt(tab.rescaled[i]) + "\n";
        text += "limit," + fmt(tab.limit) + ",\n";
        emit(c, text);
    } else {
        json j{{"s_values", tab.s_values}, {"raw", tab.raw}, {"rescaled", tab.rescaled},
               {"limit", tab.limit}};
        emit(c, j.dump(2) + "\n");
    }
    return 0;
}

int run_koch(const CommonOpts& c, int level) {
    KochPrefix kp = koch_prefix(level);
    json j{{"level", kp.level}, {"area", kp.area},
           {"vertices", 3 * static_cast<long>(std::pow(4.0, kp.level))}};
    emit(c, c.format == "csv" ? "level,area\n" + std::to_string(level) + "," + fmt(kp.area) + "\n"
                              : j.dump(2) + "\n");
    return 0;
}

int run_dimf(const CommonOpts& c, int levels, std::vector<double> s_grid, long samples) {
    if (s_grid.empty()) s_grid = {0.3, 0.5, 0.65, 0.8, 0.9};
    PrefixSequence seq = koch_prefix_sequence(1, levels);
    BoxDomain om = BoxDomain::make_box({-1.2, -1.2}, {1.2, 1.2});
    FracParams p(2, 0.5);
    DimFResult res = dimf_estimate(seq, om, s_grid, p, quad_of(c, samples));
    if (c.format == "csv") {
        std::string text = "s,level,per_local,increment_ratio\n";
        for (const auto& row : res.table)
            text += fmt(row.s) + "," + std::to_string(row.level) + "," + fmt(row.per_local) + "," +
                    fmt(row.increment_ratio) + "\n";
        text += "dim," + fmt(res.dim) + ",,\n";
        emit(c, text);
    } else {
        json rows = json::array();
        for (const auto& row : res.table)
            rows.push_back({{"s", row.s}, {"level", row.level}, {"per_local", row.per_local},
                            {"increment_ratio", row.increment_ratio}});
        emit(c, json{{"dim", res.dim}, {"bracketed", res.bracketed}, {"table", rows}}.dump(2) + "\n");
    }
    return 0;
}

int run_minimize(const CommonOpts& c, const std::string& spec_path) {
    json j;
    if (spec_path.empty()) throw CLI::ValidationError("minimize requires --problem <json>");
    std::ifstream f(spec_path);
    if (!f) throw std::runtime_error("cannot read problem file: " + spec_path);
    f >> j;
    const double a = j.at("omega").at(0), b = j.at("omega").at(1);
    const int N = j.at("N");
    const double s = j.value("s", c.s);
    const double L = j.at("collar").at("L");
    const int collar_cells = static_cast<int>(std::lround(L / ((b - a) / N)));
    GridFunction1D g;
    g.a = a;
    g.b = b;
    g.N = N;
    g.collar_cells = collar_cells;
    g.u.assign(N, 0.0);
    g.phi_left.resize(collar_cells);
    g.phi_right.resize(collar_cells);
    if (j.at("collar").contains("values")) {
        g.phi_left = j.at("collar").at("values").at("left").get<std::vector<double>>();
        g.phi_right = j.at("collar").at("values").at("right").get<std::vector<double>>();
    } else {
        const double lv = j.at("collar").at("profile").at("left");
        const double rv = j.at("collar").at("profile").at("right");
        std::fill(g.phi_left.begin(), g.phi_left.end(), lv);
        std::fill(g.phi_right.begin(), g.phi_right.end(), rv);
    }
    const std::string tail = j.at("collar").value("tail", "zero");
    g.tail = tail == "bounded" ? TailModel::Bounded : TailModel::Zero;
    if (g.tail == TailModel::Bounded) {
        g.tail_left_value = g.phi_left.front();
        g.tail_right_value = g.phi_right.back();
    }
    MinimizeOptions opts;
    opts.M = j.value("M", 0.0);
    opts.stop_tol = j.value("tol", 1e-6);
    opts.max_iter = j.value("max_iter", 50000L);
    if (j.contains("obstacle")) opts.obstacle = j.at("obstacle").get<std::vector<double>>();
    FracParams p(1, s);
    MinimizeDiagnostics diag;
    GridFunction1D res = minimize(g, opts, p, &diag);
    std::string text = "x,u\n";
    for (int i = 0; i < res.N; ++i)
        text += fmt(res.x_at(res.collar_cells + i)) + "," + fmt(res.u[i]) + "\n";
    emit(c, text);
    json dj{{"iterations", diag.iterations}, {"final_value", diag.final_value},
            {"final_residual", diag.final_residual}, {"converged", diag.converged}};
    if (!c.out.empty()) {
        std::ofstream df(c.out + ".diag.json", std::ios::binary);
        df << dj.dump(2) << "\n";
    } else {
        std::cerr << dj.dump(2) << "\n";
    }
    return 0;
}

int run_rearrange(const CommonOpts& c, double M, double bubble_r) {
    // fixture: subgraph with a detached bubble above, rearranged column-wise
    const double h = 1.0 / 16;
    RasterSet r;
    r.origin = {-2.0, -M - 0.5};
    r.h = h;
    r.nx = static_cast<int>(std::lround(4.0 / h));
    r.ny = static_cast<int>(std::lround((2 * M + 1.0) / h));
    r.cells.assign(static_cast<std::size_t>(r.nx) * r.ny, 0);
    for (int j = 0; j < r.ny; ++j)
        for (int i = 0; i < r.nx; ++i) {
            const Vec2 p = r.center(i, j);
            bool in = p.y < 0.2 * std::cos(p.x);
            if (bubble_r > 0 && std::hypot(p.x, p.y - 0.8) < bubble_r) in = true;
            r.at(i, j) = in ? 1 : 0;
        }
    const int col_lo = r.nx / 4, col_hi = 3 * r.nx / 4;
    RearrangeResult rr = rearrange_vertical(r, col_lo, col_hi, M);
    std::string text = "col,x,w\n";
    for (int i = col_lo; i < col_hi; ++i)
        text += std::to_string(i) + "," + fmt(r.origin.x + (i + 0.5) * h) + "," +
                fmt(rr.w[static_cast<std::size_t>(i)]) + "\n";
    emit(c, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional perimeter / nonlocal minimal graph toolbox"};
    app.require_subcommand(1);

    CommonOpts c;
    if (const char* env = std::getenv("FRACGEOM_THREADS")) c.threads = std::atoi(env);

    std::string set_name = "disk", set_json, regime = "s1", problem_path;
    std::vector<double> omega{-1, 1}, at{1, 0}, s_seq, s_grid;
    long samples = 200000;
    int level = 3, levels = 5;
    double M = 2.0, bubble = 0.3;
    bool limit_mode = false, dimf_mode = false;

    auto* per = app.add_subcommand("per", "s-perimeter of a set in a window");
    add_common(per, c);
    per->add_option("--set", set_name, "named set (halfline|disk|interval|...)");
    per->add_option("--set-json", set_json, "set descriptor as JSON");
    per->add_option("--omega", omega, "window: 1-d a b; 2-d lox loy hix hiy or cx cy r")
        ->expected(2, 4);
    per->add_option("--samples", samples, "MC budget for the 2-d path");

    auto* alpha = app.add_subcommand("alpha", "contribution from infinity");
    add_common(alpha, c);
    alpha->add_option("--set", set_name);
    alpha->add_option("--set-json", set_json);
    alpha->add_flag("--limit", limit_mode, "extrapolate s->0");
    alpha->add_option("--s-seq", s_seq, "decreasing s sequence");

    auto* curv = app.add_subcommand("curv", "fractional mean curvature (PV)");
    add_common(curv, c);
    curv->add_option("--set", set_name);
    curv->add_option("--set-json", set_json);
    curv->add_option("--at", at, "boundary point")->expected(1, 2);

    auto* asym = app.add_subcommand("asym", "curvature asymptotics s->1 / s->0");
    add_common(asym, c);
    asym->add_option("--set", set_name);
    asym->add_option("--set-json", set_json);
    asym->add_option("--at", at)->expected(1, 2);
    asym->add_option("--regime", regime)->check(CLI::IsMember({"s1", "s0"}));
    asym->add_option("--s-seq", s_seq);

    auto* koch = app.add_subcommand("koch", "Koch prefix data / dimension");
    add_common(koch, c);
    koch->add_option("--level", level, "prefix level 0..8");
    koch->add_flag("--dimf", dimf_mode, "run the divergence-based dimension fit");
    koch->add_option("--levels", levels, "prefix levels for --dimf");
    koch->add_option("--s-grid", s_grid);
    koch->add_option("--samples", samples);

    auto* dimf = app.add_subcommand("dimf", "fractal dimension by s-perimeter divergence");
    add_common(dimf, c);
    dimf->add_option("--levels", levels);
    dimf->add_option("--s-grid", s_grid);
    dimf->add_option("--samples", samples);

    auto* mini = app.add_subcommand("minimize", "1-d nonlocal minimal graph");
    add_common(mini, c);
    mini->add_option("--problem", problem_path, "problem spec JSON path");

    auto* rear = app.add_subcommand("rearrange", "vertical rearrangement demo");
    add_common(rear, c);
    rear->add_option("--M", M, "strip half-height");
    rear->add_option("--bubble", bubble, "detached bubble radius (0 = none)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (per->parsed()) return run_per(c, set_name, set_json, omega, samples);
        if (alpha->parsed()) return run_alpha(c, set_name, set_json, s_seq, limit_mode);
        if (curv->parsed()) return run_curv(c, set_name, set_json, at);
        if (asym->parsed()) return run_asym(c, set_name, set_json, at, regime, s_seq);
        if (koch->parsed()) {
            if (dimf_mode) return run_dimf(c, levels, s_grid, samples);
            return run_koch(c, level);
        }
        if (dimf->parsed()) return run_dimf(c, levels, s_grid, samples);
        if (mini->parsed()) return run_minimize(c, problem_path);
        if (rear->parsed()) return run_rearrange(c, M, bubble);
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", "validation"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "numeric"}, {"message", e.what()}}.dump() << "\n";
        return 3;
    }
    return 2;
}
