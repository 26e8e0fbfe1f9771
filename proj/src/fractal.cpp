#include "fracgeom/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fracgeom/numerics.hpp"

namespace fracgeom {

namespace {

double shoelace(const std::vector<Vec2>& vs) {
    double a2 = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i) a2 += vs[i].cross(vs[(i + 1) % vs.size()]);
    return 0.5 * a2;
}

// outward bump on a CCW polygon: rotate the middle third by -60 degrees
void replace_edges(const std::vector<Vec2>& in, std::vector<Vec2>& out,
                   std::vector<std::vector<Vec2>>* added) {
    const Rot2 rot = Rot2::from_angle(-std::numbers::pi / 3.0);
    out.clear();
    out.reserve(in.size() * 4);
    for (std::size_t i = 0; i < in.size(); ++i) {
        const Vec2 p = in[i], q = in[(i + 1) % in.size()];
        const Vec2 third = (q - p) * (1.0 / 3.0);
        const Vec2 a = p + third, b = p + third * 2.0;
        const Vec2 c = a + rot.apply(third);
        out.push_back(p);
        out.push_back(a);
        out.push_back(c);
        out.push_back(b);
        if (added) added->push_back({a, c, b});
    }
}

std::vector<Vec2> base_triangle() {
    const double r = 1.0 / std::sqrt(3.0);  // circumradius of the unit triangle
    return {{0.0, r}, {-0.5, -0.5 * r}, {0.5, -0.5 * r}};
}

struct IncrementFit {
    std::vector<double> per_local;  // cumulative Per_s^L per level
    std::vector<double> deltas;     // per-level increments
    double rho = 0.0;               // fitted increment ratio
};

IncrementFit fit_increments(const PrefixSequence& seq, const BoxDomain& omega, double s,
                            const FracParams& params, const QuadSpec& quad) {
    IncrementFit fit;
    FracParams p(params.n, s);
    QuadSpec base_quad = quad;
    base_quad.mc_samples = std::max<long>(20000, quad.mc_samples / 8);
    InteractionResult base = per_s_local(seq.prefixes.front(), omega, p, base_quad);
    fit.per_local.push_back(base.value);

    const long total_pieces = [&] {
        long c = 0;
        for (const auto& v : seq.increments) c += static_cast<long>(v.size());
        return std::max<long>(c, 1);
    }();
    const long per_piece = std::max<long>(1500, quad.mc_samples / total_pieces);

    for (std::size_t k = 0; k < seq.increments.size(); ++k) {
        const SetDescriptor& prev = seq.prefixes[k];
        const SetDescriptor& cur = seq.prefixes[k + 1];
        const SetDescriptor cur_comp = SetDescriptor::complement(cur);
        QuadSpec piece_quad = quad;
        piece_quad.mc_samples = per_piece;
        std::vector<double> gains, losses;
        for (std::size_t i = 0; i < seq.increments[k].size(); ++i) {
            const SetDescriptor& piece = seq.increments[k][i];
            piece_quad.rng_seed = quad.rng_seed ^ splitmix64((k << 20) ^ i);
            gains.push_back(interaction_clipped(ClippedSet::plain(piece),
                                                ClippedSet::inside(cur_comp, omega), p, piece_quad)
                                .value);
            losses.push_back(interaction_clipped(ClippedSet::plain(piece),
                                                 ClippedSet::plain(prev), p, piece_quad)
                                 .value);
        }
        const double delta = tree_sum(gains) - tree_sum(losses);
        fit.deltas.push_back(delta);
        fit.per_local.push_back(fit.per_local.back() + delta);
    }

    // geometric fit of the increments
    std::vector<double> ks, logd;
    for (std::size_t i = 0; i < fit.deltas.size(); ++i) {
        if (fit.deltas[i] > 0) {
            ks.push_back(static_cast<double>(i));
            logd.push_back(std::log(fit.deltas[i]));
        }
    }
    if (ks.size() >= 2) {
        fit.rho = std::exp(fit_line(ks, logd).second);
    } else if (fit.deltas.size() >= 2) {
        fit.rho = fit.deltas.back() / fit.deltas[fit.deltas.size() - 2];
    }
    return fit;
}

}  // namespace

KochPrefix koch_prefix(int level) {
    if (level < 0 || level > 8) throw std::invalid_argument("koch_prefix: level must be in [0,8]");
    std::vector<Vec2> vs = base_triangle();
    for (int k = 1; k <= level; ++k) {
        std::vector<Vec2> next;
        replace_edges(vs, next, nullptr);
        vs = std::move(next);
    }
    KochPrefix out;
    out.level = level;
    out.area = shoelace(vs);
    out.polygon = SetDescriptor::polygon(std::move(vs));
    return out;
}

PrefixSequence koch_prefix_sequence(int level_min, int level_max) {
    if (level_min < 0 || level_max > 8 || level_min > level_max)
        throw std::invalid_argument("koch_prefix_sequence: need 0 <= min <= max <= 8");
    PrefixSequence seq;
    seq.first_level = level_min;
    std::vector<Vec2> vs = base_triangle();
    for (int k = 1; k <= level_min; ++k) {
        std::vector<Vec2> next;
        replace_edges(vs, next, nullptr);
        vs = std::move(next);
    }
    seq.prefixes.push_back(SetDescriptor::polygon(vs));
    for (int k = level_min + 1; k <= level_max; ++k) {
        std::vector<Vec2> next;
        std::vector<std::vector<Vec2>> tris;
        replace_edges(vs, next, &tris);
        std::vector<SetDescriptor> pieces;
        pieces.reserve(tris.size());
        for (auto& t : tris) pieces.push_back(SetDescriptor::polygon(std::move(t)));
        seq.increments.push_back(std::move(pieces));
        vs = std::move(next);
        seq.prefixes.push_back(SetDescriptor::polygon(vs));
    }
    return seq;
}

double threshold_exact(const SelfSimilarFamily& family, int n) {
    if (!(family.lambda > 1.0)) throw std::invalid_argument("threshold_exact: lambda must exceed 1");
    if (family.growth < 1 || family.seed_count < 1)
        throw std::invalid_argument("threshold_exact: counts must be positive");
    const double ratio = std::log(static_cast<double>(family.growth)) / std::log(family.lambda);
    if (!(ratio > n - 1 && ratio < n))
        throw std::invalid_argument("threshold_exact: log b / log lambda outside (n-1, n)");
    return n - ratio;
}

DimFResult dimf_estimate(const PrefixSequence& prefixes, const BoxDomain& omega,
                         std::vector<double> s_grid, const FracParams& params,
                         const QuadSpec& quad) {
    if (prefixes.prefixes.size() < 3)
        throw std::invalid_argument("dimf_estimate: need at least 3 prefix levels");
    std::sort(s_grid.begin(), s_grid.end());
    if (s_grid.empty() || s_grid.front() <= 0.0 || s_grid.back() >= 1.0)
        throw std::invalid_argument("dimf_estimate: s_grid must lie in (0,1)");

    constexpr double kMargin = 0.08;
    DimFResult res;
    std::vector<double> rhos;
    for (double s : s_grid) {
        IncrementFit fit = fit_increments(prefixes, omega, s, params, quad);
        rhos.push_back(fit.rho);
        for (std::size_t i = 0; i < fit.per_local.size(); ++i) {
            DivergenceRow row;
            row.s = s;
            row.level = prefixes.first_level + static_cast<int>(i);
            row.per_local = fit.per_local[i];
            row.increment_ratio =
                i >= 2 && fit.deltas[i - 2] != 0.0 ? fit.deltas[i - 1] / fit.deltas[i - 2] : 0.0;
            res.table.push_back(row);
        }
    }

    // bracket the rho(s) = 1 crossover
    double lo = -1.0, hi = -1.0;
    for (std::size_t i = 0; i < s_grid.size(); ++i) {
        if (rhos[i] < 1.0 - kMargin) lo = s_grid[i];
        if (rhos[i] > 1.0 + kMargin && hi < 0) hi = s_grid[i];
    }
    if (lo < 0 || hi < 0 || hi <= lo) {
        res.bracketed = false;
        res.dim = params.n - (lo > 0 ? s_grid.back() : s_grid.front());
        return res;
    }
    while (hi - lo > 0.02) {
        const double mid = 0.5 * (lo + hi);
        IncrementFit fit = fit_increments(prefixes, omega, mid, params, quad);
        (fit.rho < 1.0 ? lo : hi) = mid;
    }
    res.dim = params.n - 0.5 * (lo + hi);
    return res;
}

double box_counting_dim(const SetDescriptor& E, const BoxDomain& omega,
                        const std::vector<double>& scales) {
    if (scales.size() < 4) throw std::invalid_argument("box_counting_dim: need >= 4 scales");
    for (std::size_t i = 1; i < scales.size(); ++i)
        if (!(scales[i] < scales[i - 1]))
            throw std::invalid_argument("box_counting_dim: scales must decrease");
    const Box bb = omega.bounding_box();
    std::vector<double> xs, ys;
    for (double delta : scales) {
        const int nx = std::max(1, static_cast<int>(std::ceil(bb.width() / delta)));
        const int ny = std::max(1, static_cast<int>(std::ceil(bb.height() / delta)));
        long count = 0;
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                const Box cell{{bb.lo.x + i * delta, bb.lo.y + j * delta},
                               {bb.lo.x + (i + 1) * delta, bb.lo.y + (j + 1) * delta}};
                if (E.classify(cell) == Region::Mixed) ++count;
            }
        if (count == 0) throw std::invalid_argument("box_counting_dim: boundary missed at a scale");
        xs.push_back(std::log(1.0 / delta));
        ys.push_back(std::log(static_cast<double>(count)));
    }
    const auto [a, b] = fit_line(xs, ys);
    (void)a;
    if (!std::isfinite(b)) throw std::invalid_argument("box_counting_dim: degenerate fit");
    return b;
}

}  // namespace fracgeom
