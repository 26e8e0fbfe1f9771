#pragma once

#include <cstdint>
#include <vector>

#include "fracgeom/geometry.hpp"
#include "fracgeom/interaction.hpp"
#include "fracgeom/params.hpp"
#include "fracgeom/set_descriptor.hpp"

namespace fracgeom {

// Cell-indicator grid: cell (i,j) covers
// [origin.x + i*h, origin.x + (i+1)*h) x [origin.y + j*h, ...).
// A cell is "in" iff its center is in the described set.
struct RasterSet {
    Vec2 origin;
    double h = 1.0;
    int nx = 0, ny = 0;
    std::vector<std::uint8_t> cells;

    std::uint8_t at(int i, int j) const { return cells[static_cast<std::size_t>(j) * nx + i]; }
    std::uint8_t& at(int i, int j) { return cells[static_cast<std::size_t>(j) * nx + i]; }
    Vec2 center(int i, int j) const {
        return {origin.x + (i + 0.5) * h, origin.y + (j + 0.5) * h};
    }
    double column_measure(int i) const;  // h * (#occupied cells in column i)
};

RasterSet rasterize(const SetDescriptor& E, const Box& window, double cell_size);

// Exact-in-the-raster s-perimeter of the cell set relative to the window
// [wi0,wi1) x [wj0,wj1) in cell indices. Pairs with both cells outside
// the window do not contribute; omitted beyond-raster interactions are
// bounded in est_error.
InteractionResult raster_per_s(const RasterSet& r, int wi0, int wi1, int wj0, int wj1, double s);

// Interaction of two disjoint cell sets on a common grid (exact cell-pair
// quadrature: tabulated near offsets, corrected midpoint far offsets).
InteractionResult raster_interaction(const RasterSet& A, const RasterSet& B, double s);

}  // namespace fracgeom
