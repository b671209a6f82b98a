#pragma once

#include <cstdint>

#include "locspec/matrix.hpp"

namespace locspec {

/// Synthetic 3D terrain: a g x g uniform grid with two anomaly points
/// hovered a fixed offset above the surface, appended last. Row g*g is
/// the reference anomaly, row g*g + 1 the target.
struct SurfaceSpec {
    std::size_t grid_side = 50;
    double x_min = -3.0, x_max = 3.0;
    double y_min = -3.0, y_max = 3.0;
    double height_offset = 0.0;  // <= 0 -> default 0.5 * (z_max - z_min)
    std::uint64_t seed = 0;
};

struct SurfaceInstance {
    DenseMatrix x;  // (g*g + 2) x 3, rows (x, y, z)
    std::size_t ref_index = 0;
    std::size_t target_index = 0;
    double height_offset = 0.0;  // realized offset
};

/// Three-Gaussian bump terrain evaluated at (x, y).
double surface_height(double x, double y);

SurfaceInstance generate_surface(const SurfaceSpec& spec);

}  // namespace locspec
