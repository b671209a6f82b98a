#include "locspec/surface.hpp"

#include <cmath>
#include <stdexcept>

#include "locspec/rng.hpp"

namespace locspec {

double surface_height(double x, double y) {
    return 3.0 * (1.0 - x) * (1.0 - x) * std::exp(-x * x - (y + 1.0) * (y + 1.0)) -
           10.0 * (x / 5.0 - x * x * x - std::pow(y, 5)) * std::exp(-x * x - y * y) -
           (1.0 / 3.0) * std::exp(-(x + 1.0) * (x + 1.0) - y * y);
}

SurfaceInstance generate_surface(const SurfaceSpec& spec) {
    const std::size_t g = spec.grid_side;
    if (g < 2) throw std::invalid_argument("generate_surface: grid side must be >= 2");

    const std::size_t m = g * g + 2;
    SurfaceInstance inst;
    inst.x = DenseMatrix(m, 3);
    inst.ref_index = g * g;
    inst.target_index = g * g + 1;

    double z_min = 0.0, z_max = 0.0;
    bool first = true;
    for (std::size_t iy = 0; iy < g; ++iy) {
        const double y = spec.y_min + (spec.y_max - spec.y_min) *
                                          static_cast<double>(iy) / static_cast<double>(g - 1);
        for (std::size_t ix = 0; ix < g; ++ix) {
            const double x = spec.x_min + (spec.x_max - spec.x_min) * static_cast<double>(ix) /
                                              static_cast<double>(g - 1);
            const double z = surface_height(x, y);
            const std::size_t row = iy * g + ix;
            inst.x(row, 0) = x;
            inst.x(row, 1) = y;
            inst.x(row, 2) = z;
            if (first || z < z_min) z_min = z;
            if (first || z > z_max) z_max = z;
            first = false;
        }
    }

    inst.height_offset =
        spec.height_offset > 0.0 ? spec.height_offset : 0.5 * (z_max - z_min);

    Rng rng(spec.seed);
    const std::size_t cell_a = static_cast<std::size_t>(rng.next_below(g * g));
    std::size_t cell_b = static_cast<std::size_t>(rng.next_below(g * g - 1));
    if (cell_b >= cell_a) ++cell_b;

    const std::size_t cells[2] = {cell_a, cell_b};
    for (int a = 0; a < 2; ++a) {
        const std::size_t row = inst.ref_index + static_cast<std::size_t>(a);
        inst.x(row, 0) = inst.x(cells[a], 0);
        inst.x(row, 1) = inst.x(cells[a], 1);
        inst.x(row, 2) = inst.x(cells[a], 2) + inst.height_offset;
    }
    return inst;
}

}  // namespace locspec
