#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "locspec/matrix.hpp"
#include "locspec/solver.hpp"

namespace locspec {

struct GrayImage {
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<std::uint8_t> pixels;  // row-major

    std::uint8_t at(std::size_t y, std::size_t x) const { return pixels[y * width + x]; }
    std::uint8_t& at(std::size_t y, std::size_t x) { return pixels[y * width + x]; }

    bool operator==(const GrayImage&) const = default;
};

/// Parse P2 (ASCII) or P5 (binary) PGM, maxval <= 255. Header comments
/// and arbitrary whitespace accepted.
GrayImage load_pgm(std::istream& in);
GrayImage load_pgm_file(const std::string& path);

/// Serialize as binary P5.
void write_pgm(const GrayImage& img, std::ostream& out);
void write_pgm_file(const GrayImage& img, const std::string& path);

/// Mapping between sliding s x s patch rows and pixel coordinates.
/// Patches are enumerated row-major over their top-left corner.
struct PatchGrid {
    std::size_t source_height = 0;
    std::size_t source_width = 0;
    std::size_t patch_side = 3;

    std::size_t out_height() const { return source_height - patch_side + 1; }
    std::size_t out_width() const { return source_width - patch_side + 1; }
    std::size_t rows() const { return out_height() * out_width(); }
};

struct PatchExtraction {
    DenseMatrix x;  // rows() x patch_side^2, pixel values as reals
    PatchGrid grid;
};

PatchExtraction extract_patches(const GrayImage& img, std::size_t patch_side = 3);

/// Patch row index for the patch centered at a pixel (3x3 patches
/// only; center must be off the border).
std::size_t patch_index_of(const PatchGrid& grid, std::size_t center_y,
                           std::size_t center_x);

/// Affine rescale of scores onto 0..255 over an out_height x out_width
/// image; invert maps high scores to dark pixels. Constant scores map
/// to a uniform 128.
GrayImage scores_to_heatmap(const Vector& scores, const PatchGrid& grid, bool invert);

/// Heatmap of |U(:, column)|.
GrayImage eigvec_to_map(const EigenBasis& basis, std::size_t column,
                        const PatchGrid& grid, bool invert = false);

}  // namespace locspec
