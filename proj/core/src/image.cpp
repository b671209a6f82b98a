#include "locspec/image.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace locspec {

namespace {

// Next header token, skipping whitespace and '#' comment lines.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

std::size_t parse_count(const std::string& tok, const char* what) {
    if (tok.empty()) throw std::runtime_error(std::string("pgm: missing ") + what);
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(tok, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("pgm: bad ") + what);
    }
    if (pos != tok.size()) throw std::runtime_error(std::string("pgm: bad ") + what);
    return static_cast<std::size_t>(v);
}

}  // namespace

GrayImage load_pgm(std::istream& in) {
    const std::string magic = next_token(in);
    if (magic != "P2" && magic != "P5")
        throw std::runtime_error("pgm: unsupported magic (want P2 or P5)");

    const std::size_t width = parse_count(next_token(in), "width");
    const std::size_t height = parse_count(next_token(in), "height");
    const std::size_t maxval = parse_count(next_token(in), "maxval");
    if (width == 0 || height == 0) throw std::runtime_error("pgm: zero dimension");
    if (maxval == 0 || maxval > 255) throw std::runtime_error("pgm: maxval must be 1..255");

    GrayImage img;
    img.height = height;
    img.width = width;
    img.pixels.resize(width * height);

    if (magic == "P5") {
        // single whitespace byte after maxval already consumed by tokenizer
        in.read(reinterpret_cast<char*>(img.pixels.data()),
                static_cast<std::streamsize>(img.pixels.size()));
        if (static_cast<std::size_t>(in.gcount()) != img.pixels.size())
            throw std::runtime_error("pgm: truncated P5 payload");
    } else {
        for (std::size_t i = 0; i < img.pixels.size(); ++i) {
            const std::size_t v = parse_count(next_token(in), "pixel");
            if (v > maxval) throw std::runtime_error("pgm: pixel exceeds maxval");
            img.pixels[i] = static_cast<std::uint8_t>(v);
        }
    }
    return img;
}

GrayImage load_pgm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("pgm: cannot open " + path);
    return load_pgm(in);
}

void write_pgm(const GrayImage& img, std::ostream& out) {
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
}

void write_pgm_file(const GrayImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("pgm: cannot write " + path);
    write_pgm(img, out);
}

PatchExtraction extract_patches(const GrayImage& img, std::size_t patch_side) {
    if (patch_side < 1 || img.height < patch_side || img.width < patch_side)
        throw std::invalid_argument("extract_patches: image smaller than patch");

    PatchGrid grid{img.height, img.width, patch_side};
    PatchExtraction out{DenseMatrix(grid.rows(), patch_side * patch_side), grid};

    std::size_t row = 0;
    for (std::size_t y = 0; y < grid.out_height(); ++y) {
        for (std::size_t x = 0; x < grid.out_width(); ++x, ++row) {
            std::size_t c = 0;
            for (std::size_t dy = 0; dy < patch_side; ++dy)
                for (std::size_t dx = 0; dx < patch_side; ++dx, ++c)
                    out.x(row, c) = static_cast<double>(img.at(y + dy, x + dx));
        }
    }
    return out;
}

std::size_t patch_index_of(const PatchGrid& grid, std::size_t center_y,
                           std::size_t center_x) {
    if (grid.patch_side != 3)
        throw std::invalid_argument("patch_index_of: defined for 3x3 patches");
    if (center_y < 1 || center_y > grid.source_height - 2 || center_x < 1 ||
        center_x > grid.source_width - 2)
        throw std::invalid_argument("patch_index_of: center on the image border");
    return (center_y - 1) * grid.out_width() + (center_x - 1);
}

GrayImage scores_to_heatmap(const Vector& scores, const PatchGrid& grid, bool invert) {
    if (scores.size() != grid.rows())
        throw std::invalid_argument("scores_to_heatmap: score length != patch count");

    double lo = scores[0], hi = scores[0];
    for (double s : scores) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }

    GrayImage img;
    img.height = grid.out_height();
    img.width = grid.out_width();
    img.pixels.resize(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        int v;
        if (hi == lo) {
            v = 128;
        } else {
            v = static_cast<int>(std::floor((scores[i] - lo) / (hi - lo) * 255.0 + 0.5));
            if (invert) v = 255 - v;
        }
        img.pixels[i] = static_cast<std::uint8_t>(v);
    }
    return img;
}

GrayImage eigvec_to_map(const EigenBasis& basis, std::size_t column,
                        const PatchGrid& grid, bool invert) {
    if (column >= basis.vectors.cols())
        throw std::invalid_argument("eigvec_to_map: column out of range");
    Vector mag(basis.vectors.rows());
    for (std::size_t i = 0; i < mag.size(); ++i)
        mag[i] = std::abs(basis.vectors(i, column));
    return scores_to_heatmap(mag, grid, invert);
}

}  // namespace locspec
