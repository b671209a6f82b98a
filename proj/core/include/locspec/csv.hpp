#pragma once

#include <iosfwd>
#include <string>

#include "locspec/matrix.hpp"
#include "locspec/scoring.hpp"
#include "locspec/surface.hpp"

namespace locspec {

/// Read a comma-separated numeric table. A first line with any
/// non-numeric cell is treated as a header and skipped. All rows must
/// have the same width.
DenseMatrix read_csv_matrix(std::istream& in);
DenseMatrix read_csv_matrix_file(const std::string& path);

/// "index,score" with scores to 12 significant digits.
void write_scores_csv(const ScoreVector& scores, std::ostream& out);
void write_scores_csv_file(const ScoreVector& scores, const std::string& path);

/// "x,y,z" header, one row per point, anomalies last.
void write_surface_csv(const SurfaceInstance& inst, std::ostream& out);
void write_surface_csv_file(const SurfaceInstance& inst, const std::string& path);

/// 12-significant-digit formatting shared by all CSV output.
std::string format_real(double v);

}  // namespace locspec
