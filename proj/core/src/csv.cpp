#include "locspec/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace locspec {

namespace {

bool parse_cell(const std::string& cell, double& out) {
    if (cell.empty()) return false;
    char* end = nullptr;
    out = std::strtod(cell.c_str(), &end);
    return end == cell.c_str() + cell.size();
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // trim surrounding whitespace
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

DenseMatrix read_csv_matrix(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first_line = true;
    std::size_t width = 0;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split_line(line);
        std::vector<double> row(cells.size());
        bool numeric = true;
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (!parse_cell(cells[i], row[i])) {
                numeric = false;
                break;
            }
        if (!numeric) {
            if (first_line) {  // header
                first_line = false;
                continue;
            }
            throw std::runtime_error("csv: non-numeric cell at line " +
                                     std::to_string(lineno));
        }
        first_line = false;
        if (rows.empty())
            width = row.size();
        else if (row.size() != width)
            throw std::runtime_error("csv: ragged row at line " + std::to_string(lineno));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("csv: no data rows");

    DenseMatrix m(rows.size(), width);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < width; ++j) m(i, j) = rows[i][j];
    return m;
}

DenseMatrix read_csv_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv: cannot open " + path);
    return read_csv_matrix(in);
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_scores_csv(const ScoreVector& scores, std::ostream& out) {
    out << "index,score\n";
    for (std::size_t i = 0; i < scores.s.size(); ++i)
        out << i << "," << format_real(scores.s[i]) << "\n";
}

void write_scores_csv_file(const ScoreVector& scores, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("csv: cannot write " + path);
    write_scores_csv(scores, out);
}

void write_surface_csv(const SurfaceInstance& inst, std::ostream& out) {
    out << "x,y,z\n";
    for (std::size_t i = 0; i < inst.x.rows(); ++i)
        out << format_real(inst.x(i, 0)) << "," << format_real(inst.x(i, 1)) << ","
            << format_real(inst.x(i, 2)) << "\n";
}

void write_surface_csv_file(const SurfaceInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("csv: cannot write " + path);
    write_surface_csv(inst, out);
}

}  // namespace locspec
