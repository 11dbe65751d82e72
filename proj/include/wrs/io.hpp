#pragma once

// File export/import helpers shared by the command-line front end: CSV
// tables with round-trippable 17-significant-digit floats, OBJ meshes with
// 9-significant-digit vertices and seam-wrapped quad faces, and a column
// reader for user-supplied sample files.  All writers emit '\n' line
// endings and fixed field orders so identical inputs produce byte-identical
// files.

#include <string>
#include <vector>

#include "wrs/mesh.hpp"

namespace wrs::io {

// printf %.{sig}g via std::to_chars: deterministic, locale-independent.
std::string format_double(double v, int significant_digits);

// CSV cell with the round-trippable default precision (17).
std::string csv_cell(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string to_string(const CsvTable& table);
void write_csv(const std::string& path, const CsvTable& table);

// OBJ export: "v x y z" lines (9 significant digits) for all nx*ny
// vertices in index order, then 1-based quad faces "f a b c d" wrapped
// around the seam in both directions (nx*ny quads total).
std::string to_obj_string(const SurfaceMesh& mesh);
void write_obj(const std::string& path, const SurfaceMesh& mesh);

// Reads the named column from a header-bearing CSV file.  Throws IoError
// when the file cannot be opened, the column is missing, or a field fails
// to parse as a double.
std::vector<double> read_column_csv(const std::string& path,
                                    const std::string& column);

}  // namespace wrs::io
