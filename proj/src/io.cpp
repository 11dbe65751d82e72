#include "wrs/io.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "wrs/errors.hpp"

namespace wrs::io {

namespace {

// Splits one CSV line on commas.  Fields never contain quoted commas in the
// formats we read (plain numeric tables), so no quoting state is needed.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) {
        throw IoError("write to '" + path + "' failed");
    }
}

}  // namespace

std::string format_double(double v, int significant_digits) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v,
                             std::chars_format::general, significant_digits);
    return std::string(buf, res.ptr);
}

std::string csv_cell(double v) { return format_double(v, 17); }

std::string to_string(const CsvTable& table) {
    std::string out;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (c > 0) out.push_back(',');
        out += table.header[c];
    }
    out.push_back('\n');
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw IoError("CSV row width " + std::to_string(row.size()) +
                          " does not match header width " +
                          std::to_string(table.header.size()));
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out.push_back(',');
            out += row[c];
        }
        out.push_back('\n');
    }
    return out;
}

void write_csv(const std::string& path, const CsvTable& table) {
    write_text_file(path, to_string(table));
}

std::string to_obj_string(const SurfaceMesh& mesh) {
    const int nx = mesh.nx;
    const int ny = mesh.ny;
    if (nx < 3 || ny < 3) {
        throw IoError("mesh must be at least 3x3 to export quads, got " +
                      std::to_string(nx) + "x" + std::to_string(ny));
    }
    std::string out;
    out.reserve(static_cast<std::size_t>(nx) * ny * 48);
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const std::size_t k = mesh.index(i, j);
            out += "v ";
            out += format_double(mesh.X1[k], 9);
            out.push_back(' ');
            out += format_double(mesh.X2[k], 9);
            out.push_back(' ');
            out += format_double(mesh.X3[k], 9);
            out.push_back('\n');
        }
    }
    // Quads wrap around the seam in both directions: the (i, j) cell joins
    // row i+1 mod nx and column j+1 mod ny, indices 1-based per OBJ.
    auto vid = [ny](int i, int j) { return i * ny + j + 1; };
    for (int i = 0; i < nx; ++i) {
        const int ip = (i + 1) % nx;
        for (int j = 0; j < ny; ++j) {
            const int jp = (j + 1) % ny;
            out += "f ";
            out += std::to_string(vid(i, j));
            out.push_back(' ');
            out += std::to_string(vid(ip, j));
            out.push_back(' ');
            out += std::to_string(vid(ip, jp));
            out.push_back(' ');
            out += std::to_string(vid(i, jp));
            out.push_back('\n');
        }
    }
    return out;
}

void write_obj(const std::string& path, const SurfaceMesh& mesh) {
    write_text_file(path, to_obj_string(mesh));
}

std::vector<double> read_column_csv(const std::string& path,
                                    const std::string& column) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError("'" + path + "' is empty (expected a CSV header row)");
    }
    const auto header = split_csv_line(line);
    std::size_t col = header.size();
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == column) {
            col = c;
            break;
        }
    }
    if (col == header.size()) {
        throw IoError("'" + path + "' has no column named '" + column + "'");
    }
    std::vector<double> values;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() <= col) {
            throw IoError("'" + path + "' line " + std::to_string(line_no) +
                          " has only " + std::to_string(fields.size()) +
                          " fields");
        }
        const std::string& f = fields[col];
        double v = 0.0;
        auto res = std::from_chars(f.data(), f.data() + f.size(), v);
        if (res.ec != std::errc() || res.ptr != f.data() + f.size()) {
            throw IoError("'" + path + "' line " + std::to_string(line_no) +
                          ": cannot parse '" + f + "' as a number");
        }
        values.push_back(v);
    }
    if (values.empty()) {
        throw IoError("'" + path + "' has a header but no data rows");
    }
    return values;
}

}  // namespace wrs::io
