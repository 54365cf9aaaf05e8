#include "voltlab/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "voltlab/errors.hpp"

namespace voltlab {

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double parse_real(const std::string& cell) {
    if (cell.empty()) throw IoError("empty numeric cell");
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size())
        throw IoError("malformed numeric cell: '" + cell + "'");
    return v;
}

static std::string join(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    return line;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary); // binary: LF endings everywhere
    if (!out) throw IoError("cannot open for writing: " + path);
    out << join(header) << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw IoError("row width mismatch writing " + path);
        out << join(row) << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

static std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path,
                                               std::vector<std::string>& header) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty csv: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    header = split_line(line);
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_line(line);
        if (cells.size() != header.size())
            throw IoError("row width mismatch reading " + path);
        rows.push_back(std::move(cells));
    }
    return rows;
}

void write_path_csv(const std::string& path, const std::vector<double>& values) {
    if (values.size() < 2) throw IoError("path needs at least two samples");
    const std::size_t n = values.size() - 1;
    std::vector<std::vector<std::string>> rows;
    rows.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        rows.push_back({format_real(static_cast<double>(i) / static_cast<double>(n)),
                        format_real(values[i])});
    write_csv(path, {"time", "value"}, rows);
}

std::vector<double> read_path_csv(const std::string& path) {
    std::vector<std::string> header;
    auto rows = read_csv(path, header);
    if (header.size() != 2 || header[0] != "time" || header[1] != "value")
        throw IoError("expected time,value header in " + path);
    if (rows.size() < 2) throw IoError("path csv needs at least two rows: " + path);
    std::vector<double> values;
    values.reserve(rows.size());
    for (const auto& row : rows) values.push_back(parse_real(row[1]));
    return values;
}

} // namespace voltlab
