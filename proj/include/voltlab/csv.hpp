#pragma once

#include <string>
#include <vector>

namespace voltlab {

// Dialect used everywhere: comma separator, '.' decimal point, one header
// row, LF line endings, reals printed with 17 significant digits so a
// write/read round trip is bit-exact.

std::string format_real(double x);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Raw cells, header returned separately. Throws IoError on unreadable file
// or ragged rows.
std::vector<std::vector<std::string>> read_csv(const std::string& path,
                                               std::vector<std::string>& header);

// Sampled path on [0,1]: values.size() == n+1, written as time,value with
// time = i/n.
void write_path_csv(const std::string& path, const std::vector<double>& values);
std::vector<double> read_path_csv(const std::string& path);

double parse_real(const std::string& cell); // strict: whole cell must parse

} // namespace voltlab
