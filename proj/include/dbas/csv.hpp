#pragma once

#include <string>
#include <vector>

namespace dbas {

/// Shortest round-trip decimal form (std::to_chars); the one formatting used
/// for every real written to CSV or filenames so outputs are byte-stable.
std::string format_double(double v);

double parse_double(const std::string& text);

std::vector<std::string> split_csv_line(const std::string& line);

/// Whole-file read/write with explicit errors.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace dbas
