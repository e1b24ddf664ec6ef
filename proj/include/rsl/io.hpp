#pragma once

#include <string>
#include <vector>

#include "rsl/classifier.hpp"
#include "rsl/dense.hpp"

namespace rsl {

/// Shortest exact decimal representation (round-trips the double).
std::string fmt_double(double v);

std::vector<std::string> split_csv_line(const std::string& line);

std::vector<std::vector<std::string>> read_csv(const std::string& path, bool skip_header);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);
bool file_exists(const std::string& path);

/// Flat versioned parameter dump: shapes header + row-major payload + FNV-1a
/// checksum over the payload text.
void save_energy_model(const EnergyModel& model, const std::string& path);
EnergyModel load_energy_model(const std::string& path);

double parse_double(const std::string& s, const std::string& what);
long long parse_int(const std::string& s, const std::string& what);

}  // namespace rsl
