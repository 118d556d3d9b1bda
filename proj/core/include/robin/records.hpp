#pragma once

#include <iosfwd>
#include <string>

#include "robin/channel.hpp"
#include "robin/types.hpp"

namespace robin {

// Plain-text complex records: a '#'-comment header, a dimension line
// "rows cols", then one "re,im" value per line in row-major order. Values
// round-trip exactly (printed with max_digits10).

void write_complex_matrix(std::ostream& out, const CMat& matrix);
CMat read_complex_matrix(std::istream& in);

void save_matrix(const std::string& path, const CMat& matrix);
CMat load_matrix(const std::string& path);

void save_pattern(const std::string& path, const AntennaPattern& pattern);
AntennaPattern load_pattern(const std::string& path);

void save_environment(const std::string& path, const MultipathEnvironment& env);
MultipathEnvironment load_environment(const std::string& path);

} // namespace robin
