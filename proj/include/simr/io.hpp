#ifndef SIMR_IO_HPP
#define SIMR_IO_HPP

#include <string>

#include "simr/grid.hpp"

namespace simr {

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

/// Inverse of format_double; throws ConfigError on malformed input.
double parse_double(const std::string& text);

/// Plain-text vector file: one decimal per line.
GridFunction read_vector(const std::string& path);
void write_vector(const std::string& path, const GridFunction& u);

/// Writes text with LF line endings regardless of platform.
void write_text_file(const std::string& path, const std::string& content);

std::string read_text_file(const std::string& path);

} // namespace simr

#endif // SIMR_IO_HPP
