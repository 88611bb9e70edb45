#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "geogirth/geometry.hpp"

namespace geogirth {

/// Malformed instance text. `line()` is 1-based; 0 means the file as a whole.
class InstanceParseError : public std::runtime_error {
public:
    InstanceParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Reads the instance format: a first line holding n, then n lines "x y r".
/// Blank trailing lines are ignored. Throws InstanceParseError on malformed
/// text and GeometryError on invalid sites (non-positive radius, repeated
/// center).
SiteSet read_instance(std::istream& in);
SiteSet read_instance(const std::filesystem::path& path);

/// Writes the same format with 17 significant digits, so reading the output
/// back reproduces every coordinate exactly.
void write_instance(std::ostream& out, const SiteSet& sites);
void write_instance(const std::filesystem::path& path, const SiteSet& sites);

/// A real number printed with 17 significant digits.
std::string format_real(double v);

}  // namespace geogirth
