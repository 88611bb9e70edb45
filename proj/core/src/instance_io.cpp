#include "geogirth/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace geogirth {

InstanceParseError::InstanceParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

namespace {

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

}  // namespace

SiteSet read_instance(std::istream& in) {
    std::string text;
    std::size_t lineno = 0;
    auto next_line = [&]() -> bool {
        if (!std::getline(in, text)) return false;
        ++lineno;
        return true;
    };

    if (!next_line()) throw InstanceParseError(0, "empty instance");
    long long n = -1;
    {
        std::istringstream head(text);
        std::string extra;
        if (!(head >> n) || (head >> extra) || n < 0) throw InstanceParseError(lineno, "expected a site count");
    }

    std::vector<Site> sites;
    sites.reserve(static_cast<std::size_t>(n));
    while (static_cast<long long>(sites.size()) < n) {
        if (!next_line()) {
            throw InstanceParseError(lineno, "expected " + std::to_string(n) + " sites, found " +
                                                 std::to_string(sites.size()));
        }
        std::istringstream row(text);
        double x = 0.0, y = 0.0, r = 0.0;
        std::string extra;
        if (!(row >> x >> y >> r) || (row >> extra)) throw InstanceParseError(lineno, "expected \"x y r\"");
        if (!(r > 0.0)) throw GeometryError("line " + std::to_string(lineno) + ": radius must be positive");
        sites.push_back({static_cast<int>(sites.size()), x, y, r});
    }
    while (next_line()) {
        if (!blank(text)) throw InstanceParseError(lineno, "unexpected text after the last site");
    }
    return SiteSet(std::move(sites));
}

SiteSet read_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_instance(in);
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_instance(std::ostream& out, const SiteSet& sites) {
    out << sites.size() << '\n';
    for (const Site& s : sites) out << format_real(s.x) << ' ' << format_real(s.y) << ' ' << format_real(s.r) << '\n';
}

void write_instance(const std::filesystem::path& path, const SiteSet& sites) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_instance(out, sites);
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace geogirth
