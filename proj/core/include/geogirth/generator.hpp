#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "geogirth/geometry.hpp"

namespace geogirth {

enum class CenterLaw { Uniform, Clustered };
enum class RadiusLaw { Uniform, PowerLaw };

/// Random instance description. Centers are drawn in the square
/// [0, side]^2 (clustered centers are Gaussian around uniform cluster
/// seeds and may leave it). Uniform radii come from [r_min, r_max]; power-law
/// radii have density proportional to r^-gamma on [r_min, r_max].
struct GeneratorSpec {
    std::size_t n = 0;
    CenterLaw centers = CenterLaw::Uniform;
    RadiusLaw radii = RadiusLaw::Uniform;
    double side = 1.0;
    double r_min = 0.01;
    double r_max = 0.05;
    double gamma = 2.5;
    std::size_t clusters = 8;
    double cluster_spread = 0.05;
    std::uint64_t seed = 0;
};

/// Deterministic for a given spec. Throws std::invalid_argument on n = 0 or
/// an empty radius range.
SiteSet generate(const GeneratorSpec& spec);

/// The benchmark family: n uniform centers in the unit square with radii
/// 0.564/sqrt(n) times a uniform factor in [0.5, 1.5], which keeps the
/// expected degree constant as n grows.
GeneratorSpec bench_spec(std::size_t n, std::uint64_t seed);

CenterLaw parse_center_law(const std::string& name);
RadiusLaw parse_radius_law(const std::string& name);

}  // namespace geogirth
