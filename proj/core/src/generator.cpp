#include "geogirth/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace geogirth {

SiteSet generate(const GeneratorSpec& spec) {
    if (spec.n == 0) throw std::invalid_argument("generate: n must be positive");
    if (!(spec.r_min > 0.0) || !(spec.r_max >= spec.r_min)) {
        throw std::invalid_argument("generate: need 0 < r_min <= r_max");
    }
    if (spec.radii == RadiusLaw::PowerLaw && !(spec.gamma > 1.0)) {
        throw std::invalid_argument("generate: power-law exponent must exceed 1");
    }
    if (!(spec.side > 0.0)) throw std::invalid_argument("generate: side must be positive");

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> coord(0.0, spec.side);

    std::vector<std::pair<double, double>> seeds;
    if (spec.centers == CenterLaw::Clustered) {
        const std::size_t k = std::max<std::size_t>(1, spec.clusters);
        for (std::size_t i = 0; i < k; ++i) seeds.emplace_back(coord(rng), coord(rng));
    }
    std::uniform_int_distribution<std::size_t> pick(0, seeds.empty() ? 0 : seeds.size() - 1);
    std::normal_distribution<double> jitter(0.0, spec.cluster_spread * spec.side);

    auto radius = [&]() {
        if (spec.radii == RadiusLaw::Uniform) {
            return spec.r_min + (spec.r_max - spec.r_min) * unit(rng);
        }
        // Inverse CDF of the truncated Pareto density r^-gamma.
        const double a = 1.0 - spec.gamma;
        const double lo = std::pow(spec.r_min, a), hi = std::pow(spec.r_max, a);
        const double r = std::pow(lo + (hi - lo) * unit(rng), 1.0 / a);
        return std::clamp(r, spec.r_min, spec.r_max);
    };

    std::vector<Site> sites;
    sites.reserve(spec.n);
    std::set<std::pair<double, double>> used;
    while (sites.size() < spec.n) {
        double x = 0.0, y = 0.0;
        if (seeds.empty()) {
            x = coord(rng);
            y = coord(rng);
        } else {
            const auto& c = seeds[pick(rng)];
            x = c.first + jitter(rng);
            y = c.second + jitter(rng);
        }
        const double r = radius();
        if (!used.emplace(x, y).second) continue;
        sites.push_back({static_cast<int>(sites.size()), x, y, r});
    }
    return SiteSet(std::move(sites));
}

GeneratorSpec bench_spec(std::size_t n, std::uint64_t seed) {
    GeneratorSpec spec;
    spec.n = n;
    const double base = 0.564 / std::sqrt(static_cast<double>(std::max<std::size_t>(n, 1)));
    spec.r_min = 0.5 * base;
    spec.r_max = 1.5 * base;
    spec.seed = seed;
    return spec;
}

CenterLaw parse_center_law(const std::string& name) {
    if (name == "uniform") return CenterLaw::Uniform;
    if (name == "clustered") return CenterLaw::Clustered;
    throw std::invalid_argument("unknown center law '" + name + "' (uniform, clustered)");
}

RadiusLaw parse_radius_law(const std::string& name) {
    if (name == "uniform") return RadiusLaw::Uniform;
    if (name == "powerlaw" || name == "power-law") return RadiusLaw::PowerLaw;
    throw std::invalid_argument("unknown radius law '" + name + "' (uniform, powerlaw)");
}

}  // namespace geogirth
