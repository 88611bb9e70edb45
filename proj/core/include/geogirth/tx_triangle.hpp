#pragma once

#include <cstdint>
#include <optional>

#include "geogirth/chan.hpp"
#include "geogirth/geometry.hpp"
#include "geogirth/graph.hpp"

namespace geogirth {

/// Some directed triangle of the transmission graph, vertices listed along
/// the cycle (v[0] -> v[1] -> v[2] -> v[0]), or nullopt.
///
/// Let s be the smallest site of a triangle s -> t -> u -> s. Then t is one
/// of the boundedly many out-neighbors of s of comparable radius. Either u is
/// such a neighbor of t as well, or r_u < r_t / 2 and s lies in some disk
/// with radius in [r_s, r_t / 2), which closes a triangle through t.
std::optional<Triangle> find_directed_triangle(const SiteSet& sites);

/// Whether the transmission graph has a directed triangle of perimeter at
/// most W.
bool decide_tx_perimeter(const SiteSet& sites, double W);

/// As decide_tx_perimeter, returning a witness of perimeter at most W.
std::optional<Triangle> decide_tx_perimeter_witness(const SiteSet& sites, double W);

/// Minimum-perimeter directed triangle. The seed affects the running time
/// only.
std::optional<Triangle> shortest_triangle_tx(const SiteSet& sites, std::uint64_t seed = 0,
                                             ChanStats* stats = nullptr);

}  // namespace geogirth
