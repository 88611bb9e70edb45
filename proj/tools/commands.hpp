#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geogirth/geometry.hpp"

namespace geogirth::cli {

enum class Command { Triangle, ShortestTriangle, Girth, WeightedGirth, TxTriangle, TxShortestTriangle };

inline constexpr std::array<Command, 6> kAllCommands{Command::Triangle,      Command::ShortestTriangle,
                                                     Command::Girth,         Command::WeightedGirth,
                                                     Command::TxTriangle,    Command::TxShortestTriangle};

std::string_view command_name(Command c);
std::optional<Command> parse_command(std::string_view name);

/// Outcome of one algorithm or oracle run. `vertices` is empty for the hop
/// girth, which reports a count only.
struct Answer {
    bool found = false;
    std::vector<int> vertices;
    double value = 0.0;  // perimeter, cycle length or hop count

    /// "none", "triangle a b c perimeter P", "girth k" or "cycle ... length L".
    std::string describe(Command c) const;
    /// Single CSV-safe token: "none", "found", or the value.
    std::string brief(Command c) const;
};

Answer run_algorithm(Command c, const SiteSet& sites, std::uint64_t seed);
Answer run_oracle(Command c, const SiteSet& sites);

/// Compares a fast answer with the oracle's. Witnesses returned by the fast
/// side are also checked to really be triangles or cycles of the graph.
bool answers_agree(Command c, const SiteSet& sites, const Answer& fast, const Answer& oracle);

/// Accepts "sizes=A..B" or "A..B" (doubling from A up to B) and
/// "sizes=A,B,C" or "A,B,C". Throws std::invalid_argument otherwise.
std::vector<std::size_t> parse_sizes(std::string_view text);

/// --seed if given, else the GEOGIRTH_SEED environment variable, else 0.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag);

struct BenchRow {
    std::size_t n = 0;
    int repeat = 0;
    double seconds = 0.0;
    std::string answer;
};

/// Times the command on bench instances. Repeat r of size n uses a fresh
/// instance generated from seed + r, so the per-size median spans instance
/// variation. Each instance is solved `runs` times and the fastest run is
/// kept, which filters scheduler interference out of a single timing.
/// Sizes are interleaved within each repeat, so slow drift in machine load
/// affects every size alike. Rows arrive in that execution order.
std::vector<BenchRow> run_bench(Command c, const std::vector<std::size_t>& sizes, int repeats, std::uint64_t seed,
                                const std::function<void(const BenchRow&)>& on_row = {}, int runs = 1);

/// Median seconds per size, in the order of `sizes`.
std::vector<double> bench_medians(const std::vector<BenchRow>& rows, const std::vector<std::size_t>& sizes);

}  // namespace geogirth::cli
