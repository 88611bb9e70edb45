#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "geogirth/disk_triangle.hpp"
#include "geogirth/generator.hpp"
#include "geogirth/girth.hpp"
#include "geogirth/graph.hpp"
#include "geogirth/instance_io.hpp"
#include "geogirth/tx_triangle.hpp"

namespace geogirth::cli {

namespace {

constexpr double kRelTol = 1e-9;

bool close(double a, double b) { return std::abs(a - b) <= kRelTol * std::max(std::abs(a), std::abs(b)); }

Answer from_triangle(const std::optional<Triangle>& t) {
    Answer a;
    if (!t) return a;
    a.found = true;
    a.vertices.assign(t->v.begin(), t->v.end());
    a.value = t->perimeter;
    return a;
}

Answer from_cycle(const std::optional<Cycle>& c) {
    Answer a;
    if (!c) return a;
    a.found = true;
    a.vertices = c->vertices;
    a.value = c->length;
    return a;
}

Answer from_count(const std::optional<int>& k) {
    Answer a;
    if (!k) return a;
    a.found = true;
    a.value = *k;
    return a;
}

bool is_disk_triangle(const SiteSet& s, const std::vector<int>& v) {
    if (v.size() != 3) return false;
    return disk_edge(s[v[0]], s[v[1]]) && disk_edge(s[v[1]], s[v[2]]) && disk_edge(s[v[2]], s[v[0]]);
}

bool is_tx_triangle(const SiteSet& s, const std::vector<int>& v) {
    if (v.size() != 3) return false;
    return tx_edge(s[v[0]], s[v[1]]) && tx_edge(s[v[1]], s[v[2]]) && tx_edge(s[v[2]], s[v[0]]);
}

bool is_disk_cycle(const SiteSet& s, const std::vector<int>& v, double length) {
    if (v.size() < 3) return false;
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    double total = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Site& a = s[static_cast<std::size_t>(v[i])];
        const Site& b = s[static_cast<std::size_t>(v[(i + 1) % v.size()])];
        if (!disk_edge(a, b)) return false;
        total += dist(a, b);
    }
    return close(total, length);
}

std::vector<int> sorted_copy(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

std::string_view command_name(Command c) {
    switch (c) {
        case Command::Triangle: return "triangle";
        case Command::ShortestTriangle: return "shortest-triangle";
        case Command::Girth: return "girth";
        case Command::WeightedGirth: return "weighted-girth";
        case Command::TxTriangle: return "tx-triangle";
        case Command::TxShortestTriangle: return "tx-shortest-triangle";
    }
    return "?";
}

std::optional<Command> parse_command(std::string_view name) {
    for (Command c : kAllCommands) {
        if (command_name(c) == name) return c;
    }
    return std::nullopt;
}

std::string Answer::describe(Command c) const {
    if (!found) return "none";
    std::string out;
    switch (c) {
        case Command::Girth: return "girth " + std::to_string(static_cast<long long>(value));
        case Command::WeightedGirth:
            out = "cycle";
            for (int v : vertices) out += " " + std::to_string(v);
            return out + " length " + format_real(value);
        default:
            out = "triangle";
            for (int v : vertices) out += " " + std::to_string(v);
            return out + " perimeter " + format_real(value);
    }
}

std::string Answer::brief(Command c) const {
    if (!found) return "none";
    if (c == Command::Triangle || c == Command::TxTriangle) return "found";
    if (c == Command::Girth) return std::to_string(static_cast<long long>(value));
    return format_real(value);
}

Answer run_algorithm(Command c, const SiteSet& sites, std::uint64_t seed) {
    switch (c) {
        case Command::Triangle: return from_triangle(find_triangle_disk(sites));
        case Command::ShortestTriangle: return from_triangle(shortest_triangle_disk(sites, seed));
        case Command::Girth: return from_count(girth_unweighted(sites));
        case Command::WeightedGirth: return from_cycle(weighted_girth_disk(sites, seed));
        case Command::TxTriangle: return from_triangle(find_directed_triangle(sites));
        case Command::TxShortestTriangle: return from_triangle(shortest_triangle_tx(sites, seed));
    }
    throw std::logic_error("unknown command");
}

Answer run_oracle(Command c, const SiteSet& sites) {
    switch (c) {
        case Command::Triangle: return from_triangle(brute_triangle(sites, build_disk_graph_brute(sites)));
        case Command::ShortestTriangle:
            return from_triangle(brute_shortest_triangle(sites, build_disk_graph_brute(sites)));
        case Command::Girth: return from_count(brute_girth_unweighted(build_disk_graph_brute(sites)));
        case Command::WeightedGirth: return from_cycle(brute_min_weight_cycle(build_disk_graph_brute(sites)));
        case Command::TxTriangle: return from_triangle(brute_triangle(sites, build_tx_graph_brute(sites)));
        case Command::TxShortestTriangle:
            return from_triangle(brute_shortest_triangle(sites, build_tx_graph_brute(sites)));
    }
    throw std::logic_error("unknown command");
}

bool answers_agree(Command c, const SiteSet& sites, const Answer& fast, const Answer& oracle) {
    if (fast.found != oracle.found) return false;
    if (!fast.found) return true;
    switch (c) {
        case Command::Triangle: return is_disk_triangle(sites, fast.vertices);
        case Command::ShortestTriangle:
            return is_disk_triangle(sites, fast.vertices) && close(fast.value, oracle.value) &&
                   sorted_copy(fast.vertices) == sorted_copy(oracle.vertices);
        case Command::Girth: return fast.value == oracle.value;
        case Command::WeightedGirth:
            return is_disk_cycle(sites, fast.vertices, fast.value) && close(fast.value, oracle.value);
        case Command::TxTriangle: return is_tx_triangle(sites, fast.vertices);
        case Command::TxShortestTriangle:
            return is_tx_triangle(sites, fast.vertices) && close(fast.value, oracle.value);
    }
    return false;
}

std::vector<std::size_t> parse_sizes(std::string_view text) {
    constexpr std::string_view prefix = "sizes=";
    if (text.substr(0, prefix.size()) == prefix) text.remove_prefix(prefix.size());
    auto number = [&](std::string_view s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos) {
            throw std::invalid_argument("bad size '" + std::string(s) + "'");
        }
        const std::size_t v = std::stoull(std::string(s));
        if (v == 0) throw std::invalid_argument("sizes must be positive");
        return v;
    };
    std::vector<std::size_t> out;
    if (const auto dots = text.find(".."); dots != std::string_view::npos) {
        const std::size_t lo = number(text.substr(0, dots));
        const std::size_t hi = number(text.substr(dots + 2));
        if (lo > hi) throw std::invalid_argument("empty size range");
        for (std::size_t n = lo; n <= hi; n *= 2) out.push_back(n);
        return out;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto end = comma == std::string_view::npos ? text.size() : comma;
        out.push_back(number(text.substr(start, end - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("GEOGIRTH_SEED"); env && *env) {
        try {
            std::size_t used = 0;
            const std::uint64_t v = std::stoull(env, &used);
            if (used == std::string_view(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw std::invalid_argument("GEOGIRTH_SEED is not an unsigned integer");
    }
    return 0;
}

std::vector<BenchRow> run_bench(Command c, const std::vector<std::size_t>& sizes, int repeats, std::uint64_t seed,
                                const std::function<void(const BenchRow&)>& on_row, int runs) {
    if (repeats < 1) throw std::invalid_argument("need at least one repeat");
    if (runs < 1) throw std::invalid_argument("need at least one timing run");
    std::vector<BenchRow> rows;
    for (int r = 0; r < repeats; ++r) {
        for (std::size_t n : sizes) {
            const SiteSet sites = generate(bench_spec(n, seed + static_cast<std::uint64_t>(r)));
            double best = std::numeric_limits<double>::infinity();
            Answer a;
            for (int k = 0; k < runs; ++k) {
                const auto t0 = std::chrono::steady_clock::now();
                a = run_algorithm(c, sites, seed);
                best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
            }
            rows.push_back({n, r, best, a.brief(c)});
            if (on_row) on_row(rows.back());
        }
    }
    return rows;
}

std::vector<double> bench_medians(const std::vector<BenchRow>& rows, const std::vector<std::size_t>& sizes) {
    std::vector<double> out;
    for (std::size_t n : sizes) {
        std::vector<double> t;
        for (const BenchRow& r : rows) {
            if (r.n == n) t.push_back(r.seconds);
        }
        if (t.empty()) {
            out.push_back(0.0);
            continue;
        }
        std::sort(t.begin(), t.end());
        out.push_back(t.size() % 2 ? t[t.size() / 2] : 0.5 * (t[t.size() / 2 - 1] + t[t.size() / 2]));
    }
    return out;
}

}  // namespace geogirth::cli
