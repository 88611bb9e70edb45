#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace geogirth {

/// A problem instance for randomized optimization. `decide_less(t)` answers
/// whether the optimum is strictly below t (for t = +infinity: whether any
/// feasible solution exists), `split()` returns subproblems
/// whose minimum equals the optimum, and `base_solve()` handles small sizes.
/// An empty problem has optimum +infinity.
template <typename P>
concept OptProblem = requires(const P& p, double t) {
    { p.size() } -> std::convertible_to<std::size_t>;
    { p.decide_less(t) } -> std::same_as<bool>;
    { p.split() } -> std::same_as<std::vector<P>>;
    { p.base_solve() } -> std::convertible_to<double>;
};

/// Optional refinement: `decide_value(t)` returns the value of some feasible
/// solution when the optimum is below t. That value seeds the recursion into
/// the subproblem as its initial best, which prunes more siblings below.
template <typename P>
concept ValueDecision = requires(const P& p, double t) {
    { p.decide_value(t) } -> std::same_as<std::optional<double>>;
};

struct ChanConfig {
    double alpha = 0.75;
    std::size_t r = 4;
    std::size_t n0 = 12;
    std::uint64_t seed = 0;
};

struct ChanStats {
    std::size_t decide_calls = 0;
    std::size_t base_calls = 0;
    std::size_t max_depth = 0;
};

namespace detail {

template <OptProblem P>
double chan_solve(const P& p, double known, const ChanConfig& cfg, std::mt19937_64& rng, ChanStats& stats,
                  std::size_t depth) {
    stats.max_depth = std::max(stats.max_depth, depth);
    if (p.size() <= cfg.n0) {
        ++stats.base_calls;
        return std::min(known, static_cast<double>(p.base_solve()));
    }
    std::vector<P> subs = p.split();
    if (subs.size() != cfg.r) throw std::logic_error("optimize: split returned the wrong number of subproblems");
    const auto cap = static_cast<std::size_t>(std::ceil(cfg.alpha * static_cast<double>(p.size())));
    for (const P& q : subs) {
        if (q.size() > cap) throw std::logic_error("optimize: subproblem exceeds the alpha bound");
    }
    std::shuffle(subs.begin(), subs.end(), rng);

    double best = known;
    for (const P& q : subs) {
        // Asking at an infinite threshold too keeps infeasible subproblems
        // from being recursed into.
        ++stats.decide_calls;
        double seed = std::numeric_limits<double>::infinity();
        if constexpr (ValueDecision<P>) {
            const std::optional<double> v = q.decide_value(best);
            if (!v) continue;
            if (*v < best) seed = *v;
        } else {
            if (!q.decide_less(best)) continue;
        }
        const double v = chan_solve(q, seed, cfg, rng, stats, depth + 1);
        if (v < best) {
            best = v;
        } else if (std::isfinite(best) && v > best * (1.0 + 1e-9)) {
            throw std::logic_error("optimize: decision claimed an improvement that the subproblem does not have");
        }
    }
    return best;
}

}  // namespace detail

/// Computes the optimum exactly; randomness only affects running time.
template <OptProblem P>
double optimize(const P& problem, const ChanConfig& cfg = {}, ChanStats* stats = nullptr) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0) || cfg.r < 1) {
        throw std::invalid_argument("optimize: need 0 < alpha < 1 and r >= 1");
    }
    std::mt19937_64 rng(cfg.seed);
    ChanStats local;
    const double v = detail::chan_solve(problem, std::numeric_limits<double>::infinity(), cfg, rng, stats ? *stats : local, 0);
    return v;
}

/// Index subsets {i : i mod 4 != j} for j = 0..3. Every triple of indices
/// avoids at least one residue class, so it survives in some subset.
std::vector<std::vector<int>> four_way_split(std::size_t n);

}  // namespace geogirth
