#pragma once

#include <atomic>
#include <cstdint>

namespace geogirth {

/// Process-wide counters for the structural bounds the algorithms rely on.
/// Every bound is checked at runtime; a violation increments the matching
/// counter and the caller raises std::logic_error.
struct StructuralStats {
    std::atomic<std::int64_t> max_large_per_cell{0};
    std::atomic<std::int64_t> large_per_cell_violations{0};

    std::atomic<std::int64_t> max_neighborhood_cells{0};
    std::atomic<std::int64_t> neighborhood_violations{0};

    std::atomic<std::int64_t> max_small_indegree{0};
    std::atomic<std::int64_t> small_indegree_violations{0};

    std::atomic<std::int64_t> planar_cutoff_checks{0};
    std::atomic<std::int64_t> planar_cutoff_violations{0};

};

StructuralStats& structural_stats();
void reset_structural_stats();

/// Raises the stored maximum to `value` if it is larger.
inline void record_max(std::atomic<std::int64_t>& slot, std::int64_t value) {
    std::int64_t cur = slot.load(std::memory_order_relaxed);
    while (value > cur && !slot.compare_exchange_weak(cur, value, std::memory_order_relaxed)) {
    }
}

}  // namespace geogirth
