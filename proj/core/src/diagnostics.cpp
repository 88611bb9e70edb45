#include "geogirth/diagnostics.hpp"

namespace geogirth {

StructuralStats& structural_stats() {
    static StructuralStats stats;
    return stats;
}

void reset_structural_stats() {
    StructuralStats& s = structural_stats();
    s.max_large_per_cell = 0;
    s.large_per_cell_violations = 0;
    s.max_neighborhood_cells = 0;
    s.neighborhood_violations = 0;
    s.max_small_indegree = 0;
    s.small_indegree_violations = 0;
    s.planar_cutoff_checks = 0;
    s.planar_cutoff_violations = 0;
}

}  // namespace geogirth
