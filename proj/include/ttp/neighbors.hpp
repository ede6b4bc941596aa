#pragma once

#include <vector>

#include "ttp/instance.hpp"

namespace ttp {

enum class NeighborBackend { delaunay, knn };

// Per-city candidate neighbor lists gating which reversal endpoints the tour
// search tries. Built once per instance, immutable afterwards.
struct CandidateLists {
    std::vector<std::vector<int>> neighbors;  // index 0 unused
    NeighborBackend backend_used = NeighborBackend::delaunay;
    bool degenerate_fallback = false;

    const std::vector<int>& of(int city) const { return neighbors[static_cast<size_t>(city)]; }
};

// Delaunay adjacency via incremental insertion; degenerate geometry
// (collinear or duplicate points, predicate failures) silently falls back to
// knn and flags it. k is only used by the knn backend (min(k, n-1) nearest,
// sorted by ascending distance).
CandidateLists build_candidates(const Instance& inst, NeighborBackend backend, int k = 8);

}  // namespace ttp
