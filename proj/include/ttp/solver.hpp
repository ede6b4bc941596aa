#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ttp/eval.hpp"
#include "ttp/instance.hpp"
#include "ttp/neighbors.hpp"
#include "ttp/tsp_search.hpp"

namespace ttp {

// The four solver variants: plain or guided segment reversal for the tour
// phase, standard or boundary-restricted bit-flip for the knapsack phase.
enum class Variant {
    two_opt_standard_flip,   // s1
    two_opt_boundary_flip,   // s2
    guided_standard_flip,    // s3
    guided_boundary_flip,    // s4 (the full solver)
};

const char* variant_name(Variant v);                   // "s1".."s4"
std::optional<Variant> parse_variant(const std::string& name);
bool variant_uses_substitution(Variant v);
bool variant_uses_boundary(Variant v);

struct SolverConfig {
    Variant variant = Variant::guided_boundary_flip;
    // Exactly one budget kind; wall-clock seconds is the default (600 s).
    std::optional<double> time_limit_s;
    std::optional<long> restarts;
    double alpha = 1e-4;
    std::uint64_t seed = 0;
    NeighborBackend neighbor_backend = NeighborBackend::delaunay;
    int knn_k = 8;
};

struct RestartTrace {
    double initial_gain = 0;
    double final_gain = 0;
    int inner_iterations = 0;
    int accepted_moves = 0;
    double mean_rel_rev_len_pct = 0;
    bool unique_tour = true;  // first occurrence of this initial tour
};

struct SolveResult {
    Tour best_tour;
    CollectionPlan best_plan;
    double best_gain = 0;
    std::vector<RestartTrace> trace;
    double elapsed_s = 0;
    long restarts_executed = 0;
    bool governed_by_time = false;
    long long accepted_moves = 0;
    double mean_rel_rev_len_pct = 0;  // over accepted moves of the whole run
    long unique_initial_tours = 0;
};

// Restart loop: construct a fresh tour and plan, then alternate the tour
// solver and the knapsack solver until the knapsack phase stops improving;
// keeps the best solution across restarts. Deterministic for a fixed
// (seed, restart budget, variant).
SolveResult coco_solve(const Instance& inst, const SolverConfig& config);

}  // namespace ttp
