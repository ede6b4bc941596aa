#pragma once

#include <cstdint>

#include "ttp/eval.hpp"
#include "ttp/instance.hpp"
#include "ttp/neighbors.hpp"

namespace ttp {

// Cyclic tour length (position n back to city 1 included).
double tour_length(const Instance& inst, const Tour& tour);

// Randomized-greedy nearest-neighbour start (choice among the 3 nearest),
// 2-opt descent on the candidate lists, then a short double-bridge
// perturbation chain. Stochastic across seeds.
Tour initial_tour(const Instance& inst, const CandidateLists& candidates, std::uint64_t seed);
Tour initial_tour(const Instance& inst, std::uint64_t seed);

// Greedy packing by score ratio^alpha / distance-to-tour-end, with alpha
// picked by golden-section search on the exact gain. Never returns a plan
// worse than the empty one.
CollectionPlan pack_iterative(const Instance& inst, const Tour& tour);

// Repeatedly collects the single uncollected item with the largest positive
// exact gain delta until no item improves the gain.
CollectionPlan insertion_pack(const Instance& inst, const Tour& tour);

// The better-gain plan of pack_iterative and insertion_pack.
CollectionPlan init_collection_plan(const Instance& inst, const Tour& tour);

}  // namespace ttp
