#pragma once

#include <vector>

#include "ttp/eval.hpp"
#include "ttp/instance.hpp"
#include "ttp/rng.hpp"
#include "ttp/tsp_search.hpp"

namespace ttp {

// Bag of boundary items: collected items realizing the prefix-minimum at
// their position, and uncollected items realizing the postfix-maximum.
struct BoundaryIndex {
    ProfileIndex profile;
    std::vector<int> bag;
    std::vector<int> unchecked;  // worklist; an item is checked once removed

    bool all_checked() const { return unchecked.empty(); }
    void mark_all_unchecked() { unchecked = bag; }
};

// Builds the bag in O(n) scans from a fresh profile.
BoundaryIndex boundary_items(const Instance& inst, const Tour& tour, const CollectionPlan& plan);

// Refreshes profile and bag after item `item` was flipped. O(n).
void update_boundary_index(const Instance& inst, const Tour& tour, const CollectionPlan& plan,
                           int item, BoundaryIndex& index);

struct KpSolverStats {
    long long probes = 0;
    std::vector<int> accepted;  // accepted flips in order
};

// Hill-climbing bit-flip over the boundary bag: flip a random unchecked bag
// item; keep the flip only if the gain strictly improves, then refresh the
// bag and mark everything unchecked. Capacity-violating flips count as
// non-improving. Terminates when all bag items are checked or the deadline
// hits.
KpSolverStats kp_solver(const Instance& inst, const Tour& tour, CollectionPlan& plan,
                        EvalState& state, BoundaryIndex& index, Rng& rng, Deadline deadline);

// Same protocol over all m items (no boundary restriction).
KpSolverStats kp_solver_standard(const Instance& inst, const Tour& tour, CollectionPlan& plan,
                                 EvalState& state, Rng& rng, Deadline deadline);

}  // namespace ttp
