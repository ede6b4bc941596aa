#include "ttp/kp_search.hpp"

#include <algorithm>

namespace ttp {

namespace {

void derive_bag(const ProfileIndex& profile, std::vector<int>& bag) {
    bag.clear();
    const int n = profile.n();
    for (int k = 1; k <= n; ++k) {
        int low = profile.low_collected[static_cast<size_t>(k)];
        if (low != 0 &&
            profile.p_seq[static_cast<size_t>(k)] == profile.prefix_min[static_cast<size_t>(k)])
            bag.push_back(low);
        int high = profile.high_uncollected[static_cast<size_t>(k)];
        if (high != 0 &&
            profile.q_seq[static_cast<size_t>(k)] == profile.postfix_max[static_cast<size_t>(k)])
            bag.push_back(high);
    }
}

// Flip `item` if it is capacity-feasible and strictly improves the gain.
// Returns true when the flip was kept.
bool try_flip(const Instance& inst, const Tour& tour, CollectionPlan& plan, EvalState& state,
              int item) {
    const int n = inst.num_cities();
    if (!plan.collected(item) &&
        state.cum_weight[static_cast<size_t>(n)] + inst.item(item).weight > inst.capacity())
        return false;
    const double gain_before = state.gain;
    apply_flip_incremental(inst, tour, plan, state, item);
    if (state.gain > gain_before) return true;
    apply_flip_incremental(inst, tour, plan, state, item);  // revert
    return false;
}

}  // namespace

BoundaryIndex boundary_items(const Instance& inst, const Tour& tour, const CollectionPlan& plan) {
    BoundaryIndex index;
    build_profile_into(inst, tour, plan, index.profile);
    derive_bag(index.profile, index.bag);
    index.mark_all_unchecked();
    return index;
}

void update_boundary_index(const Instance& inst, const Tour& tour, const CollectionPlan& plan,
                           int item, BoundaryIndex& index) {
    update_profile_after_flip(inst, tour, plan, item, index.profile);
    derive_bag(index.profile, index.bag);
}

KpSolverStats kp_solver(const Instance& inst, const Tour& tour, CollectionPlan& plan,
                        EvalState& state, BoundaryIndex& index, Rng& rng, Deadline deadline) {
    KpSolverStats stats;
    while (!index.all_checked()) {
        if (Clock::now() >= deadline) break;
        size_t pick = static_cast<size_t>(rng.below(index.unchecked.size()));
        int item = index.unchecked[pick];
        index.unchecked[pick] = index.unchecked.back();
        index.unchecked.pop_back();
        ++stats.probes;
        if (try_flip(inst, tour, plan, state, item)) {
            stats.accepted.push_back(item);
            update_boundary_index(inst, tour, plan, item, index);
            index.mark_all_unchecked();
        }
    }
    return stats;
}

KpSolverStats kp_solver_standard(const Instance& inst, const Tour& tour, CollectionPlan& plan,
                                 EvalState& state, Rng& rng, Deadline deadline) {
    KpSolverStats stats;
    const int m = inst.num_items();
    std::vector<int> unchecked(static_cast<size_t>(m));
    for (int j = 1; j <= m; ++j) unchecked[static_cast<size_t>(j - 1)] = j;
    while (!unchecked.empty()) {
        if (Clock::now() >= deadline) break;
        size_t pick = static_cast<size_t>(rng.below(unchecked.size()));
        int item = unchecked[pick];
        unchecked[pick] = unchecked.back();
        unchecked.pop_back();
        ++stats.probes;
        if (try_flip(inst, tour, plan, state, item)) {
            stats.accepted.push_back(item);
            unchecked.resize(static_cast<size_t>(m));
            for (int j = 1; j <= m; ++j) unchecked[static_cast<size_t>(j - 1)] = j;
        }
    }
    return stats;
}

}  // namespace ttp
