#include "ttp/tsp_search.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "ttp/errors.hpp"

namespace ttp {

namespace {

void check_positions(int k1, int k2, int n) {
    if (!(1 < k1 && k1 < k2 && k2 <= n))
        throw BadPositions("move needs 1 < k1 < k2 <= n");
}

void reset_scratch(const Instance& inst, MoveScratch& s) {
    const size_t n1 = static_cast<size_t>(inst.num_cities()) + 1;
    const size_t m1 = static_cast<size_t>(inst.num_items()) + 1;
    if (s.city_weight_delta.size() != n1) s.city_weight_delta.assign(n1, 0.0);
    if (s.item_flipped.size() != m1) s.item_flipped.assign(m1, 0);
    for (int c : s.dirty_cities) s.city_weight_delta[static_cast<size_t>(c)] = 0.0;
    for (int j : s.touched_items) s.item_flipped[static_cast<size_t>(j)] = 0;
    s.dirty_cities.clear();
    s.touched_items.clear();
}

// Gain of the solution with positions k1..k2 reversed and the per-city weight
// deltas from `scratch` applied; nothing is mutated.
double reversed_gain(const Instance& inst, const Tour& tour, const EvalState& state,
                     int k1, int k2, double profit_delta, const MoveScratch& scratch) {
    const int n = inst.num_cities();
    double time = state.arrive_time[static_cast<size_t>(k1 - 1)];
    double load = state.cum_weight[static_cast<size_t>(k1 - 1)];
    int prev = tour.city_at(k1 - 1);
    for (int k = k1; k <= n; ++k) {
        int city = (k <= k2) ? tour.city_at(k1 + k2 - k) : tour.city_at(k);
        time += inst.distance(prev, city) / inst.speed_at(load);
        load += state.city_weight[static_cast<size_t>(city)] +
                scratch.city_weight_delta[static_cast<size_t>(city)];
        prev = city;
    }
    time += inst.distance(prev, tour.city_at(1)) / inst.speed_at(load);
    return state.total_profit + profit_delta - inst.renting_rate() * time;
}

}  // namespace

MoveCandidate two_opt(const Instance& inst, const Tour& tour, const CollectionPlan& plan,
                      const EvalState& state, int k1, int k2, MoveScratch& scratch) {
    (void)plan;
    check_positions(k1, k2, inst.num_cities());
    reset_scratch(inst, scratch);
    MoveCandidate move;
    move.k1 = k1;
    move.k2 = k2;
    move.kind = MoveKind::two_opt;
    move.gain_after = reversed_gain(inst, tour, state, k1, k2, 0.0, scratch);
    return move;
}

MoveCandidate two_opt(const Instance& inst, const Tour& tour, const CollectionPlan& plan,
                      const EvalState& state, int k1, int k2) {
    MoveScratch scratch;
    return two_opt(inst, tour, plan, state, k1, k2, scratch);
}

MoveCandidate profit_guided_move(const Instance& inst, const Tour& tour,
                                 const CollectionPlan& plan, const EvalState& state,
                                 const ProfileIndex& profile, int k1, int k2,
                                 MoveScratch& scratch) {
    check_positions(k1, k2, inst.num_cities());
    reset_scratch(inst, scratch);

    MoveCandidate move;
    move.k1 = k1;
    move.k2 = k2;
    move.kind = MoveKind::guided;

    // Forward pass: drop collected items that fall below the original
    // prefix-minimum at their new position. A prefix-minimum still at the
    // no-collected-item default imposes no floor, so it never drops anything.
    double freed = 0;
    double profit_delta = 0;
    for (int k = k1; k <= k2; ++k) {
        double floor_ratio = profile.prefix_min[static_cast<size_t>(k)];
        if (floor_ratio >= profile.p_default) continue;
        int city = tour.city_at(k1 + k2 - k);
        for (int j : inst.items_at(city)) {
            if (!plan.collected(j)) continue;
            const ItemRecord& rec = inst.item(j);
            if (rec.ratio < floor_ratio) {
                scratch.item_flipped[static_cast<size_t>(j)] = 1;
                scratch.touched_items.push_back(j);
                if (scratch.city_weight_delta[static_cast<size_t>(city)] == 0.0)
                    scratch.dirty_cities.push_back(city);
                scratch.city_weight_delta[static_cast<size_t>(city)] -= rec.weight;
                freed += rec.weight;
                profit_delta -= rec.profit;
            }
        }
    }

    // Backward pass: pick up uncollected items above the original
    // postfix-maximum at their new position, most profitable first, skipping
    // items that would push the added weight past the freed weight.
    double added = 0;
    if (freed > 0) {
        for (int k = k2; k >= k1; --k) {
            double ceiling_ratio = profile.postfix_max[static_cast<size_t>(k)];
            int city = tour.city_at(k1 + k2 - k);
            for (int j : inst.items_at(city)) {
                bool currently_collected =
                    plan.collected(j) != (scratch.item_flipped[static_cast<size_t>(j)] != 0);
                if (currently_collected) continue;
                const ItemRecord& rec = inst.item(j);
                if (rec.ratio <= ceiling_ratio) continue;
                if (added + rec.weight > freed) continue;
                scratch.item_flipped[static_cast<size_t>(j)] ^= 1;
                scratch.touched_items.push_back(j);
                if (scratch.city_weight_delta[static_cast<size_t>(city)] == 0.0)
                    scratch.dirty_cities.push_back(city);
                scratch.city_weight_delta[static_cast<size_t>(city)] += rec.weight;
                added += rec.weight;
                profit_delta += rec.profit;
            }
        }
    }

    // Net flips; an item dropped and re-collected cancels out.
    for (int j : scratch.touched_items) {
        if (!scratch.item_flipped[static_cast<size_t>(j)]) continue;
        if (plan.collected(j))
            move.uncollect.push_back(j);
        else
            move.collect.push_back(j);
    }
    if (move.uncollect.empty() && move.collect.empty()) move.kind = MoveKind::two_opt;

    move.gain_after = reversed_gain(inst, tour, state, k1, k2, profit_delta, scratch);
    return move;
}

MoveCandidate profit_guided_move(const Instance& inst, const Tour& tour,
                                 const CollectionPlan& plan, const EvalState& state,
                                 const ProfileIndex& profile, int k1, int k2) {
    MoveScratch scratch;
    return profit_guided_move(inst, tour, plan, state, profile, k1, k2, scratch);
}

void apply_move(const Instance& inst, Tour& tour, CollectionPlan& plan, EvalState& state,
                const MoveCandidate& move) {
    tour.reverse_segment(move.k1, move.k2);
    for (int j : move.uncollect) plan.set(j, false);
    for (int j : move.collect) plan.set(j, true);
    evaluate_full_into(inst, tour, plan, state);
}

TspSolverStats tsp_solver(const Instance& inst, Tour& tour, CollectionPlan& plan,
                          EvalState& state, const CandidateLists& candidates, double alpha,
                          bool substitution, Deadline deadline) {
    const int n = inst.num_cities();
    TspSolverStats stats;
    ProfileIndex profile;
    if (substitution) build_profile_into(inst, tour, plan, profile);
    MoveScratch scratch;
    MoveCandidate best;

    bool out_of_time = false;
    while (!out_of_time) {
        const double gain_before = state.gain;
        best.gain_after = state.gain;
        bool found = false;
        for (int k1 = 2; k1 <= n - 1 && !out_of_time; ++k1) {
            for (int neighbor : candidates.of(tour.city_at(k1))) {
                int k2 = tour.position_of(neighbor);
                if (k2 <= k1 || k2 > n) continue;
                if (Clock::now() >= deadline) {
                    out_of_time = true;
                    break;
                }
                ++stats.candidates_evaluated;
                MoveCandidate cand;
                if (substitution)
                    cand = profit_guided_move(inst, tour, plan, state, profile, k1, k2, scratch);
                else
                    cand = two_opt(inst, tour, plan, state, k1, k2, scratch);
                if (cand.gain_after > best.gain_after) {
                    best = std::move(cand);
                    found = true;
                }
            }
        }
        ++stats.sweeps;
        if (!found) break;

        apply_move(inst, tour, plan, state, best);
        assert(state.cum_weight[static_cast<size_t>(n)] <= inst.capacity() + 1e-9);
        ++stats.accepted_moves;
        stats.sum_rel_len_pct += (best.k2 - best.k1 + 1) * 100.0 / n;
        if (substitution) build_profile_into(inst, tour, plan, profile);

        if (!(state.gain - gain_before >= alpha * std::abs(gain_before))) break;
    }
    return stats;
}

}  // namespace ttp
