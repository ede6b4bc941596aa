#pragma once

#include <span>
#include <vector>

#include "ttp/instance.hpp"

namespace ttp {

// Cyclic tour as a permutation of 1..n with city 1 fixed at position 1.
// `order[k]` is the city visited at position k and `pos[city]` its inverse;
// index 0 is unused.
struct Tour {
    std::vector<int> order;
    std::vector<int> pos;

    static Tour identity(int n);
    static Tour from_order(const std::vector<int>& order_1based);

    int n() const { return static_cast<int>(order.size()) - 1; }
    int city_at(int k) const { return order[static_cast<size_t>(k)]; }
    int position_of(int city) const { return pos[static_cast<size_t>(city)]; }

    // Reverses positions k1..k2 and keeps pos consistent.
    void reverse_segment(int k1, int k2);
    bool is_valid() const;
};

// Collection plan p: bits[j] = 1 means item j is collected. bits[0] unused.
struct CollectionPlan {
    std::vector<std::uint8_t> bits;

    static CollectionPlan empty(int m) { return CollectionPlan{std::vector<std::uint8_t>(static_cast<size_t>(m) + 1, 0)}; }
    int m() const { return static_cast<int>(bits.size()) - 1; }
    bool collected(int j) const { return bits[static_cast<size_t>(j)] != 0; }
    void set(int j, bool v) { bits[static_cast<size_t>(j)] = v ? 1 : 0; }

    double total_weight(const Instance& inst) const;
    double total_profit(const Instance& inst) const;
};

// Cached per-position evaluation data enabling O(n) incremental updates.
//   city_weight[i]  : weight collected at city i
//   cum_weight[k]   : weight collected over tour positions 1..k
//   arrive_time[k]  : travel time to reach position k (k = n+1 is the return
//                     to city 1), so arrive_time[n+1] is the total time
struct EvalState {
    std::vector<double> city_weight;
    std::vector<double> cum_weight;
    std::vector<double> arrive_time;
    double total_profit = 0;
    double total_time = 0;
    double gain = 0;
};

// Full O(n+m) evaluation. Throws CapacityExceeded if the plan is overweight.
EvalState evaluate_full(const Instance& inst, const Tour& tour, const CollectionPlan& plan);
void evaluate_full_into(const Instance& inst, const Tour& tour, const CollectionPlan& plan,
                        EvalState& state);

// Flips item j in `plan` and updates `state` for positions at or after the
// item's city. Returns the new gain. Throws CapacityExceeded when collecting
// j would overflow the knapsack (plan and state are left unchanged).
double apply_flip_incremental(const Instance& inst, const Tour& tour, CollectionPlan& plan,
                              EvalState& state, int item);

// Reverses tour positions k1..k2 (1 < k1 < k2 <= n) and updates `state`.
// Returns the new gain.
double apply_reversal_incremental(const Instance& inst, Tour& tour, const CollectionPlan& plan,
                                  EvalState& state, int k1, int k2);

// Running minimum / maximum over a sequence. Throws EmptySequence.
std::vector<double> prefix_min_seq(std::span<const double> values);
std::vector<double> postfix_max_seq(std::span<const double> values);

// Per-position item profile of a solution. p(k)/q(k) are the lowest
// profitable collected and highest profitable uncollected item at the city in
// position k (0 = none). P/Q hold their ratios with defaults 1+max_ratio and
// 0, and prefix_min/postfix_max are the running envelopes over P and Q.
struct ProfileIndex {
    std::vector<int> low_collected;
    std::vector<int> high_uncollected;
    std::vector<double> p_seq;
    std::vector<double> q_seq;
    std::vector<double> prefix_min;
    std::vector<double> postfix_max;
    double p_default = 0;

    int n() const { return static_cast<int>(p_seq.size()) - 1; }
};

ProfileIndex build_profile(const Instance& inst, const Tour& tour, const CollectionPlan& plan);
void build_profile_into(const Instance& inst, const Tour& tour, const CollectionPlan& plan,
                        ProfileIndex& profile);

// Refreshes the profile after item `item` was flipped while the tour stayed
// fixed: recomputes the flipped city's entries, prefix_min at and after its
// position, and postfix_max at and before it. O(n).
void update_profile_after_flip(const Instance& inst, const Tour& tour,
                               const CollectionPlan& plan, int item, ProfileIndex& profile);

}  // namespace ttp
