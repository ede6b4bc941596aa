#include "ttp/eval.hpp"

#include <algorithm>
#include <cmath>

#include "ttp/errors.hpp"

namespace ttp {

Tour Tour::identity(int n) {
    Tour t;
    t.order.resize(static_cast<size_t>(n) + 1);
    t.pos.resize(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        t.order[static_cast<size_t>(k)] = k;
        t.pos[static_cast<size_t>(k)] = k;
    }
    return t;
}

Tour Tour::from_order(const std::vector<int>& order_1based) {
    const int n = static_cast<int>(order_1based.size());
    Tour t;
    t.order.assign(static_cast<size_t>(n) + 1, 0);
    t.pos.assign(static_cast<size_t>(n) + 1, 0);
    for (int k = 1; k <= n; ++k) {
        int city = order_1based[static_cast<size_t>(k - 1)];
        t.order[static_cast<size_t>(k)] = city;
        t.pos[static_cast<size_t>(city)] = k;
    }
    return t;
}

void Tour::reverse_segment(int k1, int k2) {
    while (k1 < k2) {
        std::swap(order[static_cast<size_t>(k1)], order[static_cast<size_t>(k2)]);
        pos[static_cast<size_t>(order[static_cast<size_t>(k1)])] = k1;
        pos[static_cast<size_t>(order[static_cast<size_t>(k2)])] = k2;
        ++k1;
        --k2;
    }
}

bool Tour::is_valid() const {
    const int nn = n();
    if (nn < 1 || order[1] != 1) return false;
    std::vector<char> seen(static_cast<size_t>(nn) + 1, 0);
    for (int k = 1; k <= nn; ++k) {
        int city = order[static_cast<size_t>(k)];
        if (city < 1 || city > nn || seen[static_cast<size_t>(city)]) return false;
        seen[static_cast<size_t>(city)] = 1;
        if (pos[static_cast<size_t>(city)] != k) return false;
    }
    return true;
}

double CollectionPlan::total_weight(const Instance& inst) const {
    double w = 0;
    for (int j = 1; j <= m(); ++j)
        if (collected(j)) w += inst.item(j).weight;
    return w;
}

double CollectionPlan::total_profit(const Instance& inst) const {
    double p = 0;
    for (int j = 1; j <= m(); ++j)
        if (collected(j)) p += inst.item(j).profit;
    return p;
}

void evaluate_full_into(const Instance& inst, const Tour& tour, const CollectionPlan& plan,
                        EvalState& state) {
    const int n = inst.num_cities();
    const int m = inst.num_items();

    state.city_weight.assign(static_cast<size_t>(n) + 1, 0.0);
    state.cum_weight.assign(static_cast<size_t>(n) + 1, 0.0);
    state.arrive_time.assign(static_cast<size_t>(n) + 2, 0.0);

    double profit = 0;
    for (int j = 1; j <= m; ++j) {
        if (!plan.collected(j)) continue;
        const ItemRecord& rec = inst.item(j);
        state.city_weight[static_cast<size_t>(rec.city)] += rec.weight;
        profit += rec.profit;
    }

    double load = 0;
    double time = 0;
    for (int k = 1; k <= n; ++k) {
        int city = tour.city_at(k);
        load += state.city_weight[static_cast<size_t>(city)];
        state.cum_weight[static_cast<size_t>(k)] = load;
        int next = (k == n) ? tour.city_at(1) : tour.city_at(k + 1);
        time += inst.distance(city, next) / inst.speed_at(load);
        state.arrive_time[static_cast<size_t>(k + 1)] = time;
    }
    if (load > inst.capacity()) throw CapacityExceeded("plan weight exceeds knapsack capacity");

    state.total_profit = profit;
    state.total_time = time;
    state.gain = profit - inst.renting_rate() * time;
}

EvalState evaluate_full(const Instance& inst, const Tour& tour, const CollectionPlan& plan) {
    EvalState state;
    evaluate_full_into(inst, tour, plan, state);
    return state;
}

namespace {

// Recomputes arrive_time for positions k0+1..n+1 given cum_weight is current.
void rebuild_times_from(const Instance& inst, const Tour& tour, EvalState& state, int k0) {
    const int n = inst.num_cities();
    double time = state.arrive_time[static_cast<size_t>(k0)];
    for (int k = k0; k <= n; ++k) {
        int city = tour.city_at(k);
        int next = (k == n) ? tour.city_at(1) : tour.city_at(k + 1);
        time += inst.distance(city, next) / inst.speed_at(state.cum_weight[static_cast<size_t>(k)]);
        state.arrive_time[static_cast<size_t>(k + 1)] = time;
    }
    state.total_time = time;
    state.gain = state.total_profit - inst.renting_rate() * time;
}

}  // namespace

double apply_flip_incremental(const Instance& inst, const Tour& tour, CollectionPlan& plan,
                              EvalState& state, int item) {
    const int n = inst.num_cities();
    const ItemRecord& rec = inst.item(item);
    const bool collecting = !plan.collected(item);
    const double dw = collecting ? rec.weight : -rec.weight;

    if (collecting && state.cum_weight[static_cast<size_t>(n)] + rec.weight > inst.capacity())
        throw CapacityExceeded("flip would exceed knapsack capacity");

    plan.set(item, collecting);
    state.city_weight[static_cast<size_t>(rec.city)] += dw;
    state.total_profit += collecting ? rec.profit : -rec.profit;

    const int k0 = tour.position_of(rec.city);
    for (int k = k0; k <= n; ++k) state.cum_weight[static_cast<size_t>(k)] += dw;
    rebuild_times_from(inst, tour, state, k0);
    return state.gain;
}

double apply_reversal_incremental(const Instance& inst, Tour& tour, const CollectionPlan& plan,
                                  EvalState& state, int k1, int k2) {
    (void)plan;
    const int n = inst.num_cities();
    if (!(1 < k1 && k1 < k2 && k2 <= n))
        throw BadPositions("segment reversal needs 1 < k1 < k2 <= n");

    tour.reverse_segment(k1, k2);

    double load = state.cum_weight[static_cast<size_t>(k1 - 1)];
    for (int k = k1; k <= k2; ++k) {
        load += state.city_weight[static_cast<size_t>(tour.city_at(k))];
        state.cum_weight[static_cast<size_t>(k)] = load;
    }
    rebuild_times_from(inst, tour, state, k1 - 1);
    return state.gain;
}

std::vector<double> prefix_min_seq(std::span<const double> values) {
    if (values.empty()) throw EmptySequence("prefix_min_seq needs a nonempty sequence");
    std::vector<double> out(values.size());
    out[0] = values[0];
    for (size_t k = 1; k < values.size(); ++k) out[k] = std::min(out[k - 1], values[k]);
    return out;
}

std::vector<double> postfix_max_seq(std::span<const double> values) {
    if (values.empty()) throw EmptySequence("postfix_max_seq needs a nonempty sequence");
    std::vector<double> out(values.size());
    out[values.size() - 1] = values[values.size() - 1];
    for (size_t k = values.size() - 1; k-- > 0;) out[k] = std::max(values[k], out[k + 1]);
    return out;
}

namespace {

// Lowest profitable collected / highest profitable uncollected item at one
// city. City item lists are pre-sorted by descending profitability.
void city_profile_entries(const Instance& inst, const CollectionPlan& plan, int city,
                          int& low_collected, int& high_uncollected) {
    low_collected = 0;
    high_uncollected = 0;
    const std::vector<int>& list = inst.items_at(city);
    for (auto it = list.rbegin(); it != list.rend(); ++it) {
        if (plan.collected(*it)) {
            low_collected = *it;
            break;
        }
    }
    for (int j : list) {
        if (!plan.collected(j)) {
            high_uncollected = j;
            break;
        }
    }
}

}  // namespace

void build_profile_into(const Instance& inst, const Tour& tour, const CollectionPlan& plan,
                        ProfileIndex& profile) {
    const int n = inst.num_cities();
    profile.p_default = 1.0 + inst.max_ratio();
    profile.low_collected.assign(static_cast<size_t>(n) + 1, 0);
    profile.high_uncollected.assign(static_cast<size_t>(n) + 1, 0);
    profile.p_seq.assign(static_cast<size_t>(n) + 1, 0.0);
    profile.q_seq.assign(static_cast<size_t>(n) + 1, 0.0);
    profile.prefix_min.assign(static_cast<size_t>(n) + 1, 0.0);
    profile.postfix_max.assign(static_cast<size_t>(n) + 1, 0.0);

    for (int k = 1; k <= n; ++k) {
        int low, high;
        city_profile_entries(inst, plan, tour.city_at(k), low, high);
        profile.low_collected[static_cast<size_t>(k)] = low;
        profile.high_uncollected[static_cast<size_t>(k)] = high;
        profile.p_seq[static_cast<size_t>(k)] = low ? inst.item(low).ratio : profile.p_default;
        profile.q_seq[static_cast<size_t>(k)] = high ? inst.item(high).ratio : 0.0;
    }

    profile.prefix_min[1] = profile.p_seq[1];
    for (int k = 2; k <= n; ++k)
        profile.prefix_min[static_cast<size_t>(k)] =
            std::min(profile.prefix_min[static_cast<size_t>(k - 1)], profile.p_seq[static_cast<size_t>(k)]);
    profile.postfix_max[static_cast<size_t>(n)] = profile.q_seq[static_cast<size_t>(n)];
    for (int k = n - 1; k >= 1; --k)
        profile.postfix_max[static_cast<size_t>(k)] =
            std::max(profile.q_seq[static_cast<size_t>(k)], profile.postfix_max[static_cast<size_t>(k + 1)]);
}

ProfileIndex build_profile(const Instance& inst, const Tour& tour, const CollectionPlan& plan) {
    ProfileIndex profile;
    build_profile_into(inst, tour, plan, profile);
    return profile;
}

void update_profile_after_flip(const Instance& inst, const Tour& tour,
                               const CollectionPlan& plan, int item, ProfileIndex& profile) {
    const int n = inst.num_cities();
    const int city = inst.item(item).city;
    const int k0 = tour.position_of(city);

    int low, high;
    city_profile_entries(inst, plan, city, low, high);
    profile.low_collected[static_cast<size_t>(k0)] = low;
    profile.high_uncollected[static_cast<size_t>(k0)] = high;
    profile.p_seq[static_cast<size_t>(k0)] = low ? inst.item(low).ratio : profile.p_default;
    profile.q_seq[static_cast<size_t>(k0)] = high ? inst.item(high).ratio : 0.0;

    // k0 >= 2 because city 1 holds no items and stays at position 1.
    for (int k = k0; k <= n; ++k)
        profile.prefix_min[static_cast<size_t>(k)] = std::min(
            profile.prefix_min[static_cast<size_t>(k - 1)], profile.p_seq[static_cast<size_t>(k)]);
    if (k0 == n) profile.postfix_max[static_cast<size_t>(n)] = profile.q_seq[static_cast<size_t>(n)];
    for (int k = std::min(k0, n - 1); k >= 1; --k)
        profile.postfix_max[static_cast<size_t>(k)] = std::max(
            profile.q_seq[static_cast<size_t>(k)], profile.postfix_max[static_cast<size_t>(k + 1)]);
}

}  // namespace ttp
