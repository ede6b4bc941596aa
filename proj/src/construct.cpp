#include "ttp/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ttp/rng.hpp"

namespace ttp {

double tour_length(const Instance& inst, const Tour& tour) {
    const int n = tour.n();
    double len = 0;
    for (int k = 1; k <= n; ++k)
        len += inst.distance(tour.city_at(k), tour.city_at(k == n ? 1 : k + 1));
    return len;
}

namespace {

Tour greedy_nn_tour(const Instance& inst, Rng& rng) {
    const int n = inst.num_cities();
    std::vector<char> visited(static_cast<size_t>(n) + 1, 0);
    std::vector<int> order;
    order.reserve(static_cast<size_t>(n));
    order.push_back(1);
    visited[1] = 1;
    int current = 1;
    for (int step = 1; step < n; ++step) {
        // The three nearest unvisited cities; pick one at random.
        int best[3] = {0, 0, 0};
        double bd[3] = {std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity()};
        for (int c = 2; c <= n; ++c) {
            if (visited[static_cast<size_t>(c)]) continue;
            double d = inst.distance(current, c);
            for (int s = 0; s < 3; ++s) {
                if (d < bd[s]) {
                    for (int t = 2; t > s; --t) {
                        bd[t] = bd[t - 1];
                        best[t] = best[t - 1];
                    }
                    bd[s] = d;
                    best[s] = c;
                    break;
                }
            }
        }
        int options = 0;
        while (options < 3 && best[options] != 0) ++options;
        int chosen = best[rng.below(static_cast<std::uint64_t>(options))];
        order.push_back(chosen);
        visited[static_cast<size_t>(chosen)] = 1;
        current = chosen;
    }
    return Tour::from_order(order);
}

// First-improvement 2-opt descent on tour length using candidate lists.
void two_opt_descent(const Instance& inst, const CandidateLists& cands, Tour& tour) {
    const int n = tour.n();
    if (n < 4) return;
    bool improved = true;
    while (improved) {
        improved = false;
        for (int k1 = 2; k1 < n; ++k1) {
            int a_prev = tour.city_at(k1 - 1);
            int a = tour.city_at(k1);
            for (int b : cands.of(a)) {
                int k2 = tour.position_of(b);
                if (k2 <= k1 || k2 > n) continue;
                int b_next = tour.city_at(k2 == n ? 1 : k2 + 1);
                double delta = inst.distance(a_prev, a) + inst.distance(b, b_next) -
                               inst.distance(a_prev, b) - inst.distance(a, b_next);
                if (delta > 1e-12) {
                    tour.reverse_segment(k1, k2);
                    improved = true;
                    break;
                }
            }
        }
    }
}

Tour double_bridge(const Tour& tour, Rng& rng) {
    const int n = tour.n();
    if (n < 8) return tour;
    // Three distinct cut positions in 2..n splitting the tour into A|B|C|D,
    // reassembled as A|C|B|D.
    int cuts[3];
    cuts[0] = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 4)));
    cuts[1] = cuts[0] + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - cuts[0] - 2)));
    cuts[2] = cuts[1] + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - cuts[1] - 1)));
    std::vector<int> order;
    order.reserve(static_cast<size_t>(n));
    for (int k = 1; k < cuts[0]; ++k) order.push_back(tour.city_at(k));
    for (int k = cuts[1]; k < cuts[2]; ++k) order.push_back(tour.city_at(k));
    for (int k = cuts[0]; k < cuts[1]; ++k) order.push_back(tour.city_at(k));
    for (int k = cuts[2]; k <= n; ++k) order.push_back(tour.city_at(k));
    return Tour::from_order(order);
}

constexpr int kPerturbationRounds = 8;

}  // namespace

Tour initial_tour(const Instance& inst, const CandidateLists& cands, std::uint64_t seed) {
    Rng rng(seed);
    Tour best = greedy_nn_tour(inst, rng);
    two_opt_descent(inst, cands, best);
    double best_len = tour_length(inst, best);
    for (int round = 0; round < kPerturbationRounds; ++round) {
        Tour trial = double_bridge(best, rng);
        two_opt_descent(inst, cands, trial);
        double len = tour_length(inst, trial);
        if (len < best_len) {
            best = std::move(trial);
            best_len = len;
        }
    }
    return best;
}

Tour initial_tour(const Instance& inst, std::uint64_t seed) {
    CandidateLists cands = build_candidates(inst, NeighborBackend::knn, 8);
    return initial_tour(inst, cands, seed);
}

namespace {

// Remaining tour distance from each position to the end of the cyclic tour.
std::vector<double> distance_to_end(const Instance& inst, const Tour& tour) {
    const int n = tour.n();
    std::vector<double> rest(static_cast<size_t>(n) + 2, 0.0);
    rest[static_cast<size_t>(n)] = inst.distance(tour.city_at(n), tour.city_at(1));
    for (int k = n - 1; k >= 1; --k)
        rest[static_cast<size_t>(k)] =
            rest[static_cast<size_t>(k + 1)] + inst.distance(tour.city_at(k), tour.city_at(k + 1));
    return rest;
}

// Greedy fill in descending score order, keeping the best-scoring prefix of
// the fill rather than the full fill (adding items past the sweet spot only
// piles up renting cost).
double greedy_fill_gain(const Instance& inst, const Tour& tour, double alpha,
                        const std::vector<double>& rest, CollectionPlan& plan_out) {
    const int m = inst.num_items();
    std::vector<int> ids(static_cast<size_t>(m));
    std::iota(ids.begin(), ids.end(), 1);
    std::vector<double> score(static_cast<size_t>(m) + 1, 0.0);
    for (int j = 1; j <= m; ++j) {
        const ItemRecord& rec = inst.item(j);
        double dist = rest[static_cast<size_t>(tour.position_of(rec.city))];
        score[static_cast<size_t>(j)] = dist > 0 ? std::pow(rec.ratio, alpha) / dist
                                                 : std::numeric_limits<double>::infinity();
    }
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
        if (score[static_cast<size_t>(a)] != score[static_cast<size_t>(b)])
            return score[static_cast<size_t>(a)] > score[static_cast<size_t>(b)];
        return a < b;
    });

    CollectionPlan plan = CollectionPlan::empty(m);
    EvalState state = evaluate_full(inst, tour, plan);
    double best_gain = state.gain;
    int best_count = 0;
    std::vector<int> taken;
    taken.reserve(static_cast<size_t>(m));
    const int n = inst.num_cities();
    for (int j : ids) {
        double w = inst.item(j).weight;
        if (state.cum_weight[static_cast<size_t>(n)] + w > inst.capacity()) continue;
        apply_flip_incremental(inst, tour, plan, state, j);
        taken.push_back(j);
        if (state.gain > best_gain) {
            best_gain = state.gain;
            best_count = static_cast<int>(taken.size());
        }
    }
    plan_out = CollectionPlan::empty(m);
    for (int t = 0; t < best_count; ++t) plan_out.set(taken[static_cast<size_t>(t)], true);
    return best_gain;
}

}  // namespace

CollectionPlan pack_iterative(const Instance& inst, const Tour& tour) {
    const int m = inst.num_items();
    CollectionPlan empty = CollectionPlan::empty(m);
    if (m == 0) return empty;
    const double empty_gain = evaluate_full(inst, tour, empty).gain;
    std::vector<double> rest = distance_to_end(inst, tour);

    // Golden-section search over alpha in [0, 5], 20 gain evaluations.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0, hi = 5.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    CollectionPlan plan1, plan2;
    double g1 = greedy_fill_gain(inst, tour, x1, rest, plan1);
    double g2 = greedy_fill_gain(inst, tour, x2, rest, plan2);
    CollectionPlan best_plan = g1 >= g2 ? plan1 : plan2;
    double best_gain = std::max(g1, g2);
    for (int it = 0; it < 18; ++it) {
        if (g1 >= g2) {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - inv_phi * (hi - lo);
            g1 = greedy_fill_gain(inst, tour, x1, rest, plan1);
            if (g1 > best_gain) {
                best_gain = g1;
                best_plan = plan1;
            }
        } else {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + inv_phi * (hi - lo);
            g2 = greedy_fill_gain(inst, tour, x2, rest, plan2);
            if (g2 > best_gain) {
                best_gain = g2;
                best_plan = plan2;
            }
        }
    }
    if (best_gain < empty_gain) return empty;
    return best_plan;
}

CollectionPlan insertion_pack(const Instance& inst, const Tour& tour) {
    const int m = inst.num_items();
    CollectionPlan plan = CollectionPlan::empty(m);
    if (m == 0) return plan;

    EvalState state = evaluate_full(inst, tour, plan);
    const int n = inst.num_cities();
    while (true) {
        int best_item = 0;
        double best_gain = state.gain;
        for (int j = 1; j <= m; ++j) {
            if (plan.collected(j)) continue;
            if (state.cum_weight[static_cast<size_t>(n)] + inst.item(j).weight > inst.capacity())
                continue;
            // Probe in place and revert; cheaper than copying the state.
            double g = apply_flip_incremental(inst, tour, plan, state, j);
            apply_flip_incremental(inst, tour, plan, state, j);
            if (g > best_gain) {
                best_gain = g;
                best_item = j;
            }
        }
        if (best_item == 0) break;
        apply_flip_incremental(inst, tour, plan, state, best_item);
    }
    return plan;
}

CollectionPlan init_collection_plan(const Instance& inst, const Tour& tour) {
    CollectionPlan a = pack_iterative(inst, tour);
    CollectionPlan b = insertion_pack(inst, tour);
    double ga = evaluate_full(inst, tour, a).gain;
    double gb = evaluate_full(inst, tour, b).gain;
    return ga >= gb ? a : b;
}

}  // namespace ttp
