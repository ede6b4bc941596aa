#include "ttp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ttp/errors.hpp"
#include "ttp/rng.hpp"

namespace ttp {

OracleResult brute_force_optimum(const Instance& inst) {
    const int n = inst.num_cities();
    const int m = inst.num_items();

    double work = std::pow(2.0, m);
    for (int i = 2; i < n; ++i) work *= i;
    if (work > 1e8) throw TooLarge("brute force limited to (n-1)! * 2^m <= 1e8");

    // Capacity-feasible plans, enumerated once.
    std::vector<CollectionPlan> plans;
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        CollectionPlan plan = CollectionPlan::empty(m);
        double w = 0;
        for (int j = 1; j <= m; ++j)
            if (mask & (1ull << (j - 1))) {
                plan.set(j, true);
                w += inst.item(j).weight;
            }
        if (w <= inst.capacity()) plans.push_back(std::move(plan));
    }

    std::vector<int> rest(static_cast<size_t>(n > 1 ? n - 1 : 0));
    std::iota(rest.begin(), rest.end(), 2);

    OracleResult best;
    best.gain = -std::numeric_limits<double>::infinity();
    std::vector<int> order(static_cast<size_t>(n));
    order[0] = 1;
    do {
        std::copy(rest.begin(), rest.end(), order.begin() + 1);
        Tour tour = Tour::from_order(order);
        for (const CollectionPlan& plan : plans) {
            EvalState state = evaluate_full(inst, tour, plan);
            if (state.gain > best.gain) {
                best.gain = state.gain;
                best.tour = tour;
                best.plan = plan;
            }
        }
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

Instance random_tiny_instance(std::uint64_t seed, int n, int m) {
    Rng rng(seed);
    std::vector<Point> coords(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        coords[static_cast<size_t>(i)] = Point{rng.real(0.0, 100.0), rng.real(0.0, 100.0)};

    std::vector<ItemRecord> items(static_cast<size_t>(m));
    double total_weight = 0;
    for (int j = 0; j < m; ++j) {
        ItemRecord& rec = items[static_cast<size_t>(j)];
        rec.profit = static_cast<double>(rng.between(1, 50));
        rec.weight = static_cast<double>(rng.between(1, 50));
        rec.city = static_cast<int>(rng.between(2, n));
        total_weight += rec.weight;
    }
    double capacity = 0.5 * total_weight;
    double renting = rng.real(0.1, 5.0);
    return Instance::from_parts("tiny_" + std::to_string(seed), std::move(coords),
                                EdgeWeightKind::ceil_2d, std::move(items), capacity, renting,
                                0.1, 1.0);
}

}  // namespace ttp
