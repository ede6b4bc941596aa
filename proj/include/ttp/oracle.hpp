#pragma once

#include <cstdint>
#include <utility>

#include "ttp/eval.hpp"
#include "ttp/instance.hpp"

namespace ttp {

struct OracleResult {
    double gain = 0;
    Tour tour;
    CollectionPlan plan;
};

// Enumerates all tours fixing city 1 first and all capacity-feasible plans;
// returns the exact optimum. Throws TooLarge when (n-1)! * 2^m > 1e8.
OracleResult brute_force_optimum(const Instance& inst);

// Small seeded random instance: uniform coordinates in [0,100]^2, integer
// weights/profits in [1,50], capacity 50% of total weight, renting rate in
// [0.1, 5], CEIL_2D distances. Item cities uniform in 2..n.
Instance random_tiny_instance(std::uint64_t seed, int n, int m);

}  // namespace ttp
