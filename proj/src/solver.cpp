#include "ttp/solver.hpp"

#include <cmath>
#include <limits>
#include <unordered_set>

#include "ttp/construct.hpp"
#include "ttp/errors.hpp"
#include "ttp/kp_search.hpp"
#include "ttp/rng.hpp"

namespace ttp {

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::two_opt_standard_flip: return "s1";
        case Variant::two_opt_boundary_flip: return "s2";
        case Variant::guided_standard_flip: return "s3";
        case Variant::guided_boundary_flip: return "s4";
    }
    return "?";
}

std::optional<Variant> parse_variant(const std::string& name) {
    if (name == "s1") return Variant::two_opt_standard_flip;
    if (name == "s2") return Variant::two_opt_boundary_flip;
    if (name == "s3") return Variant::guided_standard_flip;
    if (name == "s4") return Variant::guided_boundary_flip;
    return std::nullopt;
}

bool variant_uses_substitution(Variant v) {
    return v == Variant::guided_standard_flip || v == Variant::guided_boundary_flip;
}

bool variant_uses_boundary(Variant v) {
    return v == Variant::two_opt_boundary_flip || v == Variant::guided_boundary_flip;
}

namespace {

std::uint64_t tour_hash(const Tour& tour) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (int k = 1; k <= tour.n(); ++k) {
        h ^= static_cast<std::uint64_t>(tour.city_at(k));
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

SolveResult coco_solve(const Instance& inst, const SolverConfig& config) {
    if (inst.num_cities() < 2) throw InfeasibleInstance("need at least 2 cities");
    if (config.time_limit_s && config.restarts)
        throw Error("set exactly one of time_limit_s and restarts");
    if (config.alpha <= 0) throw Error("alpha must be positive");

    const bool time_budget = !config.restarts.has_value();
    const double limit_s = config.time_limit_s.value_or(600.0);
    const long max_restarts = config.restarts.value_or(0);

    const Clock::time_point start = Clock::now();
    const Deadline deadline =
        time_budget ? start + std::chrono::duration_cast<Clock::duration>(
                                  std::chrono::duration<double>(limit_s))
                    : no_deadline();

    CandidateLists cands =
        build_candidates(inst, config.neighbor_backend, config.knn_k);

    SolveResult result;
    result.governed_by_time = time_budget;
    result.best_gain = -std::numeric_limits<double>::infinity();

    std::unordered_set<std::uint64_t> seen_tours;
    Tour tour;
    CollectionPlan plan;
    EvalState state;

    for (long restart = 0;; ++restart) {
        // The first restart always runs so even a tiny budget yields a solution.
        if (time_budget && restart > 0 && Clock::now() >= deadline) break;
        if (!time_budget && restart >= max_restarts) break;

        const std::uint64_t restart_seed = mix_seed(config.seed ^ mix_seed(static_cast<std::uint64_t>(restart) + 1));
        tour = initial_tour(inst, cands, restart_seed);
        plan = init_collection_plan(inst, tour);
        evaluate_full_into(inst, tour, plan, state);

        RestartTrace trace;
        trace.initial_gain = state.gain;
        trace.unique_tour = seen_tours.insert(tour_hash(tour)).second;

        Rng kp_rng(mix_seed(restart_seed ^ 0x9e3779b97f4a7c15ull));
        double rel_len_sum = 0;
        int accepted = 0;

        while (true) {
            if (time_budget && Clock::now() >= deadline) break;
            TspSolverStats tsp_stats =
                tsp_solver(inst, tour, plan, state, cands, config.alpha,
                           variant_uses_substitution(config.variant), deadline);
            accepted += tsp_stats.accepted_moves;
            rel_len_sum += tsp_stats.sum_rel_len_pct;
            const double gain_tsp = state.gain;

            if (variant_uses_boundary(config.variant)) {
                BoundaryIndex index = boundary_items(inst, tour, plan);
                kp_solver(inst, tour, plan, state, index, kp_rng, deadline);
            } else {
                kp_solver_standard(inst, tour, plan, state, kp_rng, deadline);
            }
            ++trace.inner_iterations;

            // The inner loop ends when the knapsack phase makes no headway.
            if (std::abs(state.gain - gain_tsp) <= 1e-9 * std::max(1.0, std::abs(state.gain)))
                break;
        }

        trace.final_gain = state.gain;
        trace.accepted_moves = accepted;
        trace.mean_rel_rev_len_pct = accepted > 0 ? rel_len_sum / accepted : 0.0;
        result.trace.push_back(trace);
        result.accepted_moves += accepted;
        result.mean_rel_rev_len_pct += rel_len_sum;
        ++result.restarts_executed;
        if (trace.unique_tour) ++result.unique_initial_tours;

        if (state.gain > result.best_gain) {
            result.best_gain = state.gain;
            result.best_tour = tour;
            result.best_plan = plan;
        }
    }

    result.mean_rel_rev_len_pct =
        result.accepted_moves > 0 ? result.mean_rel_rev_len_pct / static_cast<double>(result.accepted_moves) : 0.0;
    result.elapsed_s =
        std::chrono::duration<double>(Clock::now() - start).count();
    return result;
}

}  // namespace ttp
