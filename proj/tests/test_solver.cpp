#include <cmath>
#include <vector>

#include <doctest.h>

#include "test_util.hpp"
#include "ttp/construct.hpp"
#include "ttp/oracle.hpp"
#include "ttp/solver.hpp"

using namespace ttp;

TEST_CASE("variant names round-trip") {
    for (const char* name : {"s1", "s2", "s3", "s4"}) {
        auto v = parse_variant(name);
        REQUIRE(v.has_value());
        CHECK(variant_name(*v) == std::string(name));
    }
    CHECK_FALSE(parse_variant("s5").has_value());
    CHECK(variant_uses_substitution(Variant::guided_boundary_flip));
    CHECK(variant_uses_boundary(Variant::two_opt_boundary_flip));
    CHECK_FALSE(variant_uses_substitution(Variant::two_opt_standard_flip));
}

TEST_CASE("single restart with no items returns the best pure tour") {
    Instance inst = random_tiny_instance(50, 6, 0);
    SolverConfig config;
    config.restarts = 1;
    config.seed = 9;
    SolveResult result = coco_solve(inst, config);
    CHECK(result.restarts_executed == 1);
    CHECK(result.best_plan.m() == 0);
    EvalState state = evaluate_full(inst, result.best_tour, result.best_plan);
    CHECK(result.best_gain == doctest::Approx(state.gain));
    CHECK(result.best_gain ==
          doctest::Approx(-inst.renting_rate() * tour_length(inst, result.best_tour) / inst.v_max()));
}

TEST_CASE("solver stays between the initial plan gain and the exhaustive optimum") {
    int solved = 0;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        Instance inst = random_tiny_instance(seed * 131, 7, 7);
        OracleResult oracle = brute_force_optimum(inst);

        SolverConfig config;
        config.variant = Variant::guided_boundary_flip;
        config.restarts = 50;
        config.seed = seed;
        SolveResult result = coco_solve(inst, config);

        double best_initial = -1e300;
        for (const RestartTrace& t : result.trace) best_initial = std::max(best_initial, t.initial_gain);

        CHECK(result.best_gain <= oracle.gain + 1e-9);
        CHECK(result.best_gain >= best_initial - 1e-9);
        if (std::abs(result.best_gain - oracle.gain) <= 1e-6 * std::max(1.0, std::abs(oracle.gain)))
            ++solved;
    }
    CHECK(solved >= 6);  // 50 restarts normally nail these tiny instances
}

TEST_CASE("identical seed, budget and variant give identical results") {
    Instance inst = random_tiny_instance(2718, 9, 12);
    SolverConfig config;
    config.variant = Variant::guided_boundary_flip;
    config.restarts = 20;
    config.seed = 1234;
    SolveResult a = coco_solve(inst, config);
    SolveResult b = coco_solve(inst, config);
    CHECK(a.best_gain == b.best_gain);
    CHECK(a.best_tour.order == b.best_tour.order);
    CHECK(a.best_plan.bits == b.best_plan.bits);
    CHECK(a.restarts_executed == b.restarts_executed);
    CHECK(a.accepted_moves == b.accepted_moves);
    CHECK(a.unique_initial_tours == b.unique_initial_tours);
    REQUIRE(a.trace.size() == b.trace.size());
    for (size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].initial_gain == b.trace[i].initial_gain);
        CHECK(a.trace[i].final_gain == b.trace[i].final_gain);
        CHECK(a.trace[i].inner_iterations == b.trace[i].inner_iterations);
    }
}

TEST_CASE("per-restart traces are self-consistent") {
    Instance inst = random_tiny_instance(31415, 8, 10);
    SolverConfig config;
    config.restarts = 15;
    config.seed = 5;
    SolveResult result = coco_solve(inst, config);
    REQUIRE(result.trace.size() == 15);
    double best = -1e300;
    long uniques = 0;
    for (const RestartTrace& t : result.trace) {
        CHECK(t.final_gain >= t.initial_gain - 1e-9);
        CHECK(t.inner_iterations >= 1);
        best = std::max(best, t.final_gain);
        if (t.unique_tour) ++uniques;
    }
    CHECK(result.best_gain == doctest::Approx(best));
    CHECK(result.unique_initial_tours == uniques);
    CHECK_FALSE(result.governed_by_time);
}

TEST_CASE("config validation") {
    Instance inst = random_tiny_instance(1, 5, 4);
    SolverConfig config;
    config.restarts = 3;
    config.time_limit_s = 1.0;
    CHECK_THROWS(coco_solve(inst, config));
    config.time_limit_s.reset();
    config.alpha = 0;
    CHECK_THROWS(coco_solve(inst, config));
}

TEST_CASE("all four variants run and respect the oracle bound") {
    Instance inst = random_tiny_instance(999, 6, 6);
    OracleResult oracle = brute_force_optimum(inst);
    for (Variant v : {Variant::two_opt_standard_flip, Variant::two_opt_boundary_flip,
                      Variant::guided_standard_flip, Variant::guided_boundary_flip}) {
        SolverConfig config;
        config.variant = v;
        config.restarts = 10;
        config.seed = 7;
        SolveResult result = coco_solve(inst, config);
        CHECK(result.best_gain <= oracle.gain + 1e-9);
        CHECK(evaluate_full(inst, result.best_tour, result.best_plan).gain ==
              doctest::Approx(result.best_gain));
    }
}

TEST_CASE("wall-clock budget is honored with modest overshoot") {
    Instance inst = Instance::parse_file(ttp_test::data_path("eil76_like_c.ttp"));
    SolverConfig config;
    config.variant = Variant::guided_boundary_flip;
    config.time_limit_s = 1.0;
    config.seed = 3;
    auto t0 = Clock::now();
    SolveResult result = coco_solve(inst, config);
    double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
    CHECK(result.governed_by_time);
    CHECK(result.restarts_executed >= 1);
    CHECK(elapsed < 5.0);  // budget plus bounded slack
}
