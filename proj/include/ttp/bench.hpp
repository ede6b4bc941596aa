#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ttp/neighbors.hpp"
#include "ttp/solver.hpp"

namespace ttp {

struct RunRecord {
    std::string instance;
    std::string variant;  // "s1".."s4" or "oracle"
    std::uint64_t seed = 0;
    double gain = 0;
    double time_s = 0;
    long restarts = 0;
    long long accepted_moves = 0;
    double mean_rel_rev_len_pct = 0;
    bool unique_initial_tours = true;  // all restarts used distinct initial tours
};

// Relative deviation index. Requires g_min <= g_mean <= g_max (OutOfRange
// otherwise); returns 100 when g_max equals g_min.
double rdi(double g_mean, double g_min, double g_max);

struct RdiTable {
    // instance -> solver -> mean gain / RDI; pooled extremes per instance.
    std::map<std::string, std::map<std::string, double>> mean_gain;
    std::map<std::string, std::map<std::string, double>> rdi;
    std::map<std::string, double> pooled_min;
    std::map<std::string, double> pooled_max;
};

struct ExperimentPlan {
    std::vector<std::string> instance_paths;
    std::vector<std::string> solvers;  // "s1".."s4" and/or "oracle"
    int runs_per = 10;
    // Exactly one of the two; mirrors SolverConfig.
    std::optional<double> time_limit_s;
    std::optional<long> restarts;
    double alpha = 1e-4;
    NeighborBackend neighbor_backend = NeighborBackend::delaunay;
    int knn_k = 8;
    std::uint64_t master_seed = 1;
};

struct ExperimentResult {
    std::vector<RunRecord> runs;
    RdiTable table;
    std::vector<std::string> errors;  // per-instance failures; experiment continues
};

// Runs every (instance, solver, run) cell on a bounded worker pool. Seeds
// derive deterministically from the master seed; pooled min/max for RDI span
// all solvers of the same experiment. `threads` <= 0 picks the hardware
// default.
ExperimentResult run_experiment(const ExperimentPlan& plan, int threads = 0);

// CSV with the fixed column set; gains use 17 significant digits.
std::string runs_to_csv(const std::vector<RunRecord>& runs);
std::vector<RunRecord> runs_from_csv(const std::string& csv);

// JSON document with the run array and the per-instance RDI object.
std::string experiment_to_json(const ExperimentResult& result);
std::vector<RunRecord> runs_from_json(const std::string& json_text);

// Computes the RDI table from a set of finished runs.
RdiTable build_rdi_table(const std::vector<RunRecord>& runs);

}  // namespace ttp
