#include "ttp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ttp/errors.hpp"
#include "ttp/oracle.hpp"
#include "ttp/rng.hpp"

namespace ttp {

double rdi(double g_mean, double g_min, double g_max) {
    if (!(g_min <= g_mean && g_mean <= g_max))
        throw OutOfRange("rdi needs g_min <= g_mean <= g_max");
    if (g_max == g_min) return 100.0;  // every run found the same gain
    return (g_mean - g_min) * 100.0 / (g_max - g_min);
}

RdiTable build_rdi_table(const std::vector<RunRecord>& runs) {
    RdiTable table;
    std::map<std::string, std::map<std::string, std::pair<double, long>>> sums;
    for (const RunRecord& run : runs) {
        auto& cell = sums[run.instance][run.variant];
        cell.first += run.gain;
        cell.second += 1;
        auto [min_it, min_inserted] = table.pooled_min.try_emplace(run.instance, run.gain);
        if (!min_inserted) min_it->second = std::min(min_it->second, run.gain);
        auto [max_it, max_inserted] = table.pooled_max.try_emplace(run.instance, run.gain);
        if (!max_inserted) max_it->second = std::max(max_it->second, run.gain);
    }
    for (const auto& [instance, by_solver] : sums) {
        for (const auto& [solver, cell] : by_solver) {
            double mean = cell.first / static_cast<double>(cell.second);
            table.mean_gain[instance][solver] = mean;
            double lo = table.pooled_min.at(instance);
            double hi = table.pooled_max.at(instance);
            // Means stay inside the pooled extremes up to rounding noise.
            mean = std::min(std::max(mean, lo), hi);
            table.rdi[instance][solver] = rdi(mean, lo, hi);
        }
    }
    return table;
}

namespace {

RunRecord run_one(const Instance& inst, const std::string& solver, const ExperimentPlan& plan,
                  std::uint64_t seed) {
    RunRecord rec;
    rec.instance = inst.name();
    rec.variant = solver;
    rec.seed = seed;
    if (solver == "oracle") {
        auto t0 = std::chrono::steady_clock::now();
        OracleResult opt = brute_force_optimum(inst);
        rec.gain = opt.gain;
        rec.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rec.restarts = 1;
        return rec;
    }
    SolverConfig config;
    config.variant = *parse_variant(solver);
    config.time_limit_s = plan.time_limit_s;
    config.restarts = plan.restarts;
    if (!config.time_limit_s && !config.restarts) config.restarts = 1;
    config.alpha = plan.alpha;
    config.seed = seed;
    config.neighbor_backend = plan.neighbor_backend;
    config.knn_k = plan.knn_k;
    SolveResult result = coco_solve(inst, config);

    // Gain re-verified from scratch at record time.
    rec.gain = evaluate_full(inst, result.best_tour, result.best_plan).gain;
    rec.time_s = result.elapsed_s;
    rec.restarts = result.restarts_executed;
    rec.accepted_moves = result.accepted_moves;
    rec.mean_rel_rev_len_pct = result.mean_rel_rev_len_pct;
    rec.unique_initial_tours = result.unique_initial_tours == result.restarts_executed;
    return rec;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentPlan& plan, int threads) {
    ExperimentResult out;
    for (const std::string& solver : plan.solvers)
        if (solver != "oracle" && !parse_variant(solver))
            throw Error("unknown solver in experiment plan: " + solver);

    struct Task {
        const Instance* inst;
        std::string solver;
        std::uint64_t seed;
        size_t slot;
    };

    std::vector<Instance> instances;
    instances.reserve(plan.instance_paths.size());
    std::vector<size_t> loaded;  // indices into plan.instance_paths
    for (size_t i = 0; i < plan.instance_paths.size(); ++i) {
        try {
            instances.push_back(Instance::parse_file(plan.instance_paths[i]));
            loaded.push_back(i);
        } catch (const std::exception& ex) {
            out.errors.push_back(plan.instance_paths[i] + ": " + ex.what());
        }
    }

    std::vector<Task> tasks;
    out.runs.resize(instances.size() * plan.solvers.size() * static_cast<size_t>(plan.runs_per));
    size_t slot = 0;
    for (size_t ii = 0; ii < instances.size(); ++ii)
        for (size_t si = 0; si < plan.solvers.size(); ++si)
            for (int r = 0; r < plan.runs_per; ++r) {
                std::uint64_t seed = mix_seed(plan.master_seed ^ mix_seed((loaded[ii] + 1) * 0x10001ull) ^
                                              mix_seed((si + 1) * 0x20003ull) ^
                                              mix_seed(static_cast<std::uint64_t>(r + 1) * 0x40009ull));
                tasks.push_back(Task{&instances[ii], plan.solvers[si], seed, slot++});
            }

    int worker_count = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (worker_count < 1) worker_count = 1;
    worker_count = std::min<int>(worker_count, static_cast<int>(tasks.size()));

    std::atomic<size_t> next{0};
    std::vector<std::string> task_errors(tasks.size());
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& task = tasks[i];
            try {
                out.runs[task.slot] = run_one(*task.inst, task.solver, plan, task.seed);
            } catch (const std::exception& ex) {
                task_errors[i] = task.inst->name() + "/" + task.solver + ": " + ex.what();
            }
        }
    };
    if (worker_count <= 1 || tasks.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(worker_count));
        for (int i = 0; i < worker_count; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    for (std::string& err : task_errors)
        if (!err.empty()) out.errors.push_back(std::move(err));

    // Failed cells left default-constructed are dropped.
    std::erase_if(out.runs, [](const RunRecord& r) { return r.instance.empty(); });
    out.table = build_rdi_table(out.runs);
    return out;
}

namespace {

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string runs_to_csv(const std::vector<RunRecord>& runs) {
    std::ostringstream out;
    out << "instance,variant,seed,gain,time_s,restarts,accepted_moves,mean_rel_rev_len_pct\n";
    for (const RunRecord& r : runs) {
        out << r.instance << ',' << r.variant << ',' << r.seed << ',' << format_real(r.gain)
            << ',' << format_real(r.time_s) << ',' << r.restarts << ',' << r.accepted_moves
            << ',' << format_real(r.mean_rel_rev_len_pct) << '\n';
    }
    return out.str();
}

std::vector<RunRecord> runs_from_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw Error("empty CSV");
    std::vector<RunRecord> runs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != 8) throw Error("bad CSV row: " + line);
        RunRecord r;
        r.instance = fields[0];
        r.variant = fields[1];
        r.seed = std::stoull(fields[2]);
        r.gain = std::stod(fields[3]);
        r.time_s = std::stod(fields[4]);
        r.restarts = std::stol(fields[5]);
        r.accepted_moves = std::stoll(fields[6]);
        r.mean_rel_rev_len_pct = std::stod(fields[7]);
        runs.push_back(std::move(r));
    }
    return runs;
}

namespace {

nlohmann::json record_to_json(const RunRecord& r) {
    return nlohmann::json{{"instance", r.instance},
                          {"variant", r.variant},
                          {"seed", r.seed},
                          {"gain", r.gain},
                          {"time_s", r.time_s},
                          {"restarts", r.restarts},
                          {"accepted_moves", r.accepted_moves},
                          {"mean_rel_rev_len_pct", r.mean_rel_rev_len_pct},
                          {"unique_initial_tours", r.unique_initial_tours}};
}

}  // namespace

std::string experiment_to_json(const ExperimentResult& result) {
    nlohmann::json doc;
    doc["runs"] = nlohmann::json::array();
    for (const RunRecord& r : result.runs) doc["runs"].push_back(record_to_json(r));
    nlohmann::json rdi_obj = nlohmann::json::object();
    for (const auto& [instance, by_solver] : result.table.rdi) {
        nlohmann::json row = nlohmann::json::object();
        for (const auto& [solver, value] : by_solver) row[solver] = value;
        rdi_obj[instance] = row;
    }
    doc["rdi"] = rdi_obj;
    if (!result.errors.empty()) doc["errors"] = result.errors;
    return doc.dump(2);
}

std::vector<RunRecord> runs_from_json(const std::string& json_text) {
    nlohmann::json doc = nlohmann::json::parse(json_text);
    std::vector<RunRecord> runs;
    for (const nlohmann::json& j : doc.at("runs")) {
        RunRecord r;
        r.instance = j.at("instance").get<std::string>();
        r.variant = j.at("variant").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.gain = j.at("gain").get<double>();
        r.time_s = j.at("time_s").get<double>();
        r.restarts = j.at("restarts").get<long>();
        r.accepted_moves = j.at("accepted_moves").get<long long>();
        r.mean_rel_rev_len_pct = j.at("mean_rel_rev_len_pct").get<double>();
        r.unique_initial_tours = j.at("unique_initial_tours").get<bool>();
        runs.push_back(std::move(r));
    }
    return runs;
}

}  // namespace ttp
