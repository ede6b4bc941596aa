#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ttp/bench.hpp"
#include "ttp/errors.hpp"
#include "ttp/eval.hpp"
#include "ttp/instance.hpp"
#include "ttp/oracle.hpp"
#include "ttp/solver.hpp"

namespace {

std::uint64_t fnv1a(const void* data, size_t len, std::uint64_t h = 1469598103934665603ull) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::string solution_digest(const ttp::Tour& tour, const ttp::CollectionPlan& plan) {
    std::uint64_t h = fnv1a(tour.order.data(), tour.order.size() * sizeof(int));
    h = fnv1a(plan.bits.data(), plan.bits.size(), h);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct NeighborChoice {
    ttp::NeighborBackend backend = ttp::NeighborBackend::delaunay;
    int k = 8;
};

bool parse_neighbors(const std::string& text, NeighborChoice& out) {
    if (text == "delaunay") {
        out.backend = ttp::NeighborBackend::delaunay;
        return true;
    }
    if (text.rfind("knn:", 0) == 0) {
        try {
            out.k = std::stoi(text.substr(4));
        } catch (const std::exception&) {
            return false;
        }
        if (out.k < 1) return false;
        out.backend = ttp::NeighborBackend::knn;
        return true;
    }
    if (text == "knn") {
        out.backend = ttp::NeighborBackend::knn;
        return true;
    }
    return false;
}

int bench_threads() {
    if (const char* env = std::getenv("TTP_THREADS")) {
        try {
            int v = std::stoi(env);
            if (v >= 1) return v;
        } catch (const std::exception&) {
        }
    }
    return 0;  // hardware default
}

int cmd_solve(const std::string& instance_path, const std::string& variant_name,
              std::optional<double> time_limit, std::optional<long> restarts,
              std::uint64_t seed, double alpha, const std::string& neighbors,
              const std::string& out_format, const std::string& dump_path) {
    auto variant = ttp::parse_variant(variant_name);
    if (!variant) {
        std::cerr << "unknown variant: " << variant_name << " (expected s1..s4)\n";
        return 2;
    }
    NeighborChoice nb;
    if (!parse_neighbors(neighbors, nb)) {
        std::cerr << "bad --neighbors value: " << neighbors << "\n";
        return 2;
    }
    if (time_limit && restarts) {
        std::cerr << "--time-limit and --restarts are mutually exclusive\n";
        return 2;
    }

    ttp::Instance inst = ttp::Instance::parse_file(instance_path);
    ttp::SolverConfig config;
    config.variant = *variant;
    config.time_limit_s = time_limit;
    config.restarts = restarts;
    config.seed = seed;
    config.alpha = alpha;
    config.neighbor_backend = nb.backend;
    config.knn_k = nb.k;

    ttp::SolveResult result = ttp::coco_solve(inst, config);
    const std::string digest = solution_digest(result.best_tour, result.best_plan);

    if (out_format == "json") {
        // Deterministic document: no timing fields, so identical flags with a
        // restart budget give byte-identical output.
        nlohmann::json doc{{"instance", inst.name()},
                           {"variant", variant_name},
                           {"seed", seed},
                           {"gain", result.best_gain},
                           {"digest", digest},
                           {"restarts", result.restarts_executed},
                           {"accepted_moves", result.accepted_moves},
                           {"mean_rel_rev_len_pct", result.mean_rel_rev_len_pct},
                           {"unique_initial_tours", result.unique_initial_tours},
                           {"budget", result.governed_by_time ? "time" : "restarts"}};
        std::cout << doc.dump(2) << "\n";
    } else if (out_format == "csv") {
        std::cout << "instance,variant,seed,gain,digest,restarts\n"
                  << inst.name() << ',' << variant_name << ',' << seed << ',';
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", result.best_gain);
        std::cout << buf << ',' << digest << ',' << result.restarts_executed << "\n";
    } else {
        std::cout << "instance:  " << inst.name() << "\n"
                  << "variant:   " << variant_name << "\n"
                  << "gain:      " << result.best_gain << "\n"
                  << "digest:    " << digest << "\n"
                  << "restarts:  " << result.restarts_executed << "\n"
                  << "elapsed_s: " << result.elapsed_s << "\n";
    }

    if (!dump_path.empty()) {
        std::ofstream dump(dump_path);
        if (!dump) {
            std::cerr << "cannot write " << dump_path << "\n";
            return 2;
        }
        dump << "gain " << result.best_gain << "\n";
        dump << "tour";
        for (int k = 1; k <= result.best_tour.n(); ++k) dump << ' ' << result.best_tour.city_at(k);
        dump << "\nplan";
        for (int j = 1; j <= result.best_plan.m(); ++j)
            dump << ' ' << (result.best_plan.collected(j) ? 1 : 0);
        dump << "\n";
    }
    return 0;
}

int cmd_bench(const std::string& manifest_path, const std::string& out_prefix) {
    std::ifstream in(manifest_path);
    if (!in) {
        std::cerr << "cannot open manifest: " << manifest_path << "\n";
        return 2;
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& ex) {
        std::cerr << "bad manifest JSON: " << ex.what() << "\n";
        return 2;
    }

    ttp::ExperimentPlan plan;
    try {
        plan.instance_paths = doc.at("instances").get<std::vector<std::string>>();
        plan.solvers = doc.at("solvers").get<std::vector<std::string>>();
        plan.runs_per = doc.value("runs_per", 10);
        plan.master_seed = doc.value("master_seed", 1ull);
        plan.alpha = doc.value("alpha", 1e-4);
        if (doc.contains("budget")) {
            const nlohmann::json& budget = doc.at("budget");
            if (budget.contains("time_limit_s"))
                plan.time_limit_s = budget.at("time_limit_s").get<double>();
            if (budget.contains("restarts")) plan.restarts = budget.at("restarts").get<long>();
        }
        std::string neighbors = doc.value("neighbors", std::string("delaunay"));
        NeighborChoice nb;
        if (!parse_neighbors(neighbors, nb)) throw ttp::Error("bad neighbors value");
        plan.neighbor_backend = nb.backend;
        plan.knn_k = nb.k;
    } catch (const std::exception& ex) {
        std::cerr << "bad manifest: " << ex.what() << "\n";
        return 2;
    }
    if (plan.instance_paths.empty() || plan.solvers.empty() || plan.runs_per < 1) {
        std::cerr << "manifest needs at least one instance, one solver, and runs_per >= 1\n";
        return 2;
    }
    if (plan.time_limit_s && plan.restarts) {
        std::cerr << "manifest budget must set exactly one of time_limit_s and restarts\n";
        return 2;
    }

    ttp::ExperimentResult result = ttp::run_experiment(plan, bench_threads());

    std::ofstream csv(out_prefix + ".csv");
    csv << ttp::runs_to_csv(result.runs);
    std::ofstream json_out(out_prefix + ".json");
    json_out << ttp::experiment_to_json(result) << "\n";
    if (!csv || !json_out) {
        std::cerr << "cannot write outputs with prefix " << out_prefix << "\n";
        return 2;
    }

    std::cout << result.runs.size() << " runs -> " << out_prefix << ".csv, " << out_prefix
              << ".json\n";
    for (const std::string& err : result.errors) std::cerr << "warning: " << err << "\n";
    return 0;
}

int cmd_oracle(const std::string& instance_path) {
    ttp::Instance inst = ttp::Instance::parse_file(instance_path);
    ttp::OracleResult best = ttp::brute_force_optimum(inst);
    std::cout << "instance: " << inst.name() << "\n"
              << "optimal gain: " << best.gain << "\n"
              << "digest: " << solution_digest(best.tour, best.plan) << "\n"
              << "tour:";
    for (int k = 1; k <= best.tour.n(); ++k) std::cout << ' ' << best.tour.city_at(k);
    std::cout << "\nplan:";
    for (int j = 1; j <= best.plan.m(); ++j) std::cout << ' ' << (best.plan.collected(j) ? 1 : 0);
    std::cout << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Travelling thief problem solver and benchmark harness"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "Run one solver configuration on an instance");
    std::string instance_path, variant = "s4", neighbors = "delaunay", out_format = "text";
    std::string dump_path;
    std::optional<double> time_limit;
    std::optional<long> restarts;
    std::uint64_t seed = 0;
    double alpha = 1e-4;
    solve->add_option("--instance", instance_path, "path to a .ttp file")->required();
    solve->add_option("--variant", variant, "s1|s2|s3|s4 (default s4)");
    solve->add_option("--time-limit", time_limit, "wall-clock budget in seconds");
    solve->add_option("--restarts", restarts, "restart-count budget");
    solve->add_option("--seed", seed, "64-bit run seed");
    solve->add_option("--alpha", alpha, "relative improvement threshold");
    solve->add_option("--neighbors", neighbors, "delaunay | knn:K");
    solve->add_option("--out", out_format, "json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    solve->add_option("--dump-solution", dump_path, "write full tour and plan to a file");

    // bench
    auto* bench = app.add_subcommand("bench", "Run an experiment suite from a manifest");
    std::string manifest_path, out_prefix = "bench_results";
    bench->add_option("--manifest", manifest_path, "JSON manifest")->required();
    bench->add_option("--out-prefix", out_prefix, "output file prefix");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum for a tiny instance");
    std::string oracle_instance;
    oracle->add_option("--instance", oracle_instance, "path to a .ttp file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints message + usage to stderr
        return 2;
    }

    try {
        if (solve->parsed())
            return cmd_solve(instance_path, variant, time_limit, restarts, seed, alpha, neighbors,
                             out_format, dump_path);
        if (bench->parsed()) return cmd_bench(manifest_path, out_prefix);
        if (oracle->parsed()) return cmd_oracle(oracle_instance);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;
}
