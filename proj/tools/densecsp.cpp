#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "densecsp/generators.hpp"
#include "densecsp/io.hpp"
#include "densecsp/maxcut.hpp"
#include "densecsp/oracle.hpp"
#include "densecsp/rcsp.hpp"
#include "densecsp/report.hpp"
#include "densecsp/sweep.hpp"
#include "densecsp/verify.hpp"

namespace {

using namespace densecsp;

std::uint32_t default_threads() {
    if (const char* env = std::getenv("DENSECSP_THREADS")) {
        const auto t = std::strtoul(env, nullptr, 10);
        if (t >= 1) return static_cast<std::uint32_t>(t);
    }
    return 1;
}

void add_schedule_flags(CLI::App* cmd, SolverConfig& config) {
    cmd->add_option("--delta", config.delta, "schedule exponent in (0,1)");
    cmd->add_option("--c-schedule", config.c_schedule, "schedule constant");
    cmd->add_option("--c1", config.c1, "secondary sample constant");
    cmd->add_option("--max-seed-exponent", config.max_seed_exponent,
                    "cap on the seed enumeration budget");
    cmd->add_option("--threads", config.threads, "worker threads");
    cmd->add_flag("--single-branch", config.single_branch,
                  "run one seed partition instead of the full enumeration");
    cmd->add_flag("--independent-orders", config.independent_orders,
                  "fresh placement order per branch");
    cmd->add_flag("--shared-samples", config.shared_samples,
                  "reuse per-step samples across branches");
    cmd->add_flag("--full-sampling", config.force_full_sampling,
                  "sample the whole domain (exact greedy)");
}

void finish_report(RunReport& report, const std::string& input,
                   const std::string& json_out,
                   std::chrono::steady_clock::time_point t_start) {
    report.instance_path = input;
    report.wall_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - t_start)
            .count());
    if (!json_out.empty()) report.save(json_out);
    std::cout << report.to_json().dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sublinear additive-approximation solvers for dense r-CSPs"};
    app.require_subcommand(1);

    std::string input, json_out, out_path;
    double epsilon = 0.5;
    std::uint64_t seed = 0;
    SolverConfig config;
    config.threads = default_threads();

    // --- maxcut ---
    auto* maxcut = app.add_subcommand("maxcut", "subsampled greedy Max-Cut");
    maxcut->add_option("--input", input, "graph file")->required();
    maxcut->add_option("--epsilon", epsilon, "accuracy parameter")->required();
    maxcut->add_option("--seed", seed, "master seed");
    maxcut->add_option("--json", json_out, "write the report here");
    add_schedule_flags(maxcut, config);
    maxcut->callback([&] {
        const auto t_start = std::chrono::steady_clock::now();
        const auto graph = load_graph(input);
        auto report = solve_maxcut(graph, epsilon, config, seed);
        finish_report(report, input, json_out, t_start);
    });

    // --- rcsp ---
    auto* rcsp = app.add_subcommand("rcsp", "bootstrapped greedy r-CSP solver");
    bool parallel = false;
    rcsp->add_option("--input", input, "csp file")->required();
    rcsp->add_option("--epsilon", epsilon, "accuracy parameter")->required();
    rcsp->add_option("--seed", seed, "master seed");
    rcsp->add_option("--json", json_out, "write the report here");
    rcsp->add_option("--k-factor-exponent", config.k_factor_exponent,
                     "exponent of k in the schedule");
    rcsp->add_flag("--parallel", parallel, "superstep-parallel greedy pass");
    add_schedule_flags(rcsp, config);
    rcsp->callback([&] {
        const auto t_start = std::chrono::steady_clock::now();
        const auto instance = load_csp(input);
        auto report = parallel ? solve_rcsp_parallel(instance, epsilon, config, seed)
                               : solve_rcsp(instance, epsilon, config, seed);
        finish_report(report, input, json_out, t_start);
    });

    // --- oracle ---
    auto* oracle = app.add_subcommand("oracle", "exact brute-force solver");
    std::uint32_t budget = 26;
    oracle->add_option("--input", input, "graph or csp file")->required();
    oracle->add_option("--budget", budget, "enumeration budget in bits");
    oracle->add_option("--threads", config.threads, "worker threads");
    oracle->add_option("--json", json_out, "write the report here");
    oracle->callback([&] {
        const auto t_start = std::chrono::steady_clock::now();
        RunReport report;
        report.algorithm = "oracle";
        if (sniff_format(input) == "graph") {
            const auto graph = load_graph(input);
            auto [assignment, value] =
                brute_force_maxcut(graph, budget, config.threads);
            report.n = graph.size();
            report.value = value;
            report.assignment = std::move(assignment);
        } else {
            const auto instance = load_csp(input);
            auto [assignment, value] = brute_force_csp(instance, budget);
            report.n = instance.num_variables();
            report.k = instance.alphabet_size();
            report.r = instance.arity();
            report.value = value;
            report.assignment = std::move(assignment);
        }
        report.seed = 0;
        finish_report(report, input, json_out, t_start);
    });

    // --- gen ---
    auto* gen = app.add_subcommand("gen", "seeded instance generators");
    gen->require_subcommand(1);
    std::size_t gn = 100;
    double gp = 0.5, geps = 0.1, gdensity = 0.5, gplus = 0.5;
    std::uint32_t gk = 2, gr = 2;
    std::string predicate = "random-table";

    auto* gnp = gen->add_subcommand("gnp", "Erdos-Renyi G(n,p)");
    gnp->add_option("--n", gn, "vertices")->required();
    gnp->add_option("--p", gp, "edge probability");
    gnp->add_option("--seed", seed, "generator seed");
    gnp->add_option("--out", out_path, "output file")->required();
    gnp->callback([&] {
        auto rng = subrng(seed, 0x51);
        save_graph(gen_gnp(gn, gp, rng), out_path);
    });

    auto* planted = gen->add_subcommand("planted", "planted hard family");
    planted->add_option("--n", gn, "vertices, divisible by 9")->required();
    planted->add_option("--epsilon", geps, "bias parameter in (0,1/2)")->required();
    planted->add_option("--seed", seed, "generator seed");
    planted->add_option("--out", out_path, "output file")->required();
    planted->callback([&] {
        auto rng = subrng(seed, 0x51);
        const auto inst = gen_planted_hard(gn, geps, rng);
        save_graph(inst.graph, out_path);
        nlohmann::ordered_json meta;
        meta["parts"] = {{"v0", inst.part_v0}, {"v1", inst.part_v1},
                         {"v2", inst.part_v2}};
        meta["planted_sides"] = inst.planted_sides;
        meta["planted_value"] = inst.planted_value;
        std::ofstream metaout(out_path + ".meta.json");
        metaout << meta.dump(2) << "\n";
    });

    auto* grcsp = gen->add_subcommand("rcsp", "random r-CSP");
    grcsp->add_option("--n", gn, "variables")->required();
    grcsp->add_option("--k", gk, "alphabet size");
    grcsp->add_option("--r", gr, "arity");
    grcsp->add_option("--density", gdensity, "constraint density");
    grcsp->add_option("--predicate", predicate,
                      "parity | random-table | cut-generalization");
    grcsp->add_option("--seed", seed, "generator seed");
    grcsp->add_option("--out", out_path, "output file")->required();
    grcsp->callback([&] {
        auto rng = subrng(seed, 0x51);
        save_csp(gen_random_rcsp(gn, gk, gr, gdensity, parse_predicate(predicate),
                                 rng),
                 out_path);
    });

    auto* gcc = gen->add_subcommand("corrclust",
                                    "signed graph encoded as a k-ary 2-CSP");
    gcc->add_option("--n", gn, "vertices")->required();
    gcc->add_option("--p", gp, "pair probability");
    gcc->add_option("--plus", gplus, "probability of a + label");
    gcc->add_option("--k", gk, "cluster count");
    gcc->add_option("--seed", seed, "generator seed");
    gcc->add_option("--out", out_path, "output file")->required();
    gcc->callback([&] {
        auto rng = subrng(seed, 0x51);
        save_csp(encode_correlation_clustering(gen_signed_gnp(gn, gp, gplus, rng),
                                               gk),
                 out_path);
    });

    // --- sweep ---
    auto* sweep = app.add_subcommand("sweep", "error/probe sweeps to CSV");
    std::string gen_spec, algorithms_arg = "maxcut", epsilons_arg = "0.5";
    std::uint32_t seeds = 1;
    SweepOptions sweep_options;
    sweep->add_option("--gen", gen_spec,
                      "instance spec, e.g. gnp:n=14,p=0.5 or file:path")
        ->required();
    sweep->add_option("--algorithms", algorithms_arg,
                      "comma list: maxcut,rcsp,rcsp-parallel,exact-greedy");
    sweep->add_option("--epsilons", epsilons_arg, "comma list of epsilon values");
    sweep->add_option("--seeds", seeds, "seeds per cell");
    sweep->add_option("--out", out_path, "CSV path (default stdout)");
    sweep->add_option("--artifacts", sweep_options.artifacts_dir,
                      "emit per-row instance and report files here");
    sweep->add_option("--row-workers", sweep_options.row_workers,
                      "parallel sweep cells");
    sweep->add_flag("--timing", sweep_options.timing,
                    "fill the wall_ms column (off keeps output byte-stable)");
    add_schedule_flags(sweep, config);
    sweep->add_option("--k-factor-exponent", config.k_factor_exponent,
                      "exponent of k in the schedule");
    sweep->callback([&] {
        sweep_options.instances = GenSpec::parse(gen_spec);
        std::stringstream alg(algorithms_arg), eps(epsilons_arg);
        std::string item;
        while (std::getline(alg, item, ','))
            if (!item.empty()) sweep_options.algorithms.push_back(item);
        while (std::getline(eps, item, ','))
            if (!item.empty()) sweep_options.epsilons.push_back(std::stod(item));
        sweep_options.seeds = seeds;
        sweep_options.config = config;
        if (out_path.empty()) {
            run_sweep(sweep_options, std::cout);
        } else {
            std::ofstream out(out_path);
            if (!out) throw std::runtime_error("cannot open " + out_path);
            run_sweep(sweep_options, out);
        }
    });

    // --- verify ---
    auto* verify = app.add_subcommand("verify", "re-check a saved report");
    verify->add_option("report", input, "report JSON path")->required();
    verify->callback([&] {
        const auto failures = verify_report_file(input);
        if (failures.empty()) {
            std::cout << "pass\n";
        } else {
            for (const auto& f : failures) std::cerr << "fail: " << f << "\n";
            throw CLI::RuntimeError(2);
        }
    });

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
