#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "densecsp/generators.hpp"
#include "densecsp/io.hpp"
#include "densecsp/maxcut.hpp"
#include "densecsp/oracle.hpp"
#include "densecsp/rcsp.hpp"
#include "densecsp/report.hpp"

namespace densecsp {

/// Instance source for a sweep: "gnp:n=14,p=0.5", "planted:n=900,eps=0.1",
/// "rcsp:n=10,k=2,r=2,density=1,predicate=random-table",
/// "corrclust:n=8,p=0.5,plus=0.5,k=2" or "file:<path>".
struct GenSpec {
    std::string kind;
    std::map<std::string, std::string> params;
    std::string text;

    static GenSpec parse(const std::string& spec) {
        GenSpec g;
        g.text = spec;
        const auto colon = spec.find(':');
        g.kind = spec.substr(0, colon);
        if (colon != std::string::npos) {
            const auto rest = spec.substr(colon + 1);
            if (g.kind == "file") {
                g.params["path"] = rest;
            } else {
                std::istringstream ss(rest);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    const auto eq = item.find('=');
                    if (eq == std::string::npos)
                        throw std::invalid_argument("bad generator spec: " + spec);
                    g.params[item.substr(0, eq)] = item.substr(eq + 1);
                }
            }
        }
        return g;
    }

    double num(const std::string& key, std::optional<double> fallback = {}) const {
        const auto it = params.find(key);
        if (it == params.end()) {
            if (fallback) return *fallback;
            throw std::invalid_argument("generator spec missing " + key);
        }
        return std::stod(it->second);
    }

    std::string str(const std::string& key, const std::string& fallback) const {
        const auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    }
};

struct SweepInstance {
    std::optional<DenseGraph> graph;
    std::optional<CspInstance> csp;
    std::optional<std::uint64_t> planted_value;
};

inline SweepInstance make_sweep_instance(const GenSpec& spec, std::uint64_t seed) {
    SweepInstance si;
    auto rng = subrng(seed, 0x51);
    if (spec.kind == "gnp") {
        si.graph = gen_gnp(static_cast<std::size_t>(spec.num("n")),
                           spec.num("p", 0.5), rng);
    } else if (spec.kind == "planted") {
        auto planted = gen_planted_hard(static_cast<std::size_t>(spec.num("n")),
                                        spec.num("eps"), rng);
        si.planted_value = planted.planted_value;
        si.graph = std::move(planted.graph);
    } else if (spec.kind == "rcsp") {
        si.csp = gen_random_rcsp(
            static_cast<std::size_t>(spec.num("n")),
            static_cast<std::uint32_t>(spec.num("k", 2)),
            static_cast<std::uint32_t>(spec.num("r", 2)), spec.num("density", 1.0),
            parse_predicate(spec.str("predicate", "random-table")), rng);
    } else if (spec.kind == "corrclust") {
        const auto sg = gen_signed_gnp(static_cast<std::size_t>(spec.num("n")),
                                       spec.num("p", 0.5), spec.num("plus", 0.5), rng);
        si.csp = encode_correlation_clustering(
            sg, static_cast<std::uint32_t>(spec.num("k", 2)));
    } else if (spec.kind == "file") {
        const auto path = spec.params.at("path");
        if (sniff_format(path) == "graph")
            si.graph = load_graph(path);
        else
            si.csp = load_csp(path);
    } else {
        throw std::invalid_argument("unknown generator kind: " + spec.kind);
    }
    return si;
}

struct SweepOptions {
    GenSpec instances;
    std::vector<std::string> algorithms;  // maxcut | rcsp | rcsp-parallel | exact-greedy
    std::vector<double> epsilons;
    std::uint32_t seeds = 1;
    SolverConfig config;
    bool timing = false;           // wall_ms column stays 0 unless enabled
    std::string artifacts_dir;     // when set, emit instance + report files
    std::uint32_t row_workers = 1;
};

namespace detail {

inline std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

// generator specs carry commas; the CSV shows them with ';' so every line
// splits into exactly 13 fields
inline std::string csv_safe(std::string text) {
    for (auto& c : text)
        if (c == ',') c = ';';
    return text;
}

struct SweepRow {
    std::string algorithm;
    double epsilon = 0;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::uint32_t k = 2, r = 2;
    std::uint64_t value = 0;
    std::optional<double> opt;
    std::uint64_t probes = 0;
    std::uint64_t wall_ms = 0;
};

}  // namespace detail

inline RunReport run_sweep_algorithm(const std::string& algorithm,
                                     const SweepInstance& instance, double epsilon,
                                     const SolverConfig& base,
                                     std::uint64_t seed) {
    SolverConfig config = base;
    const auto t_start = std::chrono::steady_clock::now();
    RunReport rep;
    if (algorithm == "maxcut") {
        if (!instance.graph)
            throw std::invalid_argument("maxcut needs a graph instance");
        rep = solve_maxcut(*instance.graph, epsilon, config, seed);
    } else if (algorithm == "exact-greedy") {
        config.force_full_sampling = true;
        rep = instance.graph
                  ? solve_maxcut(*instance.graph, epsilon, config, seed)
                  : solve_rcsp(*instance.csp, epsilon, config, seed);
        rep.algorithm = "exact-greedy";
    } else if (algorithm == "rcsp" || algorithm == "rcsp-parallel") {
        const CspInstance* csp = nullptr;
        std::optional<CspInstance> encoded;
        if (instance.csp) {
            csp = &*instance.csp;
        } else {
            encoded = encode_maxcut_as_csp(*instance.graph);
            csp = &*encoded;
        }
        rep = algorithm == "rcsp" ? solve_rcsp(*csp, epsilon, config, seed)
                                  : solve_rcsp_parallel(*csp, epsilon, config, seed);
    } else {
        throw std::invalid_argument("unknown algorithm: " + algorithm);
    }
    rep.wall_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - t_start)
            .count());
    return rep;
}

/**
 * Batch experiment: one row per (algorithm, epsilon, seed) plus mean/stddev
 * summary rows per cell. The error column is OPT - value against the exact
 * oracle when the instance fits the budget, or against the planted value on
 * planted instances; otherwise opt is NA and error stays empty. Output row
 * order is fixed regardless of worker scheduling.
 */
inline void run_sweep(const SweepOptions& options, std::ostream& out) {
    out << "generator,algorithm,epsilon,seed,n,k,r,value,opt,error,error_norm,"
           "probes,wall_ms\n";

    struct Task {
        std::string algorithm;
        double epsilon;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (const auto& algorithm : options.algorithms)
        for (const auto epsilon : options.epsilons)
            for (std::uint64_t seed = 0; seed < options.seeds; ++seed)
                tasks.push_back({algorithm, epsilon, seed});

    std::vector<detail::SweepRow> rows(tasks.size());
    auto run_task = [&](std::size_t i) {
        const auto& task = tasks[i];
        const auto instance = make_sweep_instance(options.instances, task.seed);
        auto rep = run_sweep_algorithm(task.algorithm, instance, task.epsilon,
                                       options.config, task.seed);
        detail::SweepRow row;
        row.algorithm = task.algorithm;
        row.epsilon = task.epsilon;
        row.seed = task.seed;
        row.n = rep.n;
        row.k = rep.k;
        row.r = rep.r;
        row.value = rep.value;
        row.probes = rep.probes;
        row.wall_ms = options.timing ? rep.wall_ms : 0;
        if (instance.planted_value) {
            row.opt = static_cast<double>(*instance.planted_value);
        } else if (instance.graph &&
                   instance.graph->size() <= options.config.oracle_budget) {
            row.opt = static_cast<double>(
                brute_force_maxcut(*instance.graph, options.config.oracle_budget)
                    .second);
        } else if (instance.csp &&
                   static_cast<double>(instance.csp->num_variables()) *
                           std::log2(double(instance.csp->alphabet_size())) <=
                       options.config.oracle_budget) {
            row.opt = static_cast<double>(
                brute_force_csp(*instance.csp, options.config.oracle_budget).second);
        }
        if (!options.artifacts_dir.empty()) {
            namespace fs = std::filesystem;
            fs::create_directories(options.artifacts_dir);
            std::ostringstream stem;
            stem << task.algorithm << "_e" << detail::fmt_double(task.epsilon)
                 << "_s" << task.seed;
            const auto ipath =
                (fs::path(options.artifacts_dir) / (stem.str() + ".inst")).string();
            if (instance.graph)
                save_graph(*instance.graph, ipath);
            else
                save_csp(*instance.csp, ipath);
            rep.instance_path = ipath;
            rep.save(
                (fs::path(options.artifacts_dir) / (stem.str() + ".json")).string());
        }
        rows[i] = std::move(row);
    };

    if (options.row_workers <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::uint32_t w = 0; w < options.row_workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < tasks.size();
                     i = next.fetch_add(1))
                    run_task(i);
            });
        for (auto& t : pool) t.join();
    }

    auto emit = [&](const detail::SweepRow& row) {
        const double nr = std::pow(static_cast<double>(row.n), row.r);
        out << detail::csv_safe(options.instances.text) << "," << row.algorithm << ","
            << detail::fmt_double(row.epsilon) << "," << row.seed << "," << row.n
            << "," << row.k << "," << row.r << "," << row.value << ",";
        if (row.opt) {
            const double err = *row.opt - static_cast<double>(row.value);
            out << detail::fmt_double(*row.opt) << "," << detail::fmt_double(err)
                << "," << detail::fmt_double(err / nr);
        } else {
            out << "NA,,";
        }
        out << "," << row.probes << "," << row.wall_ms << "\n";
    };

    std::size_t i = 0;
    for (const auto& algorithm : options.algorithms) {
        for (const auto epsilon : options.epsilons) {
            const std::size_t begin = i;
            for (std::uint64_t seed = 0; seed < options.seeds; ++seed, ++i)
                emit(rows[i]);
            // mean/stddev summary per cell
            if (options.seeds > 0) {
                double sum_v = 0, sum_e = 0, sum_p = 0;
                double sq_v = 0, sq_e = 0;
                bool any_opt = true;
                const auto count = static_cast<double>(options.seeds);
                for (std::size_t j = begin; j < i; ++j) {
                    sum_v += static_cast<double>(rows[j].value);
                    sq_v += static_cast<double>(rows[j].value) *
                            static_cast<double>(rows[j].value);
                    sum_p += static_cast<double>(rows[j].probes);
                    if (rows[j].opt) {
                        const double err =
                            *rows[j].opt - static_cast<double>(rows[j].value);
                        sum_e += err;
                        sq_e += err * err;
                    } else {
                        any_opt = false;
                    }
                }
                const double mean_v = sum_v / count;
                const double var_v =
                    count > 1 ? std::max(0.0, (sq_v - count * mean_v * mean_v) /
                                                  (count - 1))
                              : 0.0;
                const auto& row0 = rows[begin];
                const double nr = std::pow(static_cast<double>(row0.n), row0.r);
                out << detail::csv_safe(options.instances.text) << "," << algorithm << ","
                    << detail::fmt_double(epsilon) << ",mean," << row0.n << ","
                    << row0.k << "," << row0.r << "," << detail::fmt_double(mean_v)
                    << ",";
                if (any_opt) {
                    const double mean_e = sum_e / count;
                    out << "," << detail::fmt_double(mean_e) << ","
                        << detail::fmt_double(mean_e / nr);
                } else {
                    out << "NA,,";
                }
                out << "," << detail::fmt_double(sum_p / count) << ",0\n";
                out << detail::csv_safe(options.instances.text) << "," << algorithm << ","
                    << detail::fmt_double(epsilon) << ",stddev," << row0.n << ","
                    << row0.k << "," << row0.r << ","
                    << detail::fmt_double(std::sqrt(var_v)) << ",";
                if (any_opt) {
                    const double mean_e = sum_e / count;
                    const double var_e =
                        count > 1 ? std::max(0.0, (sq_e - count * mean_e * mean_e) /
                                                      (count - 1))
                                  : 0.0;
                    out << "," << detail::fmt_double(std::sqrt(var_e)) << ",";
                } else {
                    out << "NA,,";
                }
                out << ",,0\n";
            }
        }
    }
}

}  // namespace densecsp
