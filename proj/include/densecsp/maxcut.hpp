#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "densecsp/config.hpp"
#include "densecsp/csp.hpp"
#include "densecsp/graph.hpp"
#include "densecsp/oracle.hpp"
#include "densecsp/report.hpp"
#include "densecsp/rng.hpp"
#include "densecsp/schedule.hpp"

namespace densecsp {

/// Query accounting local to one solver run. Algorithm probes and
/// verification lookups are never mixed.
struct ProbeCounters {
    std::uint64_t probes = 0;
    std::uint64_t audit_probes = 0;
};

/**
 * Partial cut under construction. `current_value` is kept exactly equal to
 * the cut induced on the placed set via an incremental audit (charged to
 * audit_probes, not to the algorithm's query budget).
 */
struct GreedyState {
    std::vector<std::uint32_t> placed;
    Assignment assignment;
    std::uint64_t current_value = 0;
    VertexMask side_mask[2];

    explicit GreedyState(std::size_t n)
        : assignment(n, 2), side_mask{VertexMask(n), VertexMask(n)} {}

    void commit(const DenseGraph& graph, std::uint32_t v, std::int32_t side,
                ProbeCounters& counters) {
        current_value += side_mask[1 - side].intersect_count(graph.row(v));
        counters.audit_probes += placed.size();
        assignment.values[v] = side;
        side_mask[side].set(v);
        placed.push_back(v);
    }
};

/// One greedy decision: probe a without-replacement sample of the placed
/// set and take the side with fewer sampled neighbors (ties toward side 0).
/// Every sampled pair costs one probe.
inline std::int32_t greedy_place_vertex(const DenseGraph& graph,
                                        const GreedyState& state, std::uint32_t v,
                                        std::uint64_t s, Rng& rng,
                                        ProbeCounters& counters) {
    if (state.placed.empty()) throw std::runtime_error("empty sample domain");
    const std::uint64_t count = std::min<std::uint64_t>(s, state.placed.size());
    const auto picks = sample_without_replacement(state.placed.size(), count, rng);
    std::uint64_t neighbors[2] = {0, 0};
    for (const auto idx : picks) {
        const auto u = state.placed[static_cast<std::size_t>(idx)];
        ++counters.probes;
        if (graph.query(v, u)) ++neighbors[state.assignment.values[u]];
    }
    return neighbors[0] > neighbors[1] ? 1 : 0;
}

struct BranchResult {
    Assignment assignment;
    std::uint64_t value = 0;
    ProbeCounters counters;
};

/// Runs one seed branch: fix the seed partition (one side bit per seed
/// vertex), then place the remaining vertices in the given order with the
/// scheduled sample sizes.
inline BranchResult run_seed_branch(const DenseGraph& graph,
                                    std::span<const std::uint32_t> seed_vertices,
                                    std::span<const std::uint8_t> seed_partition,
                                    std::span<const std::uint32_t> order,
                                    const SampleSchedule& schedule, Rng& rng,
                                    bool force_full_sampling = false) {
    if (seed_partition.size() != seed_vertices.size())
        throw std::invalid_argument("seed partition size mismatch");
    GreedyState state(graph.size());
    ProbeCounters counters;
    for (std::size_t i = 0; i < seed_vertices.size(); ++i)
        state.commit(graph, seed_vertices[i],
                     static_cast<std::int32_t>(seed_partition[i]), counters);
    std::uint64_t t = seed_vertices.size();
    for (const auto v : order) {
        ++t;
        const std::uint64_t s = force_full_sampling ? state.placed.size()
                                                    : schedule.sample_size(t);
        const auto side = greedy_place_vertex(graph, state, v, s, rng, counters);
        state.commit(graph, v, side, counters);
    }
    return {std::move(state.assignment), state.current_value, counters};
}

/// Seed sample and shared placement order, derived from the master seed.
struct MaxcutDraw {
    std::vector<std::uint32_t> seed_vertices;
    std::vector<std::uint32_t> order;
};

inline MaxcutDraw draw_seed_and_order(std::size_t n, std::uint64_t t0,
                                      std::uint64_t master_seed) {
    auto rng = subrng(master_seed, stream::maxcut_draw);
    MaxcutDraw draw;
    std::vector<bool> in_seed(n, false);
    for (const auto idx : sample_without_replacement(n, t0, rng)) {
        draw.seed_vertices.push_back(static_cast<std::uint32_t>(idx));
        in_seed[static_cast<std::size_t>(idx)] = true;
    }
    std::vector<std::uint32_t> rest;
    rest.reserve(n - t0);
    for (std::uint32_t v = 0; v < n; ++v)
        if (!in_seed[v]) rest.push_back(v);
    shuffle_in_place(rest, rng);
    draw.order = std::move(rest);
    return draw;
}

/**
 * The subsampled greedy scheme for Max-Cut: enumerate all 2^t0 partitions
 * of a t0-vertex seed sample, extend each by greedy placement over a shared
 * random order, and output the branch with the best exact cut. When
 * t0 >= n the guarantee is vacuous and the exact oracle takes over.
 */
inline RunReport solve_maxcut(const DenseGraph& graph, double epsilon,
                              const SolverConfig& config,
                              std::uint64_t master_seed) {
    config.validate();
    const std::size_t n = graph.size();
    if (n < 1) throw std::invalid_argument("empty graph");
    const auto params =
        SeedParams::make(epsilon, 2, config.c1, config.max_seed_exponent);

    RunReport report;
    report.algorithm = "maxcut";
    report.n = n;
    report.k = 2;
    report.r = 2;
    report.epsilon = epsilon;
    report.delta = config.delta;
    report.c_schedule = config.c_schedule;
    report.c1 = config.c1;
    report.seed = master_seed;

    if (params.t0 >= n) {
        auto [assignment, value] =
            brute_force_maxcut(graph, config.oracle_budget, config.threads);
        report.value = value;
        report.assignment = std::move(assignment);
        report.t0 = n;
        report.branches = 0;
        report.fallback = true;
        return report;
    }
    if (!config.single_branch && !params.enumeration_feasible(2))
        throw std::runtime_error(
            "seed enumeration budget exceeded: raise epsilon or max-seed-exponent");

    const std::uint64_t t0 = params.t0;
    const std::uint64_t branch_total =
        config.single_branch ? 1 : (std::uint64_t{1} << t0);
    const auto draw = draw_seed_and_order(n, t0, master_seed);

    SampleSchedule schedule;
    schedule.n = n;
    schedule.epsilon = epsilon;
    schedule.k = 2;
    schedule.delta = config.delta;
    schedule.c_schedule = config.c_schedule;
    schedule.variant = ScheduleVariant::maxcut;

    std::vector<BranchResult> results(branch_total);
    auto run_branch = [&](std::uint64_t b) {
        std::vector<std::uint8_t> partition(t0);
        if (config.single_branch) {
            auto prng = subrng(master_seed, stream::maxcut_single_partition);
            for (auto& side : partition) side = prng.bit() ? 1 : 0;
        } else {
            for (std::size_t i = 0; i < t0; ++i)
                partition[i] = static_cast<std::uint8_t>((b >> i) & 1);
        }
        std::vector<std::uint32_t> own_order;
        std::span<const std::uint32_t> order(draw.order);
        if (config.independent_orders) {
            auto orng = subrng(master_seed, stream::maxcut_order, b);
            own_order = draw.order;
            shuffle_in_place(own_order, orng);
            order = own_order;
        }
        auto srng = subrng(master_seed, stream::maxcut_samples,
                           config.shared_samples ? 0 : b);
        results[b] = run_seed_branch(graph, draw.seed_vertices, partition, order,
                                     schedule, srng, config.force_full_sampling);
    };

    if (config.threads <= 1 || branch_total == 1) {
        for (std::uint64_t b = 0; b < branch_total; ++b) run_branch(b);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::uint64_t> next{0};
        for (std::uint32_t w = 0; w < config.threads; ++w)
            pool.emplace_back([&] {
                for (std::uint64_t b = next.fetch_add(1); b < branch_total;
                     b = next.fetch_add(1))
                    run_branch(b);
            });
        for (auto& t : pool) t.join();
    }

    std::uint64_t best = 0;
    for (std::uint64_t b = 1; b < branch_total; ++b)
        if (results[b].value > results[best].value) best = b;

    for (const auto& r : results) {
        report.probes += r.counters.probes;
        report.audit_probes += r.counters.audit_probes;
    }
    // final recount of the winning branch
    const auto audited = evaluate_cut(graph, results[best].assignment);
    report.audit_probes += static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (audited != results[best].value)
        throw std::logic_error("incremental cut audit mismatch");

    report.value = audited;
    report.assignment = std::move(results[best].assignment);
    report.branches = branch_total;
    report.t0 = t0;
    report.fallback = false;
    return report;
}

}  // namespace densecsp
