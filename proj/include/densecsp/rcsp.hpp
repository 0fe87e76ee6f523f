#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "densecsp/config.hpp"
#include "densecsp/csp.hpp"
#include "densecsp/maxcut.hpp"
#include "densecsp/oracle.hpp"
#include "densecsp/report.hpp"
#include "densecsp/rng.hpp"
#include "densecsp/schedule.hpp"

namespace densecsp {

/// Head variable being placed plus an ordered tail of already-placed,
/// distinct variables.
struct CriticalTuple {
    std::uint32_t head = 0;
    std::vector<std::uint32_t> tail;
};

/// Number of ordered distinct (r-1)-tuples over a placed set of the given
/// size: (t-1)(t-2)...(t-r+1); zero when fewer than r-1 variables are placed.
inline std::uint64_t count_critical_tuples(std::uint64_t placed_count,
                                           std::uint32_t r) {
    if (r < 2) throw std::invalid_argument("arity must be >= 2");
    if (placed_count < r - 1) return 0;
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < r - 1; ++i) {
        const std::uint64_t factor = placed_count - i;
        if (count > (std::uint64_t{1} << 62) / factor)
            throw std::overflow_error("critical tuple count overflow");
        count *= factor;
    }
    return count;
}

/**
 * Uniform sampler over the ordered distinct tails drawn from a placed pool.
 * Tuple ranks are sampled without replacement and each rank is decoded in
 * O(r) by selecting positions from a shrinking pool (swaps undone after
 * every tuple, so decoding is a fixed bijection from ranks to tails).
 */
class CriticalTupleSampler {
public:
    CriticalTupleSampler(std::span<const std::uint32_t> placed, std::uint32_t r)
        : pool_(placed.begin(), placed.end()), r_(r),
          count_(count_critical_tuples(placed.size(), r)), swaps_(r - 1) {}

    std::uint64_t tuple_count() const { return count_; }

    // min(s, count) tails; empty when no critical tuples exist.
    std::vector<std::vector<std::uint32_t>> sample(std::uint64_t s, Rng& rng) {
        std::vector<std::vector<std::uint32_t>> tails;
        if (count_ == 0 || s == 0) return tails;
        const std::uint64_t take = std::min(s, count_);
        const auto ranks = sample_without_replacement(count_, take, rng);
        tails.reserve(static_cast<std::size_t>(take));
        for (const auto rank : ranks) tails.push_back(decode(rank));
        return tails;
    }

    std::vector<std::uint32_t> decode(std::uint64_t rank) {
        const std::size_t m = pool_.size();
        const std::size_t len = r_ - 1;
        std::vector<std::uint32_t> tail(len);
        // mixed-radix digits: position j picks among m-j remaining entries
        std::uint64_t base = count_ / m;
        for (std::size_t j = 0; j < len; ++j) {
            const auto digit = static_cast<std::size_t>(rank / base);
            rank %= base;
            if (j + 1 < len) base /= (m - j - 1);
            tail[j] = pool_[digit];
            std::swap(pool_[digit], pool_[m - 1 - j]);
            swaps_[j] = digit;
        }
        // undo, restoring the canonical pool order
        for (std::size_t j = len; j-- > 0;)
            std::swap(pool_[swaps_[j]], pool_[m - 1 - j]);
        return tail;
    }

private:
    std::vector<std::uint32_t> pool_;
    std::uint32_t r_;
    std::uint64_t count_;
    std::vector<std::size_t> swaps_;
};

inline std::vector<CriticalTuple> sample_critical_tuples(
    std::span<const std::uint32_t> placed, std::uint32_t r, std::uint32_t head,
    std::uint64_t s, Rng& rng) {
    CriticalTupleSampler sampler(placed, r);
    std::vector<CriticalTuple> tuples;
    for (auto& tail : sampler.sample(s, rng))
        tuples.push_back({head, std::move(tail)});
    return tuples;
}

/**
 * One greedy decision for a variable: sample critical tuples from the
 * placed pool, look up each tuple's constraint (one probe per lookup, hit
 * or miss), and return the value maximizing the sampled satisfied count.
 * Tail permutations of the same stored constraint are tallied per sample;
 * ties break toward the smallest value. No critical tuples means value 0.
 */
inline std::int32_t greedy_place_variable(const CspInstance& instance,
                                          std::span<const std::uint32_t> placed,
                                          const Assignment& assignment,
                                          std::uint32_t v, std::uint64_t s,
                                          Rng& rng, ProbeCounters& counters) {
    const auto k = instance.alphabet_size();
    const auto r = instance.arity();
    CriticalTupleSampler sampler(placed, r);
    if (sampler.tuple_count() == 0) return 0;
    std::vector<std::uint64_t> score(k, 0);
    VarTuple key;
    const std::uint64_t take = std::min(s, sampler.tuple_count());
    const auto ranks = sample_without_replacement(sampler.tuple_count(), take, rng);
    std::uint64_t lookups = 0;
    for (const auto rank : ranks) {
        const auto tail = sampler.decode(rank);
        ++lookups;
        accumulate_candidate_scores(instance, assignment, v, tail, key, score,
                                    /*counted=*/true);
    }
    counters.probes += lookups;
    std::uint32_t best = 0;
    for (std::uint32_t value = 1; value < k; ++value)
        if (score[value] > score[best]) best = value;
    return static_cast<std::int32_t>(best);
}

/// Superstep boundaries: start at t1 and grow by a (1+eps) factor (ceil),
/// capped at n. Passing growth such that each step adds one variable makes
/// the superstep engine coincide with the sequential greedy pass.
inline std::vector<std::uint64_t> superstep_boundaries(std::uint64_t t1,
                                                       std::uint64_t n,
                                                       double eps) {
    std::vector<std::uint64_t> bounds;
    std::uint64_t b = t1;
    while (b < n) {
        std::uint64_t next = ceil_stable((1.0 + eps) * static_cast<double>(b));
        if (next <= b) next = b + 1;
        b = std::min(next, n);
        bounds.push_back(b);
    }
    return bounds;
}

inline std::vector<std::uint64_t> singleton_boundaries(std::uint64_t t1,
                                                       std::uint64_t n) {
    std::vector<std::uint64_t> bounds;
    for (std::uint64_t b = t1 + 1; b <= n; ++b) bounds.push_back(b);
    return bounds;
}

/**
 * The greedy pass over V \ S1 in supersteps. Variables of one superstep are
 * placed independently (splittable across workers) against the frozen
 * prefix committed by the previous superstep; each uses the schedule at its
 * own placement rank and an RNG substream keyed by that rank, so the result
 * is independent of the worker count. With singleton boundaries this is
 * exactly the sequential pass.
 */
inline void run_greedy_pass(const CspInstance& instance, Assignment& assignment,
                            std::vector<std::uint32_t>& placed,
                            std::span<const std::uint32_t> rest_order,
                            const SampleSchedule& schedule,
                            std::span<const std::uint64_t> boundaries,
                            std::uint32_t threads, std::uint64_t master_seed,
                            ProbeCounters& counters, bool force_full_sampling) {
    const std::uint64_t t1 = placed.size();
    std::uint64_t frozen = t1;
    std::vector<std::int32_t> decisions(rest_order.size());
    std::vector<ProbeCounters> per_rank(rest_order.size());

    for (const auto boundary : boundaries) {
        const std::uint64_t begin = frozen;  // ranks (begin, boundary] get placed
        const auto frozen_view = std::span<const std::uint32_t>(placed)
                                     .subspan(0, static_cast<std::size_t>(frozen));
        auto place_rank = [&](std::uint64_t t) {
            const auto i = static_cast<std::size_t>(t - 1 - t1);
            const auto v = rest_order[i];
            const std::uint64_t s =
                force_full_sampling
                    ? count_critical_tuples(frozen_view.size(), instance.arity())
                    : schedule.sample_size(t);
            auto rng = subrng(master_seed, stream::rcsp_phase2_samples, t);
            decisions[i] = greedy_place_variable(instance, frozen_view, assignment,
                                                 v, s, rng, per_rank[i]);
        };
        if (threads <= 1 || boundary - begin <= 1) {
            for (std::uint64_t t = begin + 1; t <= boundary; ++t) place_rank(t);
        } else {
            std::atomic<std::uint64_t> next{begin + 1};
            std::vector<std::thread> pool;
            for (std::uint32_t w = 0; w < threads; ++w)
                pool.emplace_back([&] {
                    for (std::uint64_t t = next.fetch_add(1); t <= boundary;
                         t = next.fetch_add(1))
                        place_rank(t);
                });
            for (auto& th : pool) th.join();
        }
        // commit the superstep
        for (std::uint64_t t = begin + 1; t <= boundary; ++t) {
            const auto i = static_cast<std::size_t>(t - 1 - t1);
            assignment.values[rest_order[i]] = decisions[i];
            placed.push_back(rest_order[i]);
        }
        frozen = boundary;
    }
    for (const auto& c : per_rank) {
        counters.probes += c.probes;
        counters.audit_probes += c.audit_probes;
    }
}

namespace detail {

struct RcspDraw {
    std::vector<std::uint32_t> s1;        // secondary sample, draw order
    std::vector<std::uint32_t> s0;        // primary sample, ascending
    std::vector<std::uint32_t> s1_rest;   // S1 \ S0, shared shuffled order
    std::vector<std::uint32_t> rest;      // V \ S1, shared shuffled order
};

inline RcspDraw draw_rcsp_samples(std::size_t n, std::uint64_t t0,
                                  std::uint64_t t1, std::uint64_t master_seed) {
    auto rng = subrng(master_seed, stream::rcsp_draw);
    RcspDraw draw;
    std::vector<bool> in_s1(n, false);
    for (const auto idx : sample_without_replacement(n, t1, rng)) {
        draw.s1.push_back(static_cast<std::uint32_t>(idx));
        in_s1[static_cast<std::size_t>(idx)] = true;
    }
    std::vector<bool> in_s0_pos(draw.s1.size(), false);
    for (const auto pos : sample_without_replacement(draw.s1.size(), t0, rng))
        in_s0_pos[static_cast<std::size_t>(pos)] = true;
    for (std::size_t i = 0; i < draw.s1.size(); ++i)
        (in_s0_pos[i] ? draw.s0 : draw.s1_rest).push_back(draw.s1[i]);
    std::sort(draw.s0.begin(), draw.s0.end());
    shuffle_in_place(draw.s1_rest, rng);

    auto p2rng = subrng(master_seed, stream::rcsp_phase2_order);
    for (std::uint32_t v = 0; v < n; ++v)
        if (!in_s1[v]) draw.rest.push_back(v);
    shuffle_in_place(draw.rest, p2rng);
    return draw;
}

inline std::uint64_t pow_u64(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < exp; ++i) out *= base;
    return out;
}

}  // namespace detail

/**
 * Two-level bootstrapped greedy for k-ary r-CSPs. Phase 1 enumerates all
 * k^t0 assignments of the primary sample S0 and greedily extends each over
 * S1 \ S0, scoring branches exactly on the constraints inside S1. Phase 2
 * fixes the best extension and runs the greedy pass over V \ S1; the
 * boundaries argument selects sequential (singleton) or (1+eps) supersteps.
 */
inline RunReport solve_rcsp_impl(const CspInstance& instance, double epsilon,
                                 const SolverConfig& config,
                                 std::uint64_t master_seed, bool parallel_phase2) {
    config.validate();
    const std::size_t n = instance.num_variables();
    const auto k = instance.alphabet_size();
    const auto r = instance.arity();
    if (n < 1) throw std::invalid_argument("empty instance");
    const auto params =
        SeedParams::make(epsilon, k, config.c1, config.max_seed_exponent);

    RunReport report;
    report.algorithm = parallel_phase2 ? "rcsp-parallel" : "rcsp";
    report.n = n;
    report.k = k;
    report.r = r;
    report.epsilon = epsilon;
    report.delta = config.delta;
    report.c_schedule = config.c_schedule;
    report.c1 = config.c1;
    report.seed = master_seed;

    if (params.t0 >= n) {
        auto [assignment, value] = brute_force_csp(
            instance, std::max(config.oracle_budget, config.max_seed_exponent));
        report.value = value;
        report.assignment = std::move(assignment);
        report.t1 = std::min<std::uint64_t>(params.t1, n);
        report.branch_count = 0;
        report.fallback = true;
        report.phase1_probes = 0;
        report.phase2_probes = 0;
        return report;
    }
    if (!config.single_branch && !params.enumeration_feasible(k))
        throw std::runtime_error(
            "seed enumeration budget exceeded: raise epsilon or max-seed-exponent");

    const std::uint64_t t0 = params.t0;
    const std::uint64_t t1 = std::min<std::uint64_t>(params.t1, n);
    const std::uint64_t branch_total =
        config.single_branch ? 1 : detail::pow_u64(k, t0);
    const auto draw = detail::draw_rcsp_samples(n, t0, t1, master_seed);

    SampleSchedule schedule;
    schedule.n = n;
    schedule.epsilon = epsilon;
    schedule.k = k;
    schedule.delta = config.delta;
    schedule.c_schedule = config.c_schedule;
    schedule.k_factor_exponent = config.k_factor_exponent;
    schedule.variant = ScheduleVariant::rcsp;

    // constraints that lie entirely inside S1 score the phase-1 branches
    std::vector<bool> in_s1(n, false);
    for (const auto v : draw.s1) in_s1[v] = true;
    std::vector<std::size_t> inside_s1;
    for (std::size_t ci = 0; ci < instance.constraints().size(); ++ci) {
        const auto& c = instance.constraints()[ci];
        if (std::ranges::all_of(c.vars, [&](std::uint32_t v) { return in_s1[v]; }))
            inside_s1.push_back(ci);
    }

    struct Phase1Result {
        Assignment assignment;
        std::uint64_t score = 0;
        ProbeCounters counters;
    };
    std::vector<Phase1Result> results(branch_total);

    auto run_branch = [&](std::uint64_t b) {
        Phase1Result res;
        res.assignment = Assignment(n, k);
        std::uint64_t digits = b;
        if (config.single_branch) {
            auto prng = subrng(master_seed, stream::maxcut_single_partition);
            for (const auto v : draw.s0)
                res.assignment.values[v] = static_cast<std::int32_t>(prng.below(k));
        } else {
            for (const auto v : draw.s0) {
                res.assignment.values[v] = static_cast<std::int32_t>(digits % k);
                digits /= k;
            }
        }
        std::vector<std::uint32_t> placed(draw.s0);
        std::vector<std::uint32_t> own_order;
        std::span<const std::uint32_t> order(draw.s1_rest);
        if (config.independent_orders) {
            auto orng = subrng(master_seed, stream::rcsp_phase1_order, b);
            own_order = draw.s1_rest;
            shuffle_in_place(own_order, orng);
            order = own_order;
        }
        auto srng = subrng(master_seed, stream::rcsp_phase1_samples,
                           config.shared_samples ? 0 : b);
        std::uint64_t t = t0;
        for (const auto v : order) {
            ++t;
            const std::uint64_t s =
                config.force_full_sampling
                    ? count_critical_tuples(placed.size(), r)
                    : schedule.sample_size(t);
            res.assignment.values[v] = greedy_place_variable(
                instance, placed, res.assignment, v, s, srng, res.counters);
            placed.push_back(v);
        }
        // exact branch score over constraints inside S1
        std::vector<std::int32_t> vals(r);
        for (const auto ci : inside_s1) {
            const auto& c = instance.constraints()[ci];
            for (std::size_t i = 0; i < c.vars.size(); ++i)
                vals[i] = res.assignment.values[c.vars[i]];
            res.score += c.payoffs[instance.value_index(vals)];
        }
        res.counters.audit_probes += inside_s1.size();
        results[b] = std::move(res);
    };

    if (config.threads <= 1 || branch_total == 1) {
        for (std::uint64_t b = 0; b < branch_total; ++b) run_branch(b);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
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
        if (results[b].score > results[best].score) best = b;

    ProbeCounters phase1;
    for (const auto& res : results) {
        phase1.probes += res.counters.probes;
        phase1.audit_probes += res.counters.audit_probes;
    }

    Assignment assignment = std::move(results[best].assignment);
    std::vector<std::uint32_t> placed(draw.s1);

    ProbeCounters phase2;
    if (t1 >= n || draw.rest.empty()) {
        report.fallback_phase2_skipped = true;
        if (parallel_phase2) {
            report.supersteps = 0;
            report.superstep_sizes = std::vector<std::uint64_t>{};
        }
    } else {
        const auto boundaries = parallel_phase2
                                    ? superstep_boundaries(t1, n, epsilon)
                                    : singleton_boundaries(t1, n);
        run_greedy_pass(instance, assignment, placed, draw.rest, schedule,
                        boundaries, parallel_phase2 ? config.threads : 1,
                        master_seed, phase2, config.force_full_sampling);
        if (parallel_phase2) {
            report.supersteps = boundaries.size();
            std::vector<std::uint64_t> szs;
            std::uint64_t prev = t1;
            for (const auto b : boundaries) {
                szs.push_back(b - prev);
                prev = b;
            }
            report.superstep_sizes = std::move(szs);
        }
    }

    report.value = evaluate_csp(instance, assignment);
    report.audit_probes = phase1.audit_probes + phase2.audit_probes +
                          instance.num_constraints();
    report.assignment = std::move(assignment);
    report.probes = phase1.probes + phase2.probes;
    report.phase1_probes = phase1.probes;
    report.phase2_probes = phase2.probes;
    report.branch_count = branch_total;
    report.t1 = t1;
    report.fallback = false;
    return report;
}

inline RunReport solve_rcsp(const CspInstance& instance, double epsilon,
                            const SolverConfig& config,
                            std::uint64_t master_seed) {
    return solve_rcsp_impl(instance, epsilon, config, master_seed, false);
}

/// Superstep-parallel variant: phase-1 branches split across workers and the
/// phase-2 pass runs in (1+eps) supersteps against frozen prefixes. The
/// output is identical for every worker count under a fixed master seed.
inline RunReport solve_rcsp_parallel(const CspInstance& instance, double epsilon,
                                     const SolverConfig& config,
                                     std::uint64_t master_seed) {
    return solve_rcsp_impl(instance, epsilon, config, master_seed, true);
}

}  // namespace densecsp
