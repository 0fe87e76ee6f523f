#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <vector>

#include "densecsp/csp.hpp"
#include "densecsp/graph.hpp"

namespace densecsp {

namespace detail {

inline void check_oracle_budget(double bits, std::uint32_t budget) {
    if (bits > static_cast<double>(budget) + 1e-9)
        throw std::runtime_error("instance too large for oracle");
}

// Walks a contiguous range of Gray codes over vertices 1..n-1 (vertex 0 is
// pinned to side 0 by the flip symmetry of the cut) and returns the local
// best, keeping the first maximizer in enumeration order.
inline std::pair<std::uint64_t, std::uint32_t> gray_scan(
    const DenseGraph& graph, std::uint64_t begin, std::uint64_t end) {
    const auto n = static_cast<std::uint32_t>(graph.size());
    std::uint32_t sides = static_cast<std::uint32_t>(begin ^ (begin >> 1)) << 1;
    VertexMask mask0(n), mask1(n);
    for (std::uint32_t v = 0; v < n; ++v)
        ((sides >> v) & 1u) ? mask1.set(v) : mask0.set(v);
    std::uint64_t value = 0;
    for (std::uint32_t u = 0; u < n; ++u)
        if (!((sides >> u) & 1u)) value += mask1.intersect_count(graph.row(u));

    std::uint64_t best = value;
    std::uint32_t best_sides = sides;
    for (std::uint64_t i = begin + 1; i < end; ++i) {
        const auto flip = static_cast<std::uint32_t>(std::countr_zero(i)) + 1;
        const auto row = graph.row(flip);
        const bool was_one = (sides >> flip) & 1u;
        // edges to the old side become cut, edges to the new side stop being cut
        const std::uint64_t same =
            was_one ? mask1.intersect_count(row) : mask0.intersect_count(row);
        const std::uint64_t other =
            was_one ? mask0.intersect_count(row) : mask1.intersect_count(row);
        value = value + same - other;
        if (was_one) {
            mask1.clear(flip);
            mask0.set(flip);
            sides &= ~(1u << flip);
        } else {
            mask0.clear(flip);
            mask1.set(flip);
            sides |= 1u << flip;
        }
        if (value > best) {
            best = value;
            best_sides = sides;
        }
    }
    return {best, best_sides};
}

}  // namespace detail

/// Exhaustive Max-Cut over the 2^(n-1) bipartitions with vertex 0 fixed,
/// enumerated in Gray-code order so each step is an O(n/64) update.
/// The enumeration range splits across workers; the merged result equals
/// the sequential first-maximizer regardless of thread count.
inline std::pair<Assignment, std::uint64_t> brute_force_maxcut(
    const DenseGraph& graph, std::uint32_t budget = 26, std::uint32_t threads = 1) {
    const auto n = static_cast<std::uint32_t>(graph.size());
    if (n == 0) throw std::invalid_argument("empty graph");
    detail::check_oracle_budget(static_cast<double>(n), std::min(budget, 32u));
    const std::uint64_t total = n == 1 ? 1 : (std::uint64_t{1} << (n - 1));

    std::uint64_t best_value = 0;
    std::uint32_t best_sides = 0;
    if (threads <= 1 || total < (1u << 16)) {
        std::tie(best_value, best_sides) = detail::gray_scan(graph, 0, total);
    } else {
        const std::uint64_t chunk = (total + threads - 1) / threads;
        std::vector<std::pair<std::uint64_t, std::uint32_t>> results(
            threads, {0, 0});
        std::vector<bool> ran(threads, false);
        std::vector<std::thread> pool;
        for (std::uint32_t w = 0; w < threads; ++w)
            pool.emplace_back([&, w] {
                const auto begin = w * chunk;
                const auto end = std::min(total, begin + chunk);
                if (begin < end) {
                    results[w] = detail::gray_scan(graph, begin, end);
                    ran[w] = true;
                }
            });
        for (auto& t : pool) t.join();
        bool have = false;
        for (std::uint32_t w = 0; w < threads; ++w) {
            if (!ran[w]) continue;
            if (!have || results[w].first > best_value) {
                std::tie(best_value, best_sides) = results[w];
                have = true;
            }
        }
    }

    Assignment assignment(n, 2);
    for (std::uint32_t v = 0; v < n; ++v)
        assignment.values[v] = (best_sides >> v) & 1u;
    return {assignment, best_value};
}

namespace detail {

inline void csp_enumerate(const CspInstance& instance,
                          const std::vector<std::vector<std::size_t>>& by_last_var,
                          Assignment& work, std::uint32_t var, std::uint64_t acc,
                          Assignment& best, std::uint64_t& best_value, bool& have,
                          std::vector<std::int32_t>& vals) {
    if (var == instance.num_variables()) {
        if (!have || acc > best_value) {
            best_value = acc;
            best = work;
            have = true;
        }
        return;
    }
    for (std::uint32_t value = 0; value < instance.alphabet_size(); ++value) {
        work.values[var] = static_cast<std::int32_t>(value);
        std::uint64_t gained = 0;
        for (const auto ci : by_last_var[var]) {
            const auto& c = instance.constraints()[ci];
            for (std::size_t i = 0; i < c.vars.size(); ++i)
                vals[i] = work.values[c.vars[i]];
            gained += c.payoffs[instance.value_index(vals)];
        }
        csp_enumerate(instance, by_last_var, work, var + 1, acc + gained, best,
                      best_value, have, vals);
    }
    work.values[var] = Assignment::unassigned;
}

}  // namespace detail

/// Exhaustive search over all k^n assignments, guarded by n*log2(k) <= budget.
/// Constraints are scored as soon as their highest variable gets a value.
inline std::pair<Assignment, std::uint64_t> brute_force_csp(
    const CspInstance& instance, std::uint32_t budget = 26) {
    const auto n = instance.num_variables();
    const auto k = instance.alphabet_size();
    if (n == 0) throw std::invalid_argument("empty instance");
    detail::check_oracle_budget(
        static_cast<double>(n) * std::log2(static_cast<double>(k)), budget);

    std::vector<std::vector<std::size_t>> by_last_var(n);
    for (std::size_t ci = 0; ci < instance.constraints().size(); ++ci)
        by_last_var[instance.constraints()[ci].vars.back()].push_back(ci);

    Assignment work(n, k), best(n, k);
    std::uint64_t best_value = 0;
    bool have = false;
    std::vector<std::int32_t> vals(instance.arity());
    detail::csp_enumerate(instance, by_last_var, work, 0, 0, best, best_value,
                          have, vals);
    return {best, best_value};
}

/// Adds, for each candidate value of `head`, the payoff of the constraint on
/// {head} + tail (if stored) with tail variables at their assigned values.
/// `counted` selects the probe-counted lookup (algorithm queries) versus the
/// raw one (oracles and audits).
inline bool accumulate_candidate_scores(const CspInstance& instance,
                                        const Assignment& assignment,
                                        std::uint32_t head,
                                        std::span<const std::uint32_t> tail,
                                        VarTuple& key_scratch,
                                        std::span<std::uint64_t> score,
                                        bool counted = false) {
    const auto r = instance.arity();
    const auto k = instance.alphabet_size();
    key_scratch.resize(r);
    std::copy(tail.begin(), tail.end(), key_scratch.begin());
    key_scratch[r - 1] = head;
    std::sort(key_scratch.begin(), key_scratch.end());
    std::size_t pos = static_cast<std::size_t>(
        std::find(key_scratch.begin(), key_scratch.end(), head) -
        key_scratch.begin());

    const PayoffTable* table =
        counted ? instance.lookup(key_scratch) : instance.find(key_scratch);
    if (table == nullptr) return false;
    std::size_t base = 0;
    std::size_t stride = 0;
    std::size_t weight = 1;
    for (std::size_t j = r; j-- > 0;) {
        if (j == pos) {
            stride = weight;
        } else {
            // tail variables must be committed; in the superstep pass this
            // traces that no same-superstep value is ever read
            assert(assignment.values[key_scratch[j]] != Assignment::unassigned);
            base += static_cast<std::size_t>(assignment.values[key_scratch[j]]) * weight;
        }
        weight *= k;
    }
    for (std::uint32_t value = 0; value < k; ++value)
        score[value] += (*table)[base + value * stride];
    return true;
}

/**
 * The no-sampling greedy baselines: place `order` on top of the seed
 * assignment using exact counts over the full critical domain, with the
 * same tie rule as the sampled solvers (ties toward the smallest value).
 */
inline std::pair<Assignment, std::uint64_t> exact_greedy_reference(
    const DenseGraph& graph, const Assignment& seed,
    std::span<const std::uint32_t> order) {
    const auto n = static_cast<std::uint32_t>(graph.size());
    Assignment assignment = seed;
    VertexMask side_mask[2] = {VertexMask(n), VertexMask(n)};
    for (std::uint32_t v = 0; v < n; ++v)
        if (assignment.assigned(v)) side_mask[assignment.values[v]].set(v);
    for (const auto v : order) {
        const auto row = graph.row(v);
        const auto on0 = side_mask[0].intersect_count(row);
        const auto on1 = side_mask[1].intersect_count(row);
        const std::int32_t side = on0 > on1 ? 1 : 0;  // fewer neighbors wins, tie -> 0
        assignment.values[v] = side;
        side_mask[side].set(v);
    }
    return {assignment, evaluate_cut(graph, assignment)};
}

inline std::pair<Assignment, std::uint64_t> exact_greedy_reference(
    const CspInstance& instance, const Assignment& seed,
    std::span<const std::uint32_t> order) {
    const auto k = instance.alphabet_size();
    const auto r = instance.arity();
    Assignment assignment = seed;
    std::vector<std::uint32_t> placed;
    for (std::uint32_t v = 0; v < assignment.n; ++v)
        if (assignment.assigned(v)) placed.push_back(v);

    std::vector<std::uint64_t> score(k);
    std::vector<std::uint32_t> subset(r - 1);
    VarTuple key(r);
    for (const auto v : order) {
        std::fill(score.begin(), score.end(), 0);
        if (placed.size() + 1 >= r) {
            // every (r-1)-subset of the placed set exactly once
            const std::size_t m = placed.size();
            std::vector<std::size_t> idx(r - 1);
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            while (true) {
                for (std::size_t i = 0; i < idx.size(); ++i) subset[i] = placed[idx[i]];
                accumulate_candidate_scores(instance, assignment, v, subset, key,
                                            score);
                std::size_t i = idx.size();
                while (i > 0 && idx[i - 1] == m - (idx.size() - (i - 1))) --i;
                if (i == 0) break;
                ++idx[i - 1];
                for (std::size_t j = i; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
            }
        }
        std::uint32_t best = 0;
        for (std::uint32_t value = 1; value < k; ++value)
            if (score[value] > score[best]) best = value;
        assignment.values[v] = static_cast<std::int32_t>(best);
        placed.push_back(v);
    }
    return {assignment, evaluate_csp(instance, assignment)};
}

}  // namespace densecsp
