#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "densecsp/csp.hpp"
#include "densecsp/graph.hpp"
#include "densecsp/rng.hpp"

namespace densecsp {

/// Erdos-Renyi G(n, p): each unordered pair independently an edge.
inline DenseGraph gen_gnp(std::size_t n, double p, Rng& rng) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must be in [0,1]");
    DenseGraph graph(n);
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) graph.add_edge(u, v);
    return graph;
}

/**
 * The planted lower-bound family: a complete bipartite core K_{4n/9,4n/9}
 * on V0 | V1 plus n/9 noise vertices, each attached to its hidden side r_v
 * with probability (1+eps)/2 and to the other side with probability 1/2.
 * No edges inside V2. The planted-optimal cut puts V0 and V1 on opposite
 * sides and each noise vertex opposite its biased side; its expected value
 * is 18n^2/81 + 2*eps*n^2/81.
 */
struct PlantedInstance {
    DenseGraph graph;
    std::vector<std::uint32_t> part_v0, part_v1, part_v2;
    std::vector<std::uint8_t> planted_sides;  // r_v per vertex of V2
    Assignment planted_assignment;            // the planted-optimal cut
    std::uint64_t planted_value = 0;
};

inline PlantedInstance gen_planted_hard(std::size_t n, double eps, Rng& rng) {
    if (n % 9 != 0) throw std::invalid_argument("n not divisible by 9");
    if (eps <= 0.0 || eps >= 0.5)
        throw std::invalid_argument("epsilon must be in (0, 1/2)");
    const std::uint32_t m = static_cast<std::uint32_t>(4 * n / 9);
    PlantedInstance inst{DenseGraph(n), {}, {}, {}, {}, Assignment(n, 2), 0};
    for (std::uint32_t v = 0; v < m; ++v) inst.part_v0.push_back(v);
    for (std::uint32_t v = m; v < 2 * m; ++v) inst.part_v1.push_back(v);
    for (std::uint32_t v = 2 * m; v < n; ++v) inst.part_v2.push_back(v);

    for (const auto u : inst.part_v0)
        for (const auto v : inst.part_v1) inst.graph.add_edge(u, v);

    const double p_biased = (1.0 + eps) / 2.0;
    for (const auto v : inst.part_v2) {
        const std::uint8_t rv = rng.bit() ? 1 : 0;
        inst.planted_sides.push_back(rv);
        const auto& biased = rv == 0 ? inst.part_v0 : inst.part_v1;
        const auto& other = rv == 0 ? inst.part_v1 : inst.part_v0;
        for (const auto u : biased)
            if (rng.bernoulli(p_biased)) inst.graph.add_edge(u, v);
        for (const auto u : other)
            if (rng.bernoulli(0.5)) inst.graph.add_edge(u, v);
    }

    for (const auto v : inst.part_v0) inst.planted_assignment.values[v] = 0;
    for (const auto v : inst.part_v1) inst.planted_assignment.values[v] = 1;
    for (std::size_t i = 0; i < inst.part_v2.size(); ++i)
        inst.planted_assignment.values[inst.part_v2[i]] = 1 - inst.planted_sides[i];
    inst.planted_value = evaluate_cut(inst.graph, inst.planted_assignment);
    return inst;
}

enum class RcspPredicate { parity, random_table, cut_generalization };

inline RcspPredicate parse_predicate(const std::string& name) {
    if (name == "parity") return RcspPredicate::parity;
    if (name == "random-table") return RcspPredicate::random_table;
    if (name == "cut-generalization") return RcspPredicate::cut_generalization;
    throw std::invalid_argument("unknown predicate: " + name);
}

/// Random r-CSP: each r-subset of variables carries a constraint with
/// probability `density`. parity needs k = 2 (payoff 1 iff the value sum
/// matches a random target mod 2); random-table draws i.i.d. fair payoff
/// bits; cut-generalization pays 1 iff the values are not all equal.
inline CspInstance gen_random_rcsp(std::size_t n, std::uint32_t k, std::uint32_t r,
                                   double density, RcspPredicate predicate,
                                   Rng& rng) {
    if (density < 0.0 || density > 1.0)
        throw std::invalid_argument("density must be in [0,1]");
    if (n < r) throw std::invalid_argument("n must be >= r");
    if (predicate == RcspPredicate::parity && k != 2)
        throw std::invalid_argument("parity predicate requires k = 2");
    CspInstance instance(n, k, r);
    const auto table_size = instance.table_size();

    VarTuple vars(r);
    for (std::uint32_t i = 0; i < r; ++i) vars[i] = i;
    while (true) {
        if (rng.bernoulli(density)) {
            PayoffTable payoffs(table_size, 0);
            switch (predicate) {
                case RcspPredicate::parity: {
                    const int target = rng.bit() ? 1 : 0;
                    for (std::size_t idx = 0; idx < table_size; ++idx) {
                        int sum = 0;
                        for (std::size_t tmp = idx, j = 0; j < r; ++j) {
                            sum += static_cast<int>(tmp % k);
                            tmp /= k;
                        }
                        payoffs[idx] = (sum % 2 == target) ? 1 : 0;
                    }
                    break;
                }
                case RcspPredicate::random_table:
                    for (auto& b : payoffs) b = rng.bit() ? 1 : 0;
                    break;
                case RcspPredicate::cut_generalization:
                    for (std::size_t idx = 0; idx < table_size; ++idx) {
                        bool all_equal = true;
                        std::size_t tmp = idx;
                        const auto first = tmp % k;
                        for (std::uint32_t j = 0; j < r; ++j, tmp /= k)
                            if (tmp % k != first) all_equal = false;
                        payoffs[idx] = all_equal ? 0 : 1;
                    }
                    break;
            }
            instance.add_constraint(vars, std::move(payoffs));
        }
        // next r-subset in lexicographic order
        std::uint32_t i = r;
        while (i > 0 && vars[i - 1] == n - (r - (i - 1))) --i;
        if (i == 0) break;
        ++vars[i - 1];
        for (std::uint32_t j = i; j < r; ++j) vars[j] = vars[j - 1] + 1;
    }
    return instance;
}

/// Pairs labeled similar (+) or dissimilar (-).
struct SignedGraph {
    struct Edge {
        std::uint32_t u, v;
        bool positive;
    };
    std::size_t n = 0;
    std::vector<Edge> edges;
};

inline SignedGraph gen_signed_gnp(std::size_t n, double p, double plus_prob,
                                  Rng& rng) {
    SignedGraph sg;
    sg.n = n;
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) sg.edges.push_back({u, v, rng.bernoulli(plus_prob)});
    return sg;
}

/// Correlation clustering into k clusters as a 2-CSP over alphabet k
/// (maximize agreements): a "+" pair pays 1 iff the labels are equal, a "-"
/// pair iff they differ.
inline CspInstance encode_correlation_clustering(const SignedGraph& sg,
                                                 std::uint32_t k) {
    if (k < 2) throw std::invalid_argument("cluster count must be >= 2");
    CspInstance instance(sg.n, k, 2);
    PayoffTable equal_table(static_cast<std::size_t>(k) * k, 0);
    PayoffTable differ_table(static_cast<std::size_t>(k) * k, 1);
    for (std::uint32_t i = 0; i < k; ++i) {
        equal_table[static_cast<std::size_t>(i) * k + i] = 1;
        differ_table[static_cast<std::size_t>(i) * k + i] = 0;
    }
    for (const auto& e : sg.edges)
        instance.add_constraint({std::min(e.u, e.v), std::max(e.u, e.v)},
                                e.positive ? equal_table : differ_table);
    return instance;
}

}  // namespace densecsp
