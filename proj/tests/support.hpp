#pragma once

// Shared test fixtures and independent oracles. Everything here must stay
// independent of the library code paths it checks: recounts walk the data
// directly and enumerators are written against the definitions, not against
// the solvers.

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "densecsp/csp.hpp"
#include "densecsp/generators.hpp"
#include "densecsp/graph.hpp"
#include "densecsp/rng.hpp"

namespace testsupport {

using namespace densecsp;

inline DenseGraph triangle() {
    DenseGraph g(3);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    return g;
}

inline DenseGraph cycle(std::uint32_t n) {
    DenseGraph g(n);
    for (std::uint32_t v = 0; v < n; ++v)
        g.add_edge(std::min(v, (v + 1) % n), std::max(v, (v + 1) % n));
    return g;
}

// parts {0..a-1} and {a..a+b-1}
inline DenseGraph complete_bipartite(std::uint32_t a, std::uint32_t b) {
    DenseGraph g(a + b);
    for (std::uint32_t u = 0; u < a; ++u)
        for (std::uint32_t v = a; v < a + b; ++v) g.add_edge(u, v);
    return g;
}

inline Assignment make_assignment(std::uint32_t k,
                                  std::initializer_list<std::int32_t> values) {
    Assignment a(values.size(), k);
    std::size_t i = 0;
    for (const auto v : values) a.values[i++] = v;
    return a;
}

// Naive pairwise cut recount, independent of evaluate_cut's word arithmetic.
inline std::uint64_t naive_cut(const DenseGraph& g, const Assignment& a) {
    std::uint64_t cut = 0;
    for (std::uint32_t u = 0; u < g.size(); ++u)
        for (std::uint32_t v = u + 1; v < g.size(); ++v)
            if (g.adjacent(u, v) && a.values[u] != a.values[v]) ++cut;
    return cut;
}

// Second, independently written satisfied-constraint recount.
inline std::uint64_t naive_csp_value(const CspInstance& inst, const Assignment& a) {
    std::uint64_t total = 0;
    for (const auto& c : inst.constraints()) {
        std::size_t idx = 0;
        for (const auto var : c.vars)
            idx = idx * inst.alphabet_size() +
                  static_cast<std::size_t>(a.values[var]);
        if (c.payoffs[idx]) ++total;
    }
    return total;
}

// Second brute-force enumerator for CSPs: odometer loop instead of the
// library's recursive bucketed search.
inline std::uint64_t naive_csp_optimum(const CspInstance& inst) {
    const auto n = inst.num_variables();
    const auto k = inst.alphabet_size();
    Assignment a(n, k);
    for (auto& v : a.values) v = 0;
    std::uint64_t best = 0;
    while (true) {
        best = std::max(best, naive_csp_value(inst, a));
        std::size_t i = 0;
        while (i < n) {
            if (static_cast<std::uint32_t>(++a.values[i]) < k) break;
            a.values[i++] = 0;
        }
        if (i == n) break;
    }
    return best;
}

// Direct correlation-clustering enumerator: counts agreements per labeling
// from the signed graph itself, never through the CSP encoding.
inline std::uint64_t naive_corrclust_optimum(const SignedGraph& sg, std::uint32_t k) {
    std::vector<std::uint32_t> label(sg.n, 0);
    std::uint64_t best = 0;
    while (true) {
        std::uint64_t agree = 0;
        for (const auto& e : sg.edges) {
            const bool same = label[e.u] == label[e.v];
            if (e.positive == same) ++agree;
        }
        best = std::max(best, agree);
        std::size_t i = 0;
        while (i < sg.n) {
            if (++label[i] < k) break;
            label[i++] = 0;
        }
        if (i == sg.n) break;
    }
    return best;
}

struct Stats {
    double mean = 0;
    double sd = 0;
};

inline Stats stats(const std::vector<double>& xs) {
    const double sum = std::accumulate(xs.begin(), xs.end(), 0.0);
    const double mean = sum / static_cast<double>(xs.size());
    double q = 0;
    for (const auto x : xs) q += (x - mean) * (x - mean);
    const double sd =
        xs.size() > 1 ? std::sqrt(q / static_cast<double>(xs.size() - 1)) : 0.0;
    return {mean, sd};
}

}  // namespace testsupport
