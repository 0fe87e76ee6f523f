#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "densecsp/graph.hpp"

namespace densecsp {

using VarTuple = std::vector<std::uint32_t>;
using PayoffTable = std::vector<std::uint8_t>;

struct TupleHash {
    using is_transparent = void;
    std::size_t operator()(std::span<const std::uint32_t> key) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ key.size();
        for (const auto v : key) {
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 33));
    }
    std::size_t operator()(const VarTuple& key) const {
        return (*this)(std::span<const std::uint32_t>(key));
    }
};

struct TupleEq {
    using is_transparent = void;
    bool operator()(std::span<const std::uint32_t> a,
                    std::span<const std::uint32_t> b) const {
        return std::ranges::equal(a, b);
    }
    bool operator()(const VarTuple& a, const VarTuple& b) const {
        return a == b;
    }
    bool operator()(const VarTuple& a, std::span<const std::uint32_t> b) const {
        return std::ranges::equal(a, b);
    }
    bool operator()(std::span<const std::uint32_t> a, const VarTuple& b) const {
        return std::ranges::equal(a, b);
    }
};

/// Partial or total map from variables to values; -1 marks unassigned.
struct Assignment {
    static constexpr std::int32_t unassigned = -1;

    std::size_t n = 0;
    std::uint32_t k = 2;
    std::vector<std::int32_t> values;

    Assignment() = default;
    Assignment(std::size_t n_, std::uint32_t k_)
        : n(n_), k(k_), values(n_, unassigned) {}

    void assign(std::uint32_t var, std::int32_t value) {
        if (value < 0 || static_cast<std::uint32_t>(value) >= k)
            throw std::invalid_argument("value out of alphabet");
        values[var] = value;
    }

    bool assigned(std::uint32_t var) const { return values[var] != unassigned; }

    bool total() const {
        return std::ranges::none_of(values,
                                    [](std::int32_t v) { return v == unassigned; });
    }

    bool operator==(const Assignment&) const = default;
};

/**
 * An n-variable, k-ary, arity-r constraint system with 0/1 payoff tables.
 * Constraints are keyed by strictly increasing variable tuples; payoff
 * tables hold k^r entries in row-major value-tuple order (first variable
 * of the sorted key is the most significant digit).
 *
 * Storage is a sparse hash map so a sampled tuple can be checked for a
 * constraint in O(1); insertion order is kept for deterministic
 * serialization and enumeration.
 */
class CspInstance {
public:
    struct Constraint {
        VarTuple vars;
        PayoffTable payoffs;
    };

    CspInstance(std::size_t n, std::uint32_t k, std::uint32_t r)
        : n_(n), k_(k), r_(r) {
        if (k < 2) throw std::invalid_argument("alphabet size must be >= 2");
        if (r < 2) throw std::invalid_argument("arity must be >= 2");
        table_size_ = 1;
        for (std::uint32_t i = 0; i < r; ++i) {
            if (table_size_ > (std::size_t{1} << 30) / k)
                throw std::invalid_argument("payoff table too large");
            table_size_ *= k;
        }
    }

    CspInstance(const CspInstance& other)
        : n_(other.n_), k_(other.k_), r_(other.r_), table_size_(other.table_size_),
          constraints_(other.constraints_), index_(other.index_),
          probes_(other.probes_.load(std::memory_order_relaxed)) {}

    CspInstance(CspInstance&& other) noexcept
        : n_(other.n_), k_(other.k_), r_(other.r_), table_size_(other.table_size_),
          constraints_(std::move(other.constraints_)),
          index_(std::move(other.index_)),
          probes_(other.probes_.load(std::memory_order_relaxed)) {}

    CspInstance& operator=(const CspInstance& other) {
        n_ = other.n_;
        k_ = other.k_;
        r_ = other.r_;
        table_size_ = other.table_size_;
        constraints_ = other.constraints_;
        index_ = other.index_;
        probes_.store(other.probes_.load(std::memory_order_relaxed),
                      std::memory_order_relaxed);
        return *this;
    }

    CspInstance& operator=(CspInstance&& other) noexcept {
        n_ = other.n_;
        k_ = other.k_;
        r_ = other.r_;
        table_size_ = other.table_size_;
        constraints_ = std::move(other.constraints_);
        index_ = std::move(other.index_);
        probes_.store(other.probes_.load(std::memory_order_relaxed),
                      std::memory_order_relaxed);
        return *this;
    }

    std::size_t num_variables() const { return n_; }
    std::uint32_t alphabet_size() const { return k_; }
    std::uint32_t arity() const { return r_; }
    std::size_t table_size() const { return table_size_; }
    std::size_t num_constraints() const { return constraints_.size(); }
    const std::vector<Constraint>& constraints() const { return constraints_; }

    void add_constraint(VarTuple vars, PayoffTable payoffs) {
        if (vars.size() != r_) throw std::invalid_argument("key arity mismatch");
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (vars[i] >= n_) throw std::invalid_argument("variable out of range");
            if (i > 0 && vars[i] <= vars[i - 1])
                throw std::invalid_argument("key not strictly increasing");
        }
        if (payoffs.size() != table_size_)
            throw std::invalid_argument("payoff table size mismatch");
        for (const auto b : payoffs)
            if (b > 1) throw std::invalid_argument("payoff entries must be 0/1");
        if (index_.contains(vars)) throw std::invalid_argument("duplicate constraint");
        index_.emplace(vars, constraints_.size());
        constraints_.push_back({std::move(vars), std::move(payoffs)});
    }

    /// Counted constraint-table lookup: one call is one query, hit or miss.
    /// A missing tuple means "no constraint" (payoff 0 everywhere), not an error.
    const PayoffTable* lookup(std::span<const std::uint32_t> key) const {
        probes_.fetch_add(1, std::memory_order_relaxed);
        return find(key);
    }

    /// Raw lookup for audits and oracles; not charged to the query budget.
    const PayoffTable* find(std::span<const std::uint32_t> key) const {
        const auto it = index_.find(key);
        if (it == index_.end()) return nullptr;
        return &constraints_[it->second].payoffs;
    }

    std::uint64_t probe_count() const {
        return probes_.load(std::memory_order_relaxed);
    }

    /// Row-major index of a value tuple given in sorted-variable order.
    std::size_t value_index(std::span<const std::int32_t> values) const {
        std::size_t idx = 0;
        for (const auto v : values) idx = idx * k_ + static_cast<std::size_t>(v);
        return idx;
    }

private:
    std::size_t n_;
    std::uint32_t k_;
    std::uint32_t r_;
    std::size_t table_size_;
    std::vector<Constraint> constraints_;
    std::unordered_map<VarTuple, std::size_t, TupleHash, TupleEq> index_;
    mutable std::atomic<std::uint64_t> probes_{0};
};

/// Exact cut count of a total bipartition; an offline audit, so it reads the
/// adjacency matrix directly and leaves the probe counter untouched.
inline std::uint64_t evaluate_cut(const DenseGraph& graph,
                                  const Assignment& assignment) {
    if (assignment.k != 2) throw std::invalid_argument("not a bipartition");
    if (assignment.n != graph.size() || !assignment.total())
        throw std::invalid_argument("incomplete assignment");
    const auto n = static_cast<std::uint32_t>(graph.size());
    VertexMask side1(n);
    for (std::uint32_t v = 0; v < n; ++v)
        if (assignment.values[v] == 1) side1.set(v);
    std::uint64_t cut = 0;
    for (std::uint32_t u = 0; u < n; ++u)
        if (assignment.values[u] == 0) cut += side1.intersect_count(graph.row(u));
    return cut;
}

/// Number of stored constraints satisfied by a total assignment. Offline
/// audit; does not touch the probe counter.
inline std::uint64_t evaluate_csp(const CspInstance& instance,
                                  const Assignment& assignment) {
    if (assignment.n != instance.num_variables() || !assignment.total())
        throw std::invalid_argument("incomplete assignment");
    std::uint64_t total = 0;
    std::vector<std::int32_t> vals(instance.arity());
    for (const auto& c : instance.constraints()) {
        for (std::size_t i = 0; i < c.vars.size(); ++i)
            vals[i] = assignment.values[c.vars[i]];
        total += c.payoffs[instance.value_index(vals)];
    }
    return total;
}

/// Max-Cut as a 2-CSP: one constraint per edge, payoff 1 exactly on the two
/// unequal value pairs. evaluate_csp on the result equals evaluate_cut on
/// the graph for every total assignment.
inline CspInstance encode_maxcut_as_csp(const DenseGraph& graph) {
    const auto n = static_cast<std::uint32_t>(graph.size());
    CspInstance instance(n, 2, 2);
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v)
            if (graph.adjacent(u, v))
                instance.add_constraint({u, v}, {0, 1, 1, 0});
    return instance;
}

}  // namespace densecsp
