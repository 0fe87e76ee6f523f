#pragma once

#include <atomic>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace densecsp {

/**
 * Undirected dense graph stored as a packed symmetric bit matrix with an
 * empty diagonal. Two access paths:
 *   - query(u, v) is the algorithm's pair query; it increments the probe
 *     counter by exactly one per call.
 *   - adjacent(u, v) / row(u) are raw reads for oracles, generators and
 *     offline audits; they are never charged to the query budget.
 */
class DenseGraph {
public:
    explicit DenseGraph(std::size_t n)
        : n_(n), words_(word_count(n)), bits_(n * words_, 0) {}

    DenseGraph(const DenseGraph& other)
        : n_(other.n_), words_(other.words_), bits_(other.bits_),
          probes_(other.probes_.load(std::memory_order_relaxed)) {}

    DenseGraph(DenseGraph&& other) noexcept
        : n_(other.n_), words_(other.words_), bits_(std::move(other.bits_)),
          probes_(other.probes_.load(std::memory_order_relaxed)) {}

    DenseGraph& operator=(const DenseGraph& other) {
        n_ = other.n_;
        words_ = other.words_;
        bits_ = other.bits_;
        probes_.store(other.probes_.load(std::memory_order_relaxed),
                      std::memory_order_relaxed);
        return *this;
    }

    DenseGraph& operator=(DenseGraph&& other) noexcept {
        n_ = other.n_;
        words_ = other.words_;
        bits_ = std::move(other.bits_);
        probes_.store(other.probes_.load(std::memory_order_relaxed),
                      std::memory_order_relaxed);
        return *this;
    }

    std::size_t size() const { return n_; }
    std::size_t words_per_row() const { return words_; }

    void add_edge(std::uint32_t u, std::uint32_t v) {
        check_pair(u, v);
        set_bit(u, v);
        set_bit(v, u);
    }

    bool adjacent(std::uint32_t u, std::uint32_t v) const {
        check_pair(u, v);
        return (bits_[u * words_ + (v >> 6)] >> (v & 63)) & 1u;
    }

    // The counted pair-query accessor. One call, one probe.
    bool query(std::uint32_t u, std::uint32_t v) const {
        probes_.fetch_add(1, std::memory_order_relaxed);
        return adjacent(u, v);
    }

    std::uint64_t probe_count() const {
        return probes_.load(std::memory_order_relaxed);
    }

    std::span<const std::uint64_t> row(std::uint32_t u) const {
        return {bits_.data() + static_cast<std::size_t>(u) * words_, words_};
    }

    std::size_t edge_count() const {
        std::size_t total = 0;
        for (const auto w : bits_) total += static_cast<std::size_t>(std::popcount(w));
        return total / 2;
    }

    std::size_t degree(std::uint32_t u) const {
        std::size_t d = 0;
        for (const auto w : row(u)) d += static_cast<std::size_t>(std::popcount(w));
        return d;
    }

private:
    static std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

    void check_pair(std::uint32_t u, std::uint32_t v) const {
        if (u >= n_ || v >= n_) throw std::out_of_range("vertex out of range");
        if (u == v) throw std::invalid_argument("self-loops not allowed");
    }

    void set_bit(std::uint32_t u, std::uint32_t v) {
        bits_[u * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
    }

    std::size_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
    mutable std::atomic<std::uint64_t> probes_{0};
};

/// n-bit side mask helper for word-level cut arithmetic.
class VertexMask {
public:
    explicit VertexMask(std::size_t n) : words_((n + 63) / 64, 0) {}

    void set(std::uint32_t v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void clear(std::uint32_t v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
    bool test(std::uint32_t v) const {
        return (words_[v >> 6] >> (v & 63)) & 1u;
    }

    std::size_t intersect_count(std::span<const std::uint64_t> row) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] & row[i]));
        return c;
    }

private:
    std::vector<std::uint64_t> words_;
};

}  // namespace densecsp
