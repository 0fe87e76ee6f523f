#pragma once

#include <cstdint>
#include <stdexcept>

namespace densecsp {

/// Knobs shared by both solvers. The schedule constants default to the
/// minimal literal reading (c = 1, delta = 2/3, c1 = 1); none of them are
/// baked into the algorithms.
struct SolverConfig {
    double delta = 2.0 / 3.0;
    double c_schedule = 1.0;
    double c1 = 1.0;
    double k_factor_exponent = 4.0;
    std::uint32_t max_seed_exponent = 24;
    std::uint32_t threads = 1;
    std::uint32_t oracle_budget = 26;

    // One seed partition instead of the full 2^t0 / k^t0 enumeration.
    bool single_branch = false;
    // Draw a fresh placement order per enumeration branch.
    bool independent_orders = false;
    // Reuse the same per-step samples across branches.
    bool shared_samples = false;
    // Force s_t to the whole sampling domain (exact greedy).
    bool force_full_sampling = false;

    void validate() const {
        if (delta <= 0.0 || delta >= 1.0)
            throw std::invalid_argument("delta must be in (0,1)");
        if (c_schedule <= 0.0) throw std::invalid_argument("c-schedule must be > 0");
        if (c1 <= 0.0) throw std::invalid_argument("c1 must be > 0");
        if (threads < 1) throw std::invalid_argument("threads must be >= 1");
    }
};

}  // namespace densecsp
