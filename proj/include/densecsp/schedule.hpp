#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace densecsp {

// ceil with a small downward nudge so values that are integers up to
// floating-point noise round to the intended integer.
inline std::uint64_t ceil_stable(double x) {
    return static_cast<std::uint64_t>(std::ceil(x - 1e-9));
}

enum class ScheduleVariant { maxcut, rcsp };

/**
 * Time-dependent sample-size schedule s(t) = ceil(c * n^d * kf / (t^d * e^2)),
 * with kf = 1 for Max-Cut and k^4 (configurable exponent) for r-CSPs.
 * Non-increasing in t; the caller caps at the sampling-domain size.
 */
struct SampleSchedule {
    std::size_t n = 0;
    double epsilon = 0.5;
    std::uint32_t k = 2;
    double delta = 2.0 / 3.0;
    double c_schedule = 1.0;
    double k_factor_exponent = 4.0;
    ScheduleVariant variant = ScheduleVariant::maxcut;

    double k_factor() const {
        return variant == ScheduleVariant::maxcut
                   ? 1.0
                   : std::pow(static_cast<double>(k), k_factor_exponent);
    }

    std::uint64_t sample_size(std::uint64_t t) const {
        if (t < 1) throw std::invalid_argument("step index must be >= 1");
        const double value = c_schedule * std::pow(static_cast<double>(n), delta) *
                             k_factor() /
                             (std::pow(static_cast<double>(t), delta) * epsilon * epsilon);
        const auto s = ceil_stable(value);
        return s < 1 ? 1 : s;
    }
};

/**
 * Seed-sample sizes for the enumeration phases: t0 = ceil(1/e^2) primary
 * variables, t1 = ceil(c1 * ln^2(max(k,2)) / e^4) secondary ones, clamped
 * so that t0 <= t1. Enumerating k^t0 assignments is refused once
 * t0*log2(k) exceeds the exponent cap.
 */
struct SeedParams {
    std::uint64_t t0 = 0;
    std::uint64_t t1 = 0;
    std::uint32_t max_seed_exponent = 24;

    static SeedParams make(double epsilon, std::uint32_t k, double c1,
                           std::uint32_t max_seed_exponent) {
        if (epsilon <= 0.0 || epsilon >= 1.0)
            throw std::invalid_argument("epsilon must be in (0,1)");
        SeedParams p;
        p.t0 = ceil_stable(1.0 / (epsilon * epsilon));
        const double lk = std::log(static_cast<double>(k < 2 ? 2 : k));
        p.t1 = ceil_stable(c1 * lk * lk / std::pow(epsilon, 4.0));
        if (p.t1 < p.t0) p.t1 = p.t0;  // S0 must embed into S1
        p.max_seed_exponent = max_seed_exponent;
        return p;
    }

    double enumeration_bits(std::uint32_t k) const {
        return static_cast<double>(t0) * std::log2(static_cast<double>(k));
    }

    bool enumeration_feasible(std::uint32_t k) const {
        return enumeration_bits(k) <= static_cast<double>(max_seed_exponent) + 1e-9;
    }
};

}  // namespace densecsp
