#include <catch2/catch_amalgamated.hpp>

#include "densecsp/generators.hpp"
#include "densecsp/oracle.hpp"
#include "densecsp/rcsp.hpp"
#include "support.hpp"

using namespace densecsp;
using namespace testsupport;

TEST_CASE("superstep boundaries grow by ceil((1+eps) b)") {
    // 50 -> 75 -> 113 -> 170 -> 255 -> 383 -> 575 -> 863 -> 1000
    const auto bounds = superstep_boundaries(50, 1000, 0.5);
    CHECK(bounds == std::vector<std::uint64_t>{75, 113, 170, 255, 383, 575, 863,
                                               1000});
    CHECK(bounds.size() == 8);

    CHECK(superstep_boundaries(10, 10, 0.5).empty());
    const auto tiny = superstep_boundaries(1, 4, 0.5);
    CHECK(tiny == std::vector<std::uint64_t>{2, 3, 4});  // ceil guarantees growth
}

TEST_CASE("worker count does not change the output") {
    auto grng = subrng(1, 0x51);
    const auto inst =
        gen_random_rcsp(24, 2, 2, 0.8, RcspPredicate::random_table, grng);
    SolverConfig one;
    one.threads = 1;
    SolverConfig four;
    four.threads = 4;
    const auto a = solve_rcsp_parallel(inst, 0.5, one, 11);
    const auto b = solve_rcsp_parallel(inst, 0.5, four, 11);
    CHECK(a.assignment == b.assignment);
    CHECK(a.value == b.value);
    CHECK(a.probes == b.probes);
    CHECK(*a.supersteps == *b.supersteps);
    CHECK(*a.superstep_sizes == *b.superstep_sizes);
}

TEST_CASE("superstep sizes partition the tail and count the boundaries") {
    auto grng = subrng(2, 0x51);
    const auto inst =
        gen_random_rcsp(30, 2, 2, 0.5, RcspPredicate::random_table, grng);
    SolverConfig config;
    const auto rep = solve_rcsp_parallel(inst, 0.5, config, 3);
    REQUIRE(rep.superstep_sizes.has_value());
    std::uint64_t total = 0;
    for (const auto s : *rep.superstep_sizes) total += s;
    CHECK(total == 30 - *rep.t1);
    CHECK(*rep.supersteps == rep.superstep_sizes->size());
}

TEST_CASE("singleton supersteps coincide with the sequential pass") {
    // growing the frozen prefix one variable at a time IS the sequential
    // greedy; drive the shared engine with singleton boundaries and several
    // workers and it must reproduce solve_rcsp's phase 2 bit for bit
    auto grng = subrng(3, 0x51);
    const auto inst =
        gen_random_rcsp(18, 2, 2, 0.9, RcspPredicate::random_table, grng);
    const std::uint64_t master = 7;
    const double eps = 0.5;

    const auto seq = solve_rcsp(inst, eps, SolverConfig{}, master);

    const auto params = SeedParams::make(eps, 2, 1.0, 24);
    const auto t1 = std::min<std::uint64_t>(params.t1, 18);
    const auto draw = detail::draw_rcsp_samples(18, params.t0, t1, master);

    // phase-1 output, recovered from the sequential run's assignment
    Assignment assignment(18, 2);
    std::vector<std::uint32_t> placed(draw.s1);
    for (const auto v : draw.s1) assignment.values[v] = seq.assignment.values[v];

    SampleSchedule schedule;
    schedule.n = 18;
    schedule.epsilon = eps;
    schedule.k = 2;
    schedule.variant = ScheduleVariant::rcsp;

    ProbeCounters counters;
    run_greedy_pass(inst, assignment, placed, draw.rest, schedule,
                    singleton_boundaries(t1, 18), 4, master, counters, false);
    CHECK(assignment == seq.assignment);
    CHECK(counters.probes == *seq.phase2_probes);
}

TEST_CASE("parallel quality tracks sequential quality") {
    std::vector<double> seq_shortfall, par_shortfall;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto grng = subrng(seed, 0x51);
        const auto inst =
            gen_random_rcsp(10, 2, 2, 1.0, RcspPredicate::random_table, grng);
        const auto opt = brute_force_csp(inst).second;
        SolverConfig config;
        seq_shortfall.push_back(double(opt) -
                                double(solve_rcsp(inst, 0.5, config, seed).value));
        par_shortfall.push_back(
            double(opt) - double(solve_rcsp_parallel(inst, 0.5, config, seed).value));
    }
    const auto s = stats(seq_shortfall);
    const auto p = stats(par_shortfall);
    const double band = 2.0 * std::max(s.sd, p.sd);
    CHECK(std::abs(s.mean - p.mean) <= band);
}
