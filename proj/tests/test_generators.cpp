#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "densecsp/generators.hpp"
#include "densecsp/oracle.hpp"
#include "support.hpp"

using namespace densecsp;
using namespace testsupport;

TEST_CASE("gen_gnp extremes") {
    auto rng = subrng(1, 0x51);
    const auto complete = gen_gnp(9, 1.0, rng);
    CHECK(complete.edge_count() == 9 * 8 / 2);
    const auto empty = gen_gnp(9, 0.0, rng);
    CHECK(empty.edge_count() == 0);
}

TEST_CASE("gen_gnp edge count concentration") {
    // |E| within 4*sqrt(n^2/8) of n(n-1)/4 in >= 95% of 100 seeds
    const std::size_t n = 200;
    const double mean = n * (n - 1) / 4.0;
    const double band = 4.0 * std::sqrt(n * n / 8.0);
    int inside = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto rng = subrng(seed, 0x51);
        const auto g = gen_gnp(n, 0.5, rng);
        if (std::abs(static_cast<double>(g.edge_count()) - mean) <= band) ++inside;
    }
    CHECK(inside >= 95);
}

TEST_CASE("generators are deterministic under the seed") {
    auto r1 = subrng(5, 0x51);
    auto r2 = subrng(5, 0x51);
    const auto a = gen_gnp(30, 0.5, r1);
    const auto b = gen_gnp(30, 0.5, r2);
    for (std::uint32_t u = 0; u < 30; ++u)
        for (std::uint32_t v = u + 1; v < 30; ++v)
            CHECK(a.adjacent(u, v) == b.adjacent(u, v));
}

TEST_CASE("planted instance small structure") {
    auto rng = subrng(3, 0x51);
    const auto inst = gen_planted_hard(18, 0.25, rng);
    CHECK(inst.part_v0.size() == 8);
    CHECK(inst.part_v1.size() == 8);
    CHECK(inst.part_v2.size() == 2);
    // the core induces exactly the 64 cross edges
    std::size_t core_edges = 0;
    for (const auto u : inst.part_v0)
        for (const auto v : inst.part_v1)
            if (inst.graph.adjacent(u, v)) ++core_edges;
    CHECK(core_edges == 64);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = i + 1; j < 8; ++j) {
            CHECK_FALSE(inst.graph.adjacent(inst.part_v0[i], inst.part_v0[j]));
            CHECK_FALSE(inst.graph.adjacent(inst.part_v1[i], inst.part_v1[j]));
        }
    // no V2-internal edges
    CHECK_FALSE(inst.graph.adjacent(inst.part_v2[0], inst.part_v2[1]));
}

TEST_CASE("planted value equals the formula on the noise degrees") {
    auto rng = subrng(4, 0x51);
    const auto inst = gen_planted_hard(45, 0.2, rng);
    const std::uint64_t core = 20 * 20;  // (4n/9)^2 with n = 45
    std::uint64_t noise = 0;
    for (std::size_t i = 0; i < inst.part_v2.size(); ++i) {
        const auto v = inst.part_v2[i];
        const auto& biased_part =
            inst.planted_sides[i] == 0 ? inst.part_v0 : inst.part_v1;
        for (const auto u : biased_part)
            if (inst.graph.adjacent(u, v)) ++noise;
    }
    CHECK(inst.planted_value == core + noise);
    CHECK(inst.planted_value == evaluate_cut(inst.graph, inst.planted_assignment));
}

TEST_CASE("planted guards") {
    auto rng = subrng(5, 0x51);
    CHECK_THROWS_WITH(gen_planted_hard(10, 0.1, rng), "n not divisible by 9");
    CHECK_THROWS(gen_planted_hard(18, 0.7, rng));
}

TEST_CASE("random rcsp density extremes") {
    auto rng = subrng(6, 0x51);
    const auto none = gen_random_rcsp(8, 2, 2, 0.0, RcspPredicate::parity, rng);
    CHECK(none.num_constraints() == 0);

    const auto cut8 =
        gen_random_rcsp(8, 2, 2, 1.0, RcspPredicate::cut_generalization, rng);
    DenseGraph k8(8);
    for (std::uint32_t u = 0; u < 8; ++u)
        for (std::uint32_t v = u + 1; v < 8; ++v) k8.add_edge(u, v);
    const auto encoded = encode_maxcut_as_csp(k8);
    REQUIRE(cut8.num_constraints() == encoded.num_constraints());
    for (std::size_t i = 0; i < cut8.num_constraints(); ++i) {
        CHECK(cut8.constraints()[i].vars == encoded.constraints()[i].vars);
        CHECK(cut8.constraints()[i].payoffs == encoded.constraints()[i].payoffs);
    }
}

TEST_CASE("random rcsp constraint count concentration") {
    // mean 60 = C(10,3)/2, sigma = sqrt(120 * 1/4)
    const double mean = 60.0;
    const double sigma = std::sqrt(120.0 * 0.25);
    int inside = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto rng = subrng(seed, 0x52);
        const auto inst =
            gen_random_rcsp(10, 2, 3, 0.5, RcspPredicate::random_table, rng);
        if (std::abs(static_cast<double>(inst.num_constraints()) - mean) <=
            3 * sigma)
            ++inside;
    }
    CHECK(inside >= 97);
}

TEST_CASE("parity predicate rejects k != 2") {
    auto rng = subrng(8, 0x51);
    CHECK_THROWS(gen_random_rcsp(6, 3, 2, 0.5, RcspPredicate::parity, rng));
}

TEST_CASE("parity tables are parities") {
    auto rng = subrng(9, 0x51);
    const auto inst = gen_random_rcsp(6, 2, 3, 1.0, RcspPredicate::parity, rng);
    for (const auto& c : inst.constraints()) {
        // payoff depends only on the value-sum parity
        const int base = c.payoffs[0];
        for (std::size_t idx = 0; idx < c.payoffs.size(); ++idx) {
            int sum = 0;
            for (std::size_t tmp = idx; tmp > 0; tmp /= 2) sum += tmp % 2;
            CHECK(c.payoffs[idx] == (sum % 2 == 0 ? base : 1 - base));
        }
    }
}

TEST_CASE("correlation clustering encodings") {
    SignedGraph all_plus;
    all_plus.n = 5;
    for (std::uint32_t u = 0; u < 5; ++u)
        for (std::uint32_t v = u + 1; v < 5; ++v)
            all_plus.edges.push_back({u, v, true});
    const auto plus_inst = encode_correlation_clustering(all_plus, 3);
    CHECK(brute_force_csp(plus_inst).second == all_plus.edges.size());

    SignedGraph all_minus = all_plus;
    for (auto& e : all_minus.edges) e.positive = false;
    const auto minus_inst = encode_correlation_clustering(all_minus, 5);
    CHECK(brute_force_csp(minus_inst).second == all_minus.edges.size());
}

TEST_CASE("correlation clustering optimum matches a direct enumerator") {
    auto rng = subrng(10, 0x51);
    const auto sg = gen_signed_gnp(8, 0.6, 0.5, rng);
    const auto inst = encode_correlation_clustering(sg, 2);
    CHECK(brute_force_csp(inst).second == naive_corrclust_optimum(sg, 2));
}
