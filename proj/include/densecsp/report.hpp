#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "densecsp/csp.hpp"

namespace densecsp {

/**
 * Solver output: the assignment, its exact audited objective, the query
 * accounting and the parameter echo. `probes` counts algorithm queries
 * only; verification lookups are tracked separately in `audit_probes`.
 */
struct RunReport {
    int schema = 1;
    std::string algorithm;
    std::string instance_path;

    std::uint64_t value = 0;
    Assignment assignment;
    std::uint64_t probes = 0;
    std::uint64_t audit_probes = 0;
    std::uint64_t wall_ms = 0;

    // parameter echo
    std::size_t n = 0;
    std::uint32_t k = 2;
    std::uint32_t r = 2;
    double epsilon = 0.0;
    double delta = 2.0 / 3.0;
    double c_schedule = 1.0;
    double c1 = 1.0;
    std::uint64_t seed = 0;

    // maxcut fields
    std::optional<std::uint64_t> branches;
    std::optional<std::uint64_t> t0;
    std::optional<bool> fallback;

    // rcsp fields
    std::optional<std::uint64_t> t1;
    std::optional<std::uint64_t> phase1_probes;
    std::optional<std::uint64_t> phase2_probes;
    std::optional<std::uint64_t> branch_count;
    std::optional<bool> fallback_phase2_skipped;

    // parallel fields
    std::optional<std::uint64_t> supersteps;
    std::optional<std::vector<std::uint64_t>> superstep_sizes;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["schema"] = schema;
        j["algorithm"] = algorithm;
        j["instance"] = instance_path;
        j["value"] = value;
        j["assignment"] = assignment.values;
        j["probes"] = probes;
        j["audit_probes"] = audit_probes;
        j["wall_ms"] = wall_ms;
        j["params"] = {{"n", n},         {"k", k},
                       {"r", r},         {"epsilon", epsilon},
                       {"delta", delta}, {"c_schedule", c_schedule},
                       {"c1", c1},       {"seed", seed}};
        if (branches) j["branches"] = *branches;
        if (t0) j["t0"] = *t0;
        if (fallback) j["fallback"] = *fallback;
        if (t1) j["t1"] = *t1;
        if (phase1_probes) j["phase1_probes"] = *phase1_probes;
        if (phase2_probes) j["phase2_probes"] = *phase2_probes;
        if (branch_count) j["branch_count"] = *branch_count;
        if (fallback_phase2_skipped)
            j["fallback_phase2_skipped"] = *fallback_phase2_skipped;
        if (supersteps) j["supersteps"] = *supersteps;
        if (superstep_sizes) j["superstep_sizes"] = *superstep_sizes;
        return j;
    }

    static RunReport from_json(const nlohmann::json& j) {
        RunReport rep;
        rep.schema = j.at("schema").get<int>();
        rep.algorithm = j.at("algorithm").get<std::string>();
        rep.instance_path = j.at("instance").get<std::string>();
        rep.value = j.at("value").get<std::uint64_t>();
        rep.probes = j.at("probes").get<std::uint64_t>();
        rep.audit_probes = j.at("audit_probes").get<std::uint64_t>();
        rep.wall_ms = j.value("wall_ms", std::uint64_t{0});
        const auto& p = j.at("params");
        rep.n = p.at("n").get<std::size_t>();
        rep.k = p.at("k").get<std::uint32_t>();
        rep.r = p.at("r").get<std::uint32_t>();
        rep.epsilon = p.at("epsilon").get<double>();
        rep.delta = p.at("delta").get<double>();
        rep.c_schedule = p.at("c_schedule").get<double>();
        rep.c1 = p.at("c1").get<double>();
        rep.seed = p.at("seed").get<std::uint64_t>();
        rep.assignment = Assignment(rep.n, rep.k);
        rep.assignment.values = j.at("assignment").get<std::vector<std::int32_t>>();
        if (j.contains("branches")) rep.branches = j["branches"].get<std::uint64_t>();
        if (j.contains("t0")) rep.t0 = j["t0"].get<std::uint64_t>();
        if (j.contains("fallback")) rep.fallback = j["fallback"].get<bool>();
        if (j.contains("t1")) rep.t1 = j["t1"].get<std::uint64_t>();
        if (j.contains("phase1_probes"))
            rep.phase1_probes = j["phase1_probes"].get<std::uint64_t>();
        if (j.contains("phase2_probes"))
            rep.phase2_probes = j["phase2_probes"].get<std::uint64_t>();
        if (j.contains("branch_count"))
            rep.branch_count = j["branch_count"].get<std::uint64_t>();
        if (j.contains("fallback_phase2_skipped"))
            rep.fallback_phase2_skipped = j["fallback_phase2_skipped"].get<bool>();
        if (j.contains("supersteps"))
            rep.supersteps = j["supersteps"].get<std::uint64_t>();
        if (j.contains("superstep_sizes"))
            rep.superstep_sizes =
                j["superstep_sizes"].get<std::vector<std::uint64_t>>();
        return rep;
    }

    void save(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open " + path);
        out << to_json().dump(2) << "\n";
    }

    static RunReport load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        nlohmann::json j;
        in >> j;
        return from_json(j);
    }
};

/// JSON text with the timing field removed; two runs with identical flags
/// and seed must agree on this byte-for-byte.
inline std::string report_fingerprint(const RunReport& report) {
    auto j = report.to_json();
    j.erase("wall_ms");
    return j.dump();
}

}  // namespace densecsp
