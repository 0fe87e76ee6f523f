#pragma once

#include <string>
#include <vector>

#include "densecsp/csp.hpp"
#include "densecsp/io.hpp"
#include "densecsp/report.hpp"

namespace densecsp {

/// Re-checks a saved RunReport against its instance file: the assignment
/// must be total and in-range, the reported value must match an independent
/// re-evaluation, and the probe accounting fields must be present and sane.
/// Returns the list of failures; empty means the report verifies.
inline std::vector<std::string> verify_report(const RunReport& report) {
    std::vector<std::string> failures;

    if (report.assignment.values.size() != report.n) {
        failures.push_back("invalid assignment: wrong length");
        return failures;
    }
    for (const auto v : report.assignment.values)
        if (v < 0 || static_cast<std::uint32_t>(v) >= report.k) {
            failures.push_back("invalid assignment: value out of [0,k)");
            return failures;
        }

    if (report.instance_path.empty()) {
        failures.push_back("missing instance file reference");
        return failures;
    }

    std::uint64_t recomputed = 0;
    const auto format = sniff_format(report.instance_path);
    if (format == "graph") {
        const auto graph = load_graph(report.instance_path);
        if (graph.size() != report.n) {
            failures.push_back("instance size mismatch");
            return failures;
        }
        recomputed = evaluate_cut(graph, report.assignment);
    } else if (format == "csp") {
        const auto instance = load_csp(report.instance_path);
        if (instance.num_variables() != report.n) {
            failures.push_back("instance size mismatch");
            return failures;
        }
        recomputed = evaluate_csp(instance, report.assignment);
    } else {
        failures.push_back("unrecognized instance format: " + format);
        return failures;
    }

    if (recomputed != report.value) failures.push_back("value mismatch");
    if (report.phase1_probes && report.phase2_probes &&
        *report.phase1_probes + *report.phase2_probes != report.probes)
        failures.push_back("probe accounting mismatch");
    return failures;
}

inline std::vector<std::string> verify_report_file(const std::string& path) {
    return verify_report(RunReport::load(path));
}

}  // namespace densecsp
