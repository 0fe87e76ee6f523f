#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "densecsp/csp.hpp"
#include "densecsp/graph.hpp"

namespace densecsp {

// Graph files: header "graph <n>", then one "u v" pair per line, 0-indexed,
// u < v. CSP files: header "csp <n> <k> <r>", then per constraint the r
// variable indices followed by the k^r payoff bits in row-major value order.

inline void write_graph(const DenseGraph& graph, std::ostream& out) {
    out << "graph " << graph.size() << "\n";
    const auto n = static_cast<std::uint32_t>(graph.size());
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v)
            if (graph.adjacent(u, v)) out << u << " " << v << "\n";
}

inline DenseGraph read_graph(std::istream& in) {
    std::string word;
    std::size_t n = 0;
    if (!(in >> word >> n) || word != "graph")
        throw std::runtime_error("bad graph header");
    DenseGraph graph(n);
    std::uint32_t u, v;
    while (in >> u >> v) {
        if (u >= v) throw std::runtime_error("graph edge must satisfy u < v");
        graph.add_edge(u, v);
    }
    return graph;
}

inline void write_csp(const CspInstance& instance, std::ostream& out) {
    out << "csp " << instance.num_variables() << " " << instance.alphabet_size()
        << " " << instance.arity() << "\n";
    for (const auto& c : instance.constraints()) {
        for (std::size_t i = 0; i < c.vars.size(); ++i)
            out << (i ? " " : "") << c.vars[i];
        for (const auto b : c.payoffs) out << " " << int(b);
        out << "\n";
    }
}

inline CspInstance read_csp(std::istream& in) {
    std::string word;
    std::size_t n = 0;
    std::uint32_t k = 0, r = 0;
    if (!(in >> word >> n >> k >> r) || word != "csp")
        throw std::runtime_error("bad csp header");
    CspInstance instance(n, k, r);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        VarTuple vars(r);
        for (auto& v : vars)
            if (!(ls >> v)) throw std::runtime_error("truncated constraint line");
        PayoffTable payoffs(instance.table_size());
        for (auto& b : payoffs) {
            int bit;
            if (!(ls >> bit)) throw std::runtime_error("truncated payoff table");
            if (bit != 0 && bit != 1) throw std::runtime_error("payoff bit must be 0/1");
            b = static_cast<std::uint8_t>(bit);
        }
        instance.add_constraint(std::move(vars), std::move(payoffs));
    }
    return instance;
}

inline void save_graph(const DenseGraph& graph, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    write_graph(graph, out);
}

inline DenseGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_graph(in);
}

inline void save_csp(const CspInstance& instance, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    write_csp(instance, out);
}

inline CspInstance load_csp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_csp(in);
}

/// Peeks the header keyword: "graph" or "csp".
inline std::string sniff_format(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string word;
    in >> word;
    return word;
}

}  // namespace densecsp
