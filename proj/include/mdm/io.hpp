#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mdm/graph.hpp"

namespace mdm {

// Graph JSON schema:
//   {"n": int, "edges": [[u,v],...],
//    "x": [n positive reals]            (optional vertex weights)
//    "w": [[u,v,weight],...]}           (optional edge weights)
inline nlohmann::json graph_to_json(const Graph& g) {
    nlohmann::json j;
    j["n"] = g.vertex_count();
    auto& edges = j["edges"] = nlohmann::json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
    if (g.has_vertex_weights()) j["x"] = g.vertex_weights();
    if (g.has_edge_weights()) {
        auto& w = j["w"] = nlohmann::json::array();
        for (int e = 0; e < g.edge_count(); ++e)
            w.push_back({g.edges()[e].first, g.edges()[e].second, g.edge_weights()[e]});
    }
    return j;
}

inline Graph graph_from_json(const nlohmann::json& j) {
    if (!j.contains("n") || !j.contains("edges"))
        throw std::invalid_argument("graph json: need fields \"n\" and \"edges\"");
    const int n = j.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("graph json: edge entries must be [u, v]");
        edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    Graph g(n, std::move(edges));
    if (j.contains("x")) g.set_vertex_weights(j.at("x").get<std::vector<double>>());
    if (j.contains("w")) {
        std::vector<double> weights(g.edge_count(), 1.0);
        for (const auto& t : j.at("w")) {
            if (!t.is_array() || t.size() != 3)
                throw std::invalid_argument("graph json: \"w\" entries must be [u, v, weight]");
            const int idx = g.edge_index(t[0].get<int>(), t[1].get<int>());
            if (idx < 0) throw std::invalid_argument("graph json: weighted edge not in edge list");
            weights[idx] = t[2].get<double>();
        }
        g.set_edge_weights(std::move(weights));
    }
    return g;
}

inline void write_graph_json(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << graph_to_json(g).dump(2) << "\n";
}

inline Graph read_graph_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    nlohmann::json j;
    in >> j;
    return graph_from_json(j);
}

// Edge-list CSV: one "u,v[,w]" row per edge; an optional header row is skipped.
// Vertex count is 1 + max vertex id.
inline void write_graph_csv(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << (g.has_edge_weights() ? "u,v,w\n" : "u,v\n");
    out << std::setprecision(17);
    for (int e = 0; e < g.edge_count(); ++e) {
        out << g.edges()[e].first << "," << g.edges()[e].second;
        if (g.has_edge_weights()) out << "," << g.edge_weights()[e];
        out << "\n";
    }
}

inline Graph read_graph_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::vector<Edge> edges;
    std::vector<std::pair<Edge, double>> weighted;
    std::string line;
    bool first = true;
    int max_vertex = -1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string a, b, c;
        std::getline(row, a, ',');
        std::getline(row, b, ',');
        const bool has_w = static_cast<bool>(std::getline(row, c, ','));
        int u, v;
        try {
            u = std::stoi(a);
            v = std::stoi(b);
        } catch (const std::exception&) {
            if (first) {
                first = false;
                continue;  // header row
            }
            throw std::invalid_argument("graph csv: bad row: " + line);
        }
        first = false;
        edges.push_back({u, v});
        if (has_w) weighted.push_back({{u, v}, std::stod(c)});
        max_vertex = std::max({max_vertex, u, v});
    }
    Graph g(max_vertex + 1, std::move(edges));
    if (!weighted.empty()) {
        if (static_cast<int>(weighted.size()) != g.edge_count())
            throw std::invalid_argument("graph csv: weights on some rows only");
        std::vector<double> w(g.edge_count(), 1.0);
        for (const auto& [e, weight] : weighted) w[g.edge_index(e.first, e.second)] = weight;
        g.set_edge_weights(std::move(w));
    }
    return g;
}

inline bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline Graph read_graph_file(const std::string& path) {
    if (ends_with(path, ".json")) return read_graph_json(path);
    if (ends_with(path, ".csv")) return read_graph_csv(path);
    throw std::invalid_argument("unknown graph file extension (want .json or .csv): " + path);
}

inline void write_graph_file(const Graph& g, const std::string& path) {
    if (ends_with(path, ".json")) return write_graph_json(g, path);
    if (ends_with(path, ".csv")) return write_graph_csv(g, path);
    throw std::invalid_argument("unknown graph file extension (want .json or .csv): " + path);
}

// ---------------------------------------------------------------------------
// Tabular results with the run configuration embedded, as CSV (# key=value
// comment lines before the header) or JSON ({"config": ..., "columns": ...,
// "rows": ...}).
// ---------------------------------------------------------------------------

struct ResultTable {
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void set(const std::string& key, const std::string& value) { config.push_back({key, value}); }

    static std::string num(double v) {
        std::ostringstream os;
        os << std::setprecision(17) << v;
        return os.str();
    }
};

inline void write_table_csv(const ResultTable& t, std::ostream& out) {
    for (const auto& [k, v] : t.config) out << "# " << k << "=" << v << "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        out << t.columns[c] << (c + 1 < t.columns.size() ? "," : "");
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << row[c] << (c + 1 < row.size() ? "," : "");
        out << "\n";
    }
}

inline void write_table_json(const ResultTable& t, std::ostream& out) {
    nlohmann::json j;
    auto& cfg = j["config"] = nlohmann::json::object();
    for (const auto& [k, v] : t.config) cfg[k] = v;
    j["columns"] = t.columns;
    auto& rows = j["rows"] = nlohmann::json::array();
    for (const auto& row : t.rows) rows.push_back(row);
    out << j.dump(2) << "\n";
}

inline void write_table(const ResultTable& t, const std::string& path, const std::string& format) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    if (format == "json")
        write_table_json(t, out);
    else
        write_table_csv(t, out);
}

}  // namespace mdm
