#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "mdm/exact.hpp"
#include "mdm/graph.hpp"
#include "mdm/rooted_tree.hpp"
#include "mdm/tree_engine.hpp"

namespace mdm {

// Public monomer-dimer operations. Forests of any size run through the
// linear-time tree recursion; everything else goes through the subset
// engine, which caps at 24 vertices.

inline bool is_forest(const Graph& g) {
    if (g.vertex_count() == 0) return false;
    const auto comps = connected_components(g);
    int edges_expected = g.vertex_count() - static_cast<int>(comps.size());
    return g.edge_count() == edges_expected;
}

inline double log_partition_function(const Graph& g, double x = 1.0) {
    check_activity(x);
    if (g.vertex_count() == 0) return 0.0;
    if (is_forest(g)) return forest_log_partition(g, x);
    return std::log(SubsetPartition<double>(g, x).z_full());
}

inline double partition_function(const Graph& g, double x) {
    check_activity(x);
    if (g.vertex_count() == 0) return 1.0;
    if (is_forest(g)) return std::exp(forest_log_partition(g, x));
    return SubsetPartition<double>(g, x).z_full();
}

// General weighted model: weights stored on the graph, activity fallback 1.
inline double partition_function_general(const Graph& g) {
    return partition_function(g, 1.0);
}

inline std::complex<double> partition_function(const Graph& g, std::complex<double> z) {
    check_activity(z);
    if (g.vertex_count() == 0) return {1.0, 0.0};
    return SubsetPartition<std::complex<double>>(g, z).z_full();
}

// R at every vertex, dispatching on structure.
inline std::vector<double> vertex_probabilities(const Graph& g, double x) {
    check_activity(x);
    if (is_forest(g)) {
        std::vector<double> r(g.vertex_count(), 0.0);
        for (const auto& comp : connected_components(g)) {
            std::vector<int> new_id;
            Graph sub = induced_subgraph(g, comp, &new_id);
            const auto rs = tree_vertex_probabilities(root_tree(std::move(sub), 0), x);
            for (std::size_t i = 0; i < comp.size(); ++i) r[comp[i]] = rs[i];
        }
        return r;
    }
    SubsetPartition<double> zp(g, x);
    std::vector<double> r(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) r[v] = zp.monomer_probability(v);
    return r;
}

inline double monomer_probability(const Graph& g, int o, double x) {
    check_activity(x);
    g.check_vertex(o);
    if (is_forest(g)) return vertex_probabilities(g, x)[o];
    return SubsetPartition<double>(g, x).monomer_probability(o);
}

inline std::complex<double> complex_monomer_probability(const Graph& g, int o,
                                                        std::complex<double> z) {
    check_activity(z);
    g.check_vertex(o);
    return SubsetPartition<std::complex<double>>(g, z).monomer_probability(o);
}

inline std::vector<double> edge_probabilities(const Graph& g, double x) {
    check_activity(x);
    if (is_forest(g)) {
        std::vector<double> e(g.edge_count(), 0.0);
        for (const auto& comp : connected_components(g)) {
            std::vector<int> new_id;
            Graph sub = induced_subgraph(g, comp, &new_id);
            RootedTree t = root_tree(std::move(sub), 0);
            const auto es = tree_edge_probabilities(t, x);
            for (int i = 0; i < t.graph.edge_count(); ++i) {
                const auto [a, b] = t.graph.edges()[i];
                e[g.edge_index(comp[a], comp[b])] = es[i];
            }
        }
        return e;
    }
    SubsetPartition<double> zp(g, x);
    std::vector<double> e(g.edge_count());
    for (int i = 0; i < g.edge_count(); ++i)
        e[i] = zp.dimer_probability(g.edges()[i].first, g.edges()[i].second);
    return e;
}

inline double dimer_probability(const Graph& g, Edge e, double x) {
    check_activity(x);
    const int idx = g.edge_index(e.first, e.second);
    if (idx < 0) throw std::invalid_argument("dimer_probability: edge not in graph");
    if (is_forest(g)) return edge_probabilities(g, x)[idx];
    return SubsetPartition<double>(g, x).dimer_probability(e.first, e.second);
}

// Expected fraction of vertices covered by monomers: (1/|V|) sum_o R(g,o).
inline double monomer_density(const Graph& g, double x) {
    if (g.vertex_count() == 0) throw std::invalid_argument("monomer_density: empty graph");
    const auto r = vertex_probabilities(g, x);
    double sum = 0.0;
    for (double v : r) sum += v;
    return sum / static_cast<double>(g.vertex_count());
}

inline double pressure_per_particle(const Graph& g, double x) {
    if (g.vertex_count() == 0) throw std::invalid_argument("pressure_per_particle: empty graph");
    return log_partition_function(g, x) / static_cast<double>(g.vertex_count());
}

}  // namespace mdm
