#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdm/graph.hpp"
#include "mdm/rng.hpp"
#include "mdm/rooted_tree.hpp"
#include "mdm/stats.hpp"

namespace mdm {

// ---------------------------------------------------------------------------
// Linear-time recursion on trees. Everything propagates the pair
// (R of subtree root, accumulated log Z), never Z itself, so million-vertex
// trees stay in range:
//   R_v     = x_v / (x_v + sum_c (w_vc / x_c) R_c)
//   log Z_v = sum_c log Z_c + log x_v - log R_v
// ---------------------------------------------------------------------------

struct TreeCavity {
    std::vector<double> subtree_r;  // R of each vertex within its own subtree
    double log_z = 0.0;
};

inline TreeCavity tree_cavity(const RootedTree& t, double x = 1.0) {
    if (!(x > 0.0)) throw std::invalid_argument("tree_cavity: activity must be > 0");
    const int n = t.vertex_count();
    TreeCavity out;
    out.subtree_r.assign(n, 1.0);
    std::vector<double> log_sub(n, 0.0);
    for (int v : t.bottom_up_order()) {
        const double xv = t.graph.vertex_weight(v, x);
        double s = 0.0;
        double logs = 0.0;
        for (int c : t.children[v]) {
            const double w = t.graph.edge_weight_at(t.graph.edge_index(v, c));
            s += w / t.graph.vertex_weight(c, x) * out.subtree_r[c];
            logs += log_sub[c];
        }
        out.subtree_r[v] = xv / (xv + s);
        log_sub[v] = logs + std::log(xv + s);
    }
    out.log_z = log_sub[t.root];
    return out;
}

inline double tree_log_partition_function(const RootedTree& t, double x = 1.0) {
    return tree_cavity(t, x).log_z;
}

inline double tree_root_probability(const RootedTree& t, double x) {
    return tree_cavity(t, x).subtree_r[t.root];
}

// Full up/down message pass. mu_up[v] is the cavity message v -> parent(v);
// total[v] is the sum of incoming messages from all neighbours, so
// R_v = 1/(1 + total[v]).
struct TreeMessages {
    std::vector<double> mu_up, up_sum, total, r;
};

inline TreeMessages tree_messages(const RootedTree& t, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("tree_messages: activity must be > 0");
    const int n = t.vertex_count();
    const auto order = t.bottom_up_order();
    TreeMessages m;
    m.mu_up.assign(n, 0.0);
    m.up_sum.assign(n, 0.0);
    m.total.assign(n, 0.0);
    m.r.assign(n, 0.0);
    auto coupling = [&](int u, int v) {
        return t.graph.edge_weight_at(t.graph.edge_index(u, v)) /
               (t.graph.vertex_weight(u, x) * t.graph.vertex_weight(v, x));
    };
    for (int v : order) {
        double s = 0.0;
        for (int c : t.children[v]) s += m.mu_up[c];
        m.up_sum[v] = s;
        if (t.parent[v] >= 0) m.mu_up[v] = coupling(v, t.parent[v]) / (1.0 + s);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int v = *it;
        if (v == t.root) m.total[v] = m.up_sum[v];
        m.r[v] = 1.0 / (1.0 + m.total[v]);
        for (int c : t.children[v]) {
            const double mu_down = coupling(v, c) / (1.0 + m.total[v] - m.mu_up[c]);
            m.total[c] = m.up_sum[c] + mu_down;
        }
    }
    return m;
}

inline std::vector<double> tree_vertex_probabilities(const RootedTree& t, double x) {
    return tree_messages(t, x).r;
}

// Dimer occupation of every edge of the tree, in edges() order:
//   E_uv = w_uv (R_u / x_u) (1/x_v) / (1 + total_v - mu_{u->v})   (u child of v)
inline std::vector<double> tree_edge_probabilities(const RootedTree& t, double x,
                                                   const TreeMessages& m) {
    std::vector<double> e(t.graph.edge_count(), 0.0);
    for (int i = 0; i < t.graph.edge_count(); ++i) {
        auto [a, b] = t.graph.edges()[i];
        if (t.parent[a] != b) std::swap(a, b);  // a child, b parent
        const double w = t.graph.edge_weight_at(i);
        e[i] = w * (m.r[a] / t.graph.vertex_weight(a, x)) /
               t.graph.vertex_weight(b, x) / (1.0 + m.total[b] - m.mu_up[a]);
    }
    return e;
}

inline std::vector<double> tree_edge_probabilities(const RootedTree& t, double x) {
    return tree_edge_probabilities(t, x, tree_messages(t, x));
}

// ---------------------------------------------------------------------------
// Truncated-tree sequences
// ---------------------------------------------------------------------------

// r -> R_x(T(r), root). Even entries are nonincreasing, odd entries
// nondecreasing, and every odd entry is <= every even entry; construction
// verifies this (the inequalities survive IEEE rounding because each update
// is monotone).
struct TruncatedSequence {
    std::vector<double> root_probabilities;  // indexed by depth r
    double activity = 1.0;
};

inline TruncatedSequence truncated_sequence(const RootedTree& t, double x, int r_max) {
    if (!(x > 0.0)) throw std::invalid_argument("truncated_sequence: activity must be > 0");
    if (r_max < 0) throw std::invalid_argument("truncated_sequence: r_max must be >= 0");
    TruncatedSequence seq;
    seq.activity = x;
    const auto order = t.bottom_up_order();
    std::vector<double> r_val(t.vertex_count(), 1.0);
    for (int r = 0; r <= r_max; ++r) {
        for (int v : order) {
            if (t.generation[v] > r) continue;
            const double xv = t.graph.vertex_weight(v, x);
            double s = 0.0;
            if (t.generation[v] < r)
                for (int c : t.children[v]) {
                    const double w = t.graph.edge_weight_at(t.graph.edge_index(v, c));
                    s += w / t.graph.vertex_weight(c, x) * r_val[c];
                }
            r_val[v] = xv / (xv + s);
        }
        seq.root_probabilities.push_back(r_val[t.root]);
    }
    const auto& rp = seq.root_probabilities;
    for (std::size_t i = 0; i + 2 < rp.size(); i += 2)
        if (rp[i + 2] > rp[i]) throw std::logic_error("truncated_sequence: even entries not nonincreasing");
    for (std::size_t i = 1; i + 2 < rp.size(); i += 2)
        if (rp[i + 2] < rp[i]) throw std::logic_error("truncated_sequence: odd entries not nondecreasing");
    for (std::size_t i = 1; i < rp.size(); i += 2)
        for (std::size_t j = 0; j < rp.size(); j += 2)
            if (rp[i] > rp[j]) throw std::logic_error("truncated_sequence: odd entry above even entry");
    return seq;
}

// R_x(T(r), o) for the one-sided infinite path: R_0 = 1, R_{r+1} = x^2/(x^2+R_r).
inline std::vector<double> path_truncation_sequence(double x, int r_max) {
    std::vector<double> seq{1.0};
    for (int r = 0; r < r_max; ++r) seq.push_back(x * x / (x * x + seq.back()));
    return seq;
}

// ---------------------------------------------------------------------------
// Localisation bounds on tree-like graphs
// ---------------------------------------------------------------------------

struct LocalisationBounds {
    std::optional<double> lower;  // from the (2r+1)-ball, when it is a tree
    std::optional<double> upper;  // from the (2r)-ball, when it is a tree
};

inline LocalisationBounds localisation_bounds(const Graph& g, int o, int r, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("localisation_bounds: activity must be > 0");
    g.check_vertex(o);
    LocalisationBounds out;
    BallResult even_ball = ball(g, o, 2 * r);
    if (is_tree(even_ball.graph))
        out.upper = tree_root_probability(root_tree(std::move(even_ball.graph), even_ball.center), x);
    BallResult odd_ball = ball(g, o, 2 * r + 1);
    if (is_tree(odd_ball.graph))
        out.lower = tree_root_probability(root_tree(std::move(odd_ball.graph), odd_ball.center), x);
    return out;
}

struct DensityBracket {
    double lower = 0.0;
    double upper = 0.0;
    double covered_fraction = 0.0;
    std::size_t checked = 0;
    std::size_t covered = 0;
    double lower_stderr = 0.0;
    double upper_stderr = 0.0;
};

// Average localisation bounds over vertices whose (2r+1)-ball is a tree.
// sample = 0 evaluates every vertex; otherwise `sample` vertices are drawn
// from the seeded stream.
inline DensityBracket empirical_density_bracket(const Graph& g, int r, double x,
                                                std::size_t sample, std::uint64_t seed) {
    if (g.vertex_count() == 0) throw std::invalid_argument("empirical_density_bracket: empty graph");
    std::vector<int> vertices;
    if (sample == 0 || sample >= static_cast<std::size_t>(g.vertex_count())) {
        vertices.resize(g.vertex_count());
        for (int v = 0; v < g.vertex_count(); ++v) vertices[v] = v;
    } else {
        RngStream rng = RngStream(seed).stream(0xB0A7);
        vertices.resize(sample);
        for (auto& v : vertices)
            v = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(g.vertex_count())));
    }
    RunningStat lo, hi;
    DensityBracket out;
    out.checked = vertices.size();
    for (int v : vertices) {
        const auto bounds = localisation_bounds(g, v, r, x);
        if (!bounds.lower) continue;  // implies no upper average either
        lo.add(*bounds.lower);
        hi.add(*bounds.upper);
        ++out.covered;
    }
    out.covered_fraction =
        static_cast<double>(out.covered) / static_cast<double>(out.checked);
    if (out.covered > 0) {
        out.lower = lo.mean();
        out.upper = hi.mean();
        out.lower_stderr = lo.stderr_();
        out.upper_stderr = hi.stderr_();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Forest partition function with vertex removals (log scale)
// ---------------------------------------------------------------------------

// log Z of the subgraph induced by non-removed vertices; every component must
// be a tree. Empty graph gives 0.
inline double forest_log_partition(const Graph& g, double x, const std::vector<char>& removed) {
    if (!(x > 0.0)) throw std::invalid_argument("forest_log_partition: activity must be > 0");
    const int n = g.vertex_count();
    std::vector<int> state(n, 0);  // 0 unvisited, 1 visited
    std::vector<int> order, parent(n, -1);
    std::vector<double> r_val(n, 0.0), log_sub(n, 0.0);
    double log_z = 0.0;
    for (int s = 0; s < n; ++s) {
        if (removed[s] || state[s]) continue;
        order.clear();
        order.push_back(s);
        state[s] = 1;
        parent[s] = -1;
        std::size_t edges_in_comp = 0;
        for (std::size_t head = 0; head < order.size(); ++head) {
            const int u = order[head];
            for (int w : g.neighbors(u)) {
                if (removed[w]) continue;
                ++edges_in_comp;
                if (!state[w]) {
                    state[w] = 1;
                    parent[w] = u;
                    order.push_back(w);
                }
            }
        }
        if (edges_in_comp != 2 * (order.size() - 1))
            throw std::invalid_argument("forest_log_partition: component has a cycle");
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const int v = *it;
            const double xv = g.vertex_weight(v, x);
            double sum = 0.0, logs = 0.0;
            for (int c : g.neighbors(v)) {
                if (removed[c] || parent[c] != v) continue;
                sum += g.edge_weight(v, c) / g.vertex_weight(c, x) * r_val[c];
                logs += log_sub[c];
            }
            r_val[v] = xv / (xv + sum);
            log_sub[v] = logs + std::log(xv + sum);
        }
        log_z += log_sub[s];
    }
    return log_z;
}

inline double forest_log_partition(const Graph& g, double x) {
    return forest_log_partition(g, x, std::vector<char>(g.vertex_count(), 0));
}

}  // namespace mdm
