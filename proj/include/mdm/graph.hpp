#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mdm {

using Edge = std::pair<int, int>;  // stored with first < second

// Finite simple graph on dense vertex ids 0..n-1, with optional per-vertex
// monomer weights and per-edge dimer weights (all strictly positive).
class Graph {
public:
    Graph() = default;

    Graph(int vertex_count, std::vector<Edge> edges) : n_(vertex_count) {
        if (vertex_count < 0) throw std::invalid_argument("Graph: negative vertex count");
        for (auto& [u, v] : edges) {
            if (u == v) throw std::invalid_argument("Graph: self-loop");
            if (u > v) std::swap(u, v);
            if (u < 0 || v >= n_) throw std::invalid_argument("Graph: edge endpoint out of range");
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw std::invalid_argument("Graph: duplicate edge");
        edges_ = std::move(edges);
        adj_.assign(n_, {});
        for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
            adj_[edges_[e].first].push_back(edges_[e].second);
            adj_[edges_[e].second].push_back(edges_[e].first);
        }
        for (auto& a : adj_) std::sort(a.begin(), a.end());
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
    int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }

    // Index into edges() of {u,v}, or -1 if absent.
    int edge_index(int u, int v) const {
        if (u > v) std::swap(u, v);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
        if (it == edges_.end() || *it != Edge{u, v}) return -1;
        return static_cast<int>(it - edges_.begin());
    }
    bool has_edge(int u, int v) const { return edge_index(u, v) >= 0; }

    void set_vertex_weights(std::vector<double> w) {
        if (static_cast<int>(w.size()) != n_)
            throw std::invalid_argument("Graph: vertex weight count mismatch");
        for (double x : w)
            if (!(x > 0.0)) throw std::invalid_argument("Graph: nonpositive vertex weight");
        vertex_weights_ = std::move(w);
    }
    void set_edge_weights(std::vector<double> w) {
        if (w.size() != edges_.size())
            throw std::invalid_argument("Graph: edge weight count mismatch");
        for (double x : w)
            if (!(x > 0.0)) throw std::invalid_argument("Graph: nonpositive edge weight");
        edge_weights_ = std::move(w);
    }
    bool has_vertex_weights() const { return vertex_weights_.has_value(); }
    bool has_edge_weights() const { return edge_weights_.has_value(); }
    const std::vector<double>& vertex_weights() const { return *vertex_weights_; }
    const std::vector<double>& edge_weights() const { return *edge_weights_; }

    // Effective weights: fall back to the uniform activity (vertices) or 1 (edges).
    double vertex_weight(int v, double fallback) const {
        return vertex_weights_ ? (*vertex_weights_)[v] : fallback;
    }
    double edge_weight_at(int edge_idx) const {
        return edge_weights_ ? (*edge_weights_)[edge_idx] : 1.0;
    }
    double edge_weight(int u, int v) const {
        const int e = edge_index(u, v);
        if (e < 0) throw std::invalid_argument("Graph: no such edge");
        return edge_weight_at(e);
    }

    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw std::invalid_argument("Graph: invalid vertex id");
    }

    static Graph path(int n) {
        std::vector<Edge> e;
        for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
        return Graph(n, std::move(e));
    }
    static Graph cycle(int n) {
        std::vector<Edge> e;
        for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
        if (n >= 3) e.push_back({0, n - 1});
        return Graph(n, std::move(e));
    }
    static Graph complete(int n) {
        std::vector<Edge> e;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) e.push_back({u, v});
        return Graph(n, std::move(e));
    }
    static Graph star(int leaves) {
        std::vector<Edge> e;
        for (int i = 1; i <= leaves; ++i) e.push_back({0, i});
        return Graph(leaves + 1, std::move(e));
    }
    static Graph disjoint_edges(int m) {
        std::vector<Edge> e;
        for (int i = 0; i < m; ++i) e.push_back({2 * i, 2 * i + 1});
        return Graph(2 * m, std::move(e));
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::optional<std::vector<double>> vertex_weights_;
    std::optional<std::vector<double>> edge_weights_;
};

// BFS distances from src; unreachable vertices get -1.
inline std::vector<int> bfs_distances(const Graph& g, int src) {
    g.check_vertex(src);
    std::vector<int> dist(g.vertex_count(), -1);
    std::queue<int> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int v : g.neighbors(u))
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
    }
    return dist;
}

inline bool is_connected(const Graph& g) {
    if (g.vertex_count() == 0) return false;
    const auto dist = bfs_distances(g, 0);
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

// Connected, acyclic, nonempty. The empty graph is not a tree.
inline bool is_tree(const Graph& g) {
    return g.vertex_count() >= 1 && g.edge_count() == g.vertex_count() - 1 && is_connected(g);
}

inline std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(g.vertex_count(), 0);
    for (int s = 0; s < g.vertex_count(); ++s) {
        if (seen[s]) continue;
        std::vector<int> comp;
        std::queue<int> q;
        seen[s] = 1;
        q.push(s);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            comp.push_back(u);
            for (int v : g.neighbors(u))
                if (!seen[v]) {
                    seen[v] = 1;
                    q.push(v);
                }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

// Induced subgraph on the given (sorted, deduplicated) vertex list, relabeled
// to 0..k-1 in list order. Weights carry over.
inline Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices,
                              std::vector<int>* new_id_out = nullptr) {
    std::vector<int> new_id(g.vertex_count(), -1);
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i) new_id[vertices[i]] = i;
    std::vector<Edge> edges;
    std::vector<double> we;
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto [u, v] = g.edges()[e];
        if (new_id[u] >= 0 && new_id[v] >= 0) {
            edges.push_back({new_id[u], new_id[v]});
            if (g.has_edge_weights()) we.push_back(g.edge_weights()[e]);
        }
    }
    Graph sub(static_cast<int>(vertices.size()), std::move(edges));
    if (g.has_vertex_weights()) {
        std::vector<double> vw(vertices.size());
        for (std::size_t i = 0; i < vertices.size(); ++i) vw[i] = g.vertex_weights()[vertices[i]];
        sub.set_vertex_weights(std::move(vw));
    }
    if (g.has_edge_weights()) {
        // Edge order changed by relabeling; rebuild aligned weights.
        std::vector<double> aligned(sub.edge_count());
        std::size_t k = 0;
        for (int e = 0; e < g.edge_count(); ++e) {
            const auto [u, v] = g.edges()[e];
            if (new_id[u] >= 0 && new_id[v] >= 0) {
                int a = new_id[u], b = new_id[v];
                aligned[sub.edge_index(a, b)] = g.edge_weights()[e];
                ++k;
            }
        }
        (void)k;
        sub.set_edge_weights(std::move(aligned));
    }
    if (new_id_out) *new_id_out = std::move(new_id);
    return sub;
}

struct BallResult {
    Graph graph;
    int center = 0;                  // image of the original center
    std::vector<int> original_ids;   // new index -> original vertex id
};

// Induced subgraph on vertices at distance <= r from o, relabeled; weights preserved.
inline BallResult ball(const Graph& g, int o, int r) {
    g.check_vertex(o);
    if (r < 0) throw std::invalid_argument("ball: negative radius");
    std::vector<int> dist(g.vertex_count(), -1);
    std::vector<int> members;
    std::queue<int> q;
    dist[o] = 0;
    q.push(o);
    members.push_back(o);
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        if (dist[u] == r) continue;
        for (int v : g.neighbors(u))
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                members.push_back(v);
                q.push(v);
            }
    }
    std::sort(members.begin(), members.end());
    std::vector<int> new_id;
    Graph sub = induced_subgraph(g, members, &new_id);
    return BallResult{std::move(sub), new_id[o], std::move(members)};
}

inline double edge_vertex_ratio(const Graph& g) {
    if (g.vertex_count() < 1) throw std::invalid_argument("edge_vertex_ratio: empty graph");
    return static_cast<double>(g.edge_count()) / static_cast<double>(g.vertex_count());
}

// Fraction of vertices whose radius-r ball is a tree.
inline double tree_ball_fraction(const Graph& g, int r) {
    if (g.vertex_count() == 0) return 0.0;
    int count = 0;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (is_tree(ball(g, v, r).graph)) ++count;
    return static_cast<double>(count) / static_cast<double>(g.vertex_count());
}

}  // namespace mdm
