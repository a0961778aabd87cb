#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "mdm/graph.hpp"

namespace mdm {

// Tree with a designated root; generations are graph distances from the root,
// children are ordered by vertex id (BFS order for sampled trees).
struct RootedTree {
    Graph graph;
    int root = 0;
    std::vector<int> parent;      // -1 at root
    std::vector<int> generation;  // distance from root
    std::vector<std::vector<int>> children;
    int depth = 0;                // max generation

    int vertex_count() const { return graph.vertex_count(); }

    // Vertex ids ordered by decreasing generation (children precede parents).
    std::vector<int> bottom_up_order() const {
        std::vector<std::vector<int>> buckets(depth + 1);
        for (int v = 0; v < vertex_count(); ++v) buckets[generation[v]].push_back(v);
        std::vector<int> order;
        order.reserve(vertex_count());
        for (int g = depth; g >= 0; --g)
            for (int v : buckets[g]) order.push_back(v);
        return order;
    }
};

inline RootedTree root_tree(Graph g, int root) {
    if (!is_tree(g)) throw std::invalid_argument("root_tree: graph is not a tree");
    g.check_vertex(root);
    const int n = g.vertex_count();
    RootedTree t;
    t.root = root;
    t.parent.assign(n, -1);
    t.generation.assign(n, -1);
    t.children.assign(n, {});
    std::vector<int> queue{root};
    t.generation[root] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int u = queue[head];
        t.depth = std::max(t.depth, t.generation[u]);
        for (int v : g.neighbors(u))
            if (t.generation[v] < 0) {
                t.generation[v] = t.generation[u] + 1;
                t.parent[v] = u;
                t.children[u].push_back(v);
                queue.push_back(v);
            }
    }
    t.graph = std::move(g);
    return t;
}

}  // namespace mdm
