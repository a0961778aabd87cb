#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mdm/graph.hpp"
#include "mdm/offspring.hpp"
#include "mdm/rng.hpp"
#include "mdm/rooted_tree.hpp"

namespace mdm {

// G(n, c/n): every unordered pair present independently with probability c/n.
// Pairs are enumerated lexicographically and skipped geometrically, which
// draws the same joint law with ~|E| variates instead of n(n-1)/2.
inline Graph sample_erdos_renyi(int n, double c, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_erdos_renyi: n must be >= 1");
    if (!(c >= 0.0)) throw std::invalid_argument("sample_erdos_renyi: c must be >= 0");
    if (c > static_cast<double>(n))
        throw std::invalid_argument("sample_erdos_renyi: c > n makes c/n > 1");
    const double p = c / static_cast<double>(n);
    std::vector<Edge> edges;
    const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    RngStream rng = RngStream(seed).stream(0xE2D05);
    if (p >= 1.0) {
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
        return Graph(n, std::move(edges));
    }
    if (p > 0.0) {
        const double log_q = std::log1p(-p);
        std::uint64_t t = 0;             // index of next candidate pair
        int row = 0;                     // pair t lives in row `row`
        std::uint64_t row_end = static_cast<std::uint64_t>(n - 1);
        while (true) {
            const double u = rng.next_unit_positive();
            const double skip = std::floor(std::log(u) / log_q);
            if (skip >= static_cast<double>(total)) break;
            t += static_cast<std::uint64_t>(skip);
            if (t >= total) break;
            while (t >= row_end) {
                ++row;
                row_end += static_cast<std::uint64_t>(n - 1 - row);
            }
            const std::uint64_t offset = row_end - static_cast<std::uint64_t>(n - 1 - row);
            const int col = row + 1 + static_cast<int>(t - offset);
            edges.push_back({row, col});
            ++t;
        }
    }
    return Graph(n, std::move(edges));
}

// T(P, rho, r): the root gets Delta ~ P children; vertices in generations
// 1..r-1 get K ~ rho children; generation r is the leaf frontier. Every
// vertex consumes its own stream derived from (seed, vertex index), so the
// tree is a pure function of the arguments.
inline RootedTree sample_galton_watson(const OffspringDistribution& P,
                                       const OffspringDistribution& rho, int r,
                                       std::uint64_t seed,
                                       std::size_t max_vertices = 10'000'000) {
    if (r < 0) throw std::invalid_argument("sample_galton_watson: r must be >= 0");
    const RngStream base = RngStream(seed).stream(0x6A17);
    RootedTree t;
    t.root = 0;
    t.parent = {-1};
    t.generation = {0};
    t.children = {{}};
    std::vector<Edge> edges;
    std::size_t head = 0;
    std::size_t count = 1;
    while (head < count) {
        const int v = static_cast<int>(head++);
        const int gen = t.generation[v];
        if (gen >= r) continue;
        RngStream vs = base.stream(static_cast<std::uint64_t>(v));
        const int k = (v == 0) ? P.sample(vs) : rho.sample(vs);
        for (int i = 0; i < k; ++i) {
            if (count >= max_vertices)
                throw std::runtime_error(
                    "sample_galton_watson: vertex cap exceeded (supercritical growth); "
                    "raise max_vertices or reduce depth");
            const int child = static_cast<int>(count++);
            t.parent.push_back(v);
            t.generation.push_back(gen + 1);
            t.children.push_back({});
            t.children[v].push_back(child);
            t.depth = gen + 1 > t.depth ? gen + 1 : t.depth;
            edges.push_back({v, child});
        }
    }
    t.graph = Graph(static_cast<int>(count), std::move(edges));
    return t;
}

// Uniformly random recursive tree: vertex i attaches to a uniform earlier vertex.
inline Graph random_tree(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_tree: n must be >= 1");
    RngStream rng = RngStream(seed).stream(0x72EE);
    std::vector<Edge> edges;
    for (int i = 1; i < n; ++i)
        edges.push_back({static_cast<int>(rng.next_below(i)), i});
    return Graph(n, std::move(edges));
}

// Bernoulli(p) graph on exactly n vertices (test-input generator).
inline Graph random_graph(int n, double p, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_graph: n must be >= 1");
    RngStream rng = RngStream(seed).stream(0x6B4F);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.next_bernoulli(p)) edges.push_back({u, v});
    return Graph(n, std::move(edges));
}

inline std::vector<double> random_weights(std::size_t count, double lo, double hi,
                                          std::uint64_t seed) {
    RngStream rng = RngStream(seed).stream(0x3E16);
    std::vector<double> w(count);
    for (auto& v : w) v = lo + (hi - lo) * rng.next_unit();
    return w;
}

}  // namespace mdm
