#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "mdm/graph.hpp"
#include "mdm/rng.hpp"
#include "mdm/rooted_tree.hpp"
#include "mdm/tree_engine.hpp"

namespace mdm {

// ---------------------------------------------------------------------------
// Exact occupation covariances on trees, any size. Joint and marginal
// probabilities come from log-partition differences of vertex-deleted
// forests, so each probe costs O(n).
// ---------------------------------------------------------------------------

class TreeCorrelations {
public:
    TreeCorrelations(const Graph& tree, double x) : g_(&tree), x_(x) {
        if (!is_tree(tree)) throw std::invalid_argument("TreeCorrelations: graph is not a tree");
        if (!(x > 0.0)) throw std::invalid_argument("TreeCorrelations: activity must be > 0");
        log_z_ = forest_log_partition(tree, x);
        r_cache_.assign(tree.vertex_count(), -1.0);
        e_cache_.assign(tree.edge_count(), -1.0);
    }

    double monomer_probability(int o) {
        if (r_cache_[o] < 0.0)
            r_cache_[o] = std::exp(std::log(g_->vertex_weight(o, x_)) +
                                   log_z_removed({o}) - log_z_);
        return r_cache_[o];
    }

    double dimer_probability(int u, int v) {
        const int e = g_->edge_index(u, v);
        if (e < 0) throw std::invalid_argument("dimer_probability: edge not in tree");
        if (e_cache_[e] < 0.0)
            e_cache_[e] = std::exp(std::log(g_->edge_weight_at(e)) +
                                   log_z_removed({u, v}) - log_z_);
        return e_cache_[e];
    }

    double cov_monomer_monomer(int o, int p) {
        const double ro = monomer_probability(o);
        if (o == p) return ro * (1.0 - ro);
        const double joint = std::exp(std::log(g_->vertex_weight(o, x_)) +
                                      std::log(g_->vertex_weight(p, x_)) +
                                      log_z_removed({o, p}) - log_z_);
        return joint - ro * monomer_probability(p);
    }

    double cov_monomer_dimer(int o, int p, int v) {
        const int e = g_->edge_index(p, v);
        if (e < 0) throw std::invalid_argument("cov_monomer_dimer: edge not in tree");
        const double marginal = monomer_probability(o) * dimer_probability(p, v);
        if (o == p || o == v) return -marginal;
        const double joint = std::exp(std::log(g_->vertex_weight(o, x_)) +
                                      std::log(g_->edge_weight_at(e)) +
                                      log_z_removed({o, p, v}) - log_z_);
        return joint - marginal;
    }

    double cov_dimer_dimer(int o, int u, int p, int v) {
        const int e1 = g_->edge_index(o, u);
        const int e2 = g_->edge_index(p, v);
        if (e1 < 0 || e2 < 0) throw std::invalid_argument("cov_dimer_dimer: edge not in tree");
        const double d1 = dimer_probability(o, u);
        if (e1 == e2) return d1 * (1.0 - d1);
        const double marginal = d1 * dimer_probability(p, v);
        if (o == p || o == v || u == p || u == v) return -marginal;
        const double joint = std::exp(std::log(g_->edge_weight_at(e1)) +
                                      std::log(g_->edge_weight_at(e2)) +
                                      log_z_removed({o, u, p, v}) - log_z_);
        return joint - marginal;
    }

    const Graph& graph() const { return *g_; }
    double log_z() const { return log_z_; }

private:
    double log_z_removed(std::initializer_list<int> vertices) const {
        std::vector<char> removed(g_->vertex_count(), 0);
        for (int v : vertices) removed[v] = 1;
        return forest_log_partition(*g_, x_, removed);
    }

    const Graph* g_;
    double x_;
    double log_z_;
    std::vector<double> r_cache_;
    std::vector<double> e_cache_;
};

// ---------------------------------------------------------------------------
// Parity sign report: the covariance sign on a tree is decided by whether the
// graph distance between the probed objects is even or odd. Distances between
// edges and vertices take the minimum over endpoints.
// ---------------------------------------------------------------------------

struct ProbeMM { int o, p; };
struct ProbeME { int o; Edge e; };
struct ProbeEE { Edge e1, e2; };
using Probe = std::variant<ProbeMM, ProbeME, ProbeEE>;

struct SignReportEntry {
    Probe probe;
    int distance = 0;
    bool equal_objects = false;
    double covariance = 0.0;
    bool sign_ok = false;
};

constexpr double kCovarianceZeroBand = 1e-14;

inline std::vector<SignReportEntry> correlation_sign_report(const Graph& tree,
                                                            const std::vector<Probe>& probes,
                                                            double x) {
    TreeCorrelations corr(tree, x);
    std::vector<SignReportEntry> report;
    report.reserve(probes.size());
    for (const auto& probe : probes) {
        SignReportEntry entry;
        entry.probe = probe;
        bool expect_nonneg = false;
        if (const auto* mm = std::get_if<ProbeMM>(&probe)) {
            const auto dist = bfs_distances(tree, mm->o);
            entry.distance = dist[mm->p];
            entry.equal_objects = mm->o == mm->p;
            entry.covariance = corr.cov_monomer_monomer(mm->o, mm->p);
            expect_nonneg = entry.equal_objects || entry.distance % 2 == 1;
        } else if (const auto* me = std::get_if<ProbeME>(&probe)) {
            const auto dist = bfs_distances(tree, me->o);
            entry.distance = std::min(dist[me->e.first], dist[me->e.second]);
            entry.covariance = corr.cov_monomer_dimer(me->o, me->e.first, me->e.second);
            expect_nonneg = entry.distance % 2 == 1;
        } else {
            const auto& ee = std::get<ProbeEE>(probe);
            const auto d1 = bfs_distances(tree, ee.e1.first);
            const auto d2 = bfs_distances(tree, ee.e1.second);
            entry.distance = std::min({d1[ee.e2.first], d1[ee.e2.second],
                                       d2[ee.e2.first], d2[ee.e2.second]});
            entry.equal_objects = ee.e1 == ee.e2;
            entry.covariance =
                corr.cov_dimer_dimer(ee.e1.first, ee.e1.second, ee.e2.first, ee.e2.second);
            expect_nonneg = entry.equal_objects || entry.distance % 2 == 1;
        }
        entry.sign_ok = expect_nonneg ? entry.covariance > -kCovarianceZeroBand
                                      : entry.covariance < kCovarianceZeroBand;
        report.push_back(entry);
    }
    return report;
}

// Every pair of each kind (vertex-vertex, vertex-edge, edge-edge).
inline std::vector<Probe> exhaustive_probes(const Graph& tree) {
    std::vector<Probe> probes;
    const int n = tree.vertex_count();
    for (int o = 0; o < n; ++o)
        for (int p = o; p < n; ++p) probes.push_back(ProbeMM{o, p});
    for (int o = 0; o < n; ++o)
        for (const auto& e : tree.edges()) probes.push_back(ProbeME{o, e});
    const int m = tree.edge_count();
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) probes.push_back(ProbeEE{tree.edges()[i], tree.edges()[j]});
    return probes;
}

inline std::vector<Probe> random_probes(const Graph& tree, std::size_t count, std::uint64_t seed) {
    RngStream rng = RngStream(seed).stream(0x9205E);
    const auto n = static_cast<std::uint64_t>(tree.vertex_count());
    const auto m = static_cast<std::uint64_t>(tree.edge_count());
    std::vector<Probe> probes;
    probes.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        switch (rng.next_below(3)) {
            case 0:
                probes.push_back(ProbeMM{static_cast<int>(rng.next_below(n)),
                                         static_cast<int>(rng.next_below(n))});
                break;
            case 1:
                probes.push_back(ProbeME{static_cast<int>(rng.next_below(n)),
                                         tree.edges()[rng.next_below(m)]});
                break;
            default:
                probes.push_back(ProbeEE{tree.edges()[rng.next_below(m)],
                                         tree.edges()[rng.next_below(m)]});
        }
    }
    return probes;
}

// Exhaustive when the tree is small enough for that to stay cheap.
inline std::vector<Probe> default_probes(const Graph& tree, std::uint64_t seed) {
    if (tree.vertex_count() <= 14) return exhaustive_probes(tree);
    return random_probes(tree, 100, seed);
}

// ---------------------------------------------------------------------------
// Fundamental inequality along a tree path c_0, ..., c_l (tree rooted at c_0):
//   1_{l>=1} Z_{T_{c1} - T_{cl}} Z_T  >=  Z_{T_{c1}} Z_{T - T_{cl}}   (l odd)
// with the direction reversed for l even.
// ---------------------------------------------------------------------------

struct TreeFundamentalReport {
    double lhs = 0.0;
    double rhs = 0.0;
    int path_length = 0;
    bool odd = false;
    bool holds = false;
};

inline TreeFundamentalReport tree_fundamental_check(const Graph& tree, int c0, int cl, double x) {
    if (!is_tree(tree)) throw std::invalid_argument("tree_fundamental_check: graph is not a tree");
    tree.check_vertex(c0);
    tree.check_vertex(cl);
    TreeFundamentalReport out;
    if (c0 == cl) {
        out.lhs = 0.0;
        out.rhs = 1.0;  // Z of the empty remainder
        out.holds = true;
        return out;
    }
    const RootedTree rooted = root_tree(tree, c0);
    out.path_length = rooted.generation[cl];
    out.odd = out.path_length % 2 == 1;
    // c1 = second vertex of the unique c0 -> cl path.
    int c1 = cl;
    while (rooted.parent[c1] != c0) c1 = rooted.parent[c1];
    // Subtree membership masks.
    const int n = tree.vertex_count();
    std::vector<char> in_c1(n, 0), in_cl(n, 0);
    auto mark = [&](int start, std::vector<char>& mask) {
        std::vector<int> stack{start};
        mask[start] = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int c : rooted.children[v]) {
                mask[c] = 1;
                stack.push_back(c);
            }
        }
    };
    mark(c1, in_c1);
    mark(cl, in_cl);
    std::vector<char> none(n, 0), not_c1(n, 0), only_cl(n, 0), c1_minus_cl(n, 0);
    for (int v = 0; v < n; ++v) {
        not_c1[v] = !in_c1[v];
        only_cl[v] = in_cl[v];
        c1_minus_cl[v] = !in_c1[v] || in_cl[v];
    }
    const double log_lhs = forest_log_partition(tree, x, c1_minus_cl) +
                           forest_log_partition(tree, x, none);
    const double log_rhs = forest_log_partition(tree, x, not_c1) +
                           forest_log_partition(tree, x, only_cl);
    out.lhs = std::exp(log_lhs);
    out.rhs = std::exp(log_rhs);
    const double band = 1e-12 * (1.0 + std::abs(log_lhs) + std::abs(log_rhs));
    out.holds = out.odd ? log_lhs >= log_rhs - band : log_lhs <= log_rhs + band;
    return out;
}

}  // namespace mdm
