#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mdm/graph.hpp"

namespace mdm {

inline void check_activity(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("activity must be > 0");
}
inline void check_activity(std::complex<double> z) {
    if (!(z.real() > 0.0)) throw std::invalid_argument("complex activity must have Re > 0");
}

// A dimeric configuration: vertex-disjoint edge set on a host graph.
struct Matching {
    std::vector<Edge> edges;
    int host_vertex_count = 0;
    int monomer_count() const {
        return host_vertex_count - 2 * static_cast<int>(edges.size());
    }
};

namespace detail {
constexpr int kSubsetCap = 24;

inline void check_subset_cap(const Graph& g, const char* who) {
    if (g.vertex_count() > kSubsetCap)
        throw std::invalid_argument(std::string(who) + ": size cap (" +
                                    std::to_string(kSubsetCap) + " vertices) exceeded");
}
}  // namespace detail

// All vertex-disjoint edge subsets, empty matching included. Backtracking over
// the edge list with a covered-vertex mask; deterministic order.
inline std::vector<Matching> enumerate_matchings(const Graph& g) {
    detail::check_subset_cap(g, "enumerate_matchings");
    std::vector<Matching> out;
    std::vector<Edge> current;
    const auto& edges = g.edges();
    const int m = g.edge_count();
    // Emit the current matching, then try extending with edges >= from.
    auto rec = [&](auto&& self, int from, std::uint32_t covered) -> void {
        out.push_back(Matching{current, g.vertex_count()});
        for (int e = from; e < m; ++e) {
            const auto [u, v] = edges[e];
            const std::uint32_t uv = (1u << u) | (1u << v);
            if (covered & uv) continue;
            current.push_back(edges[e]);
            self(self, e + 1, covered | uv);
            current.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

// Brute-force oracle: counts matchings by dimer count k; Z(x) = sum_k m_k x^{n-2k}.
inline std::vector<long long> matching_polynomial_brute(const Graph& g) {
    detail::check_subset_cap(g, "matching_polynomial_brute");
    std::vector<long long> counts(g.vertex_count() / 2 + 1, 0);
    const auto& edges = g.edges();
    const int m = g.edge_count();
    auto rec = [&](auto&& self, int from, std::uint32_t covered, int size) -> void {
        ++counts[size];
        for (int e = from; e < m; ++e) {
            const auto [u, v] = edges[e];
            const std::uint32_t uv = (1u << u) | (1u << v);
            if (covered & uv) continue;
            self(self, e + 1, covered | uv, size + 1);
        }
    };
    rec(rec, 0, 0, 0);
    return counts;
}

// Brute-force oracle for the general model: direct sum over configurations of
// prod_{e in D} w_e * prod_{v uncovered} x_v.
inline double partition_sum_brute(const Graph& g, double x) {
    detail::check_subset_cap(g, "partition_sum_brute");
    double all_monomers = 1.0;
    for (int v = 0; v < g.vertex_count(); ++v) all_monomers *= g.vertex_weight(v, x);
    const auto& edges = g.edges();
    const int m = g.edge_count();
    double total = 0.0;
    auto rec = [&](auto&& self, int from, std::uint32_t covered, double factor) -> void {
        total += factor;
        for (int e = from; e < m; ++e) {
            const auto [u, v] = edges[e];
            const std::uint32_t uv = (1u << u) | (1u << v);
            if (covered & uv) continue;
            const double f = factor * g.edge_weight_at(e) /
                             (g.vertex_weight(u, x) * g.vertex_weight(v, x));
            self(self, e + 1, covered | uv, f);
        }
    };
    rec(rec, 0, 0, all_monomers);
    return total;
}

template <typename Coeffs>
inline double evaluate_matching_polynomial(const Coeffs& counts, int vertex_count, double x) {
    double z = 0.0;
    for (int k = 0; k < static_cast<int>(counts.size()); ++k)
        z += static_cast<double>(counts[k]) * std::pow(x, vertex_count - 2 * k);
    return z;
}

// Memoized partition function over vertex subsets of a graph with <= 24
// vertices. The recursion pivots on the lowest-index vertex of the subset:
//   Z(S) = x_o Z(S - o) + sum_{u ~ o, u in S} w_ou Z(S - o - u),  Z(empty) = 1.
// T is double or std::complex<double>; vertex weights override the uniform
// activity, edge weights default to 1.
template <typename T>
class SubsetPartition {
public:
    SubsetPartition(const Graph& g, T activity) : g_(&g), n_(g.vertex_count()) {
        detail::check_subset_cap(g, "SubsetPartition");
        check_activity(activity);
        vx_.resize(n_);
        for (int v = 0; v < n_; ++v)
            vx_[v] = g.has_vertex_weights() ? T(g.vertex_weights()[v]) : activity;
        nbr_.assign(n_, {});
        for (int e = 0; e < g.edge_count(); ++e) {
            const auto [u, v] = g.edges()[e];
            const double w = g.edge_weight_at(e);
            nbr_[u].push_back({v, w});
            nbr_[v].push_back({u, w});
        }
        if (n_ <= kDenseBits) {
            dense_.assign(std::size_t{1} << n_, T{});
            dense_set_.assign(std::size_t{1} << n_, 0);
        }
    }

    std::uint32_t full_mask() const {
        return n_ == 0 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << n_) - 1);
    }

    T z(std::uint32_t mask) {
        if (mask == 0) return T{1};
        if (!dense_.empty()) {
            if (dense_set_[mask]) return dense_[mask];
        } else if (auto it = memo_.find(mask); it != memo_.end()) {
            return it->second;
        }
        const int o = lowest_bit(mask);
        const std::uint32_t rest = mask & (mask - 1);  // clear lowest bit
        T value = vx_[o] * z(rest);
        for (const auto& [u, w] : nbr_[o])
            if (rest & (1u << u)) value += w * z(rest & ~(1u << u));
        if (!dense_.empty()) {
            dense_[mask] = value;
            dense_set_[mask] = 1;
        } else {
            memo_.emplace(mask, value);
        }
        return value;
    }

    T z_full() { return z(full_mask()); }

    // R within the induced subgraph `mask`: x_o Z(mask - o) / Z(mask).
    T monomer_probability(std::uint32_t mask, int o) {
        return vx_[o] * z(mask & ~(1u << o)) / z(mask);
    }
    T monomer_probability(int o) { return monomer_probability(full_mask(), o); }

    // Dimer occupation of edge {u,v}: w_uv Z(G - u - v) / Z(G).
    T dimer_probability(int u, int v) {
        const int e = g_->edge_index(u, v);
        if (e < 0) throw std::invalid_argument("dimer_probability: edge not in graph");
        const std::uint32_t full = full_mask();
        return g_->edge_weight_at(e) * z(full & ~(1u << u) & ~(1u << v)) / z(full);
    }

    // Joint occupation probabilities from partition-function ratios.
    T both_monomers(int o, int p) {
        if (o == p) return monomer_probability(o);
        const std::uint32_t full = full_mask();
        return vx_[o] * vx_[p] * z(full & ~(1u << o) & ~(1u << p)) / z(full);
    }
    T monomer_and_dimer(int o, int p, int v) {
        if (o == p || o == v) return T{0};
        const int e = g_->edge_index(p, v);
        if (e < 0) throw std::invalid_argument("monomer_and_dimer: edge not in graph");
        const std::uint32_t full = full_mask();
        return vx_[o] * g_->edge_weight_at(e) *
               z(full & ~(1u << o) & ~(1u << p) & ~(1u << v)) / z(full);
    }
    T both_dimers(int o, int u, int p, int v) {
        const int e1 = g_->edge_index(o, u);
        const int e2 = g_->edge_index(p, v);
        if (e1 < 0 || e2 < 0) throw std::invalid_argument("both_dimers: edge not in graph");
        if (e1 == e2) return dimer_probability(o, u);
        const std::uint32_t m1 = (1u << o) | (1u << u);
        const std::uint32_t m2 = (1u << p) | (1u << v);
        if (m1 & m2) return T{0};  // edges share a vertex
        return g_->edge_weight_at(e1) * g_->edge_weight_at(e2) *
               z(full_mask() & ~m1 & ~m2) / z_full();
    }

    const Graph& graph() const { return *g_; }

private:
    static constexpr int kDenseBits = 20;
    static int lowest_bit(std::uint32_t mask) { return __builtin_ctz(mask); }

    const Graph* g_;
    int n_;
    std::vector<T> vx_;
    std::vector<std::vector<std::pair<int, double>>> nbr_;
    std::vector<T> dense_;
    std::vector<std::uint8_t> dense_set_;
    std::unordered_map<std::uint32_t, T> memo_;
};

// Matching polynomial via the subset recursion (coefficients by dimer count).
// Integer-exact for uniform weights; the independent check is
// matching_polynomial_brute above.
inline std::vector<long long> matching_polynomial(const Graph& g) {
    detail::check_subset_cap(g, "matching_polynomial");
    if (g.has_vertex_weights() || g.has_edge_weights())
        throw std::invalid_argument("matching_polynomial: weighted graphs have no integer form");
    const int n = g.vertex_count();
    std::unordered_map<std::uint32_t, std::vector<long long>> memo;
    memo.reserve(1024);
    auto rec = [&](auto&& self, std::uint32_t mask) -> const std::vector<long long>& {
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        std::vector<long long> coeffs;
        if (mask == 0) {
            coeffs = {1};
        } else {
            const int o = __builtin_ctz(mask);
            const std::uint32_t rest = mask & (mask - 1);
            coeffs = self(self, rest);
            for (int u : g.neighbors(o)) {
                if (!(rest & (1u << u))) continue;
                const auto& sub = self(self, rest & ~(1u << u));
                if (coeffs.size() < sub.size() + 1) coeffs.resize(sub.size() + 1, 0);
                for (std::size_t k = 0; k < sub.size(); ++k) coeffs[k + 1] += sub[k];
            }
        }
        return memo.emplace(mask, std::move(coeffs)).first->second;
    };
    std::vector<long long> result = rec(rec, n == 0 ? 0u : ((std::uint32_t{1} << n) - 1));
    result.resize(n / 2 + 1, 0);
    return result;
}

// Covariances of occupation indicators, from exact partition-function ratios.
template <typename T>
T monomer_monomer_covariance(SubsetPartition<T>& zp, int o, int p) {
    const T ro = zp.monomer_probability(o);
    if (o == p) return ro * (T{1} - ro);
    return zp.both_monomers(o, p) - ro * zp.monomer_probability(p);
}

template <typename T>
T monomer_dimer_covariance(SubsetPartition<T>& zp, int o, int p, int v) {
    return zp.monomer_and_dimer(o, p, v) -
           zp.monomer_probability(o) * zp.dimer_probability(p, v);
}

template <typename T>
T dimer_dimer_covariance(SubsetPartition<T>& zp, int o, int u, int p, int v) {
    const T e1 = zp.dimer_probability(o, u);
    if (zp.graph().edge_index(o, u) == zp.graph().edge_index(p, v)) return e1 * (T{1} - e1);
    return zp.both_dimers(o, u, p, v) - e1 * zp.dimer_probability(p, v);
}

inline double monomer_monomer_covariance(const Graph& g, int o, int p, double x) {
    g.check_vertex(o);
    g.check_vertex(p);
    SubsetPartition<double> zp(g, x);
    return monomer_monomer_covariance(zp, o, p);
}
inline double monomer_dimer_covariance(const Graph& g, int o, Edge pv, double x) {
    g.check_vertex(o);
    SubsetPartition<double> zp(g, x);
    return monomer_dimer_covariance(zp, o, pv.first, pv.second);
}
inline double dimer_dimer_covariance(const Graph& g, Edge ou, Edge pv, double x) {
    SubsetPartition<double> zp(g, x);
    return dimer_dimer_covariance(zp, ou.first, ou.second, pv.first, pv.second);
}

}  // namespace mdm
