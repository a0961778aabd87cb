#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdm/graph.hpp"
#include "mdm/rng.hpp"

namespace mdm {

// Probability law on nonnegative integers. All kinds share one sampling path:
// inversion on a pmf table truncated where the tail mass drops below 1e-14,
// so draws are reproducible across platforms.
class OffspringDistribution {
public:
    enum class Kind { poisson, fixed, geometric, explicit_pmf };
    static constexpr double kTailTolerance = 1e-14;

    static OffspringDistribution poisson(double mean) {
        if (!(mean >= 0.0) || !std::isfinite(mean))
            throw std::invalid_argument("poisson: mean must be finite and >= 0");
        std::vector<double> pmf;
        double p = std::exp(-mean);
        double cdf = p;
        pmf.push_back(p);
        int k = 0;
        while (1.0 - cdf > kTailTolerance) {
            ++k;
            p *= mean / k;
            pmf.push_back(p);
            cdf += p;
            if (k > 2000) throw std::runtime_error("poisson: truncation did not converge");
        }
        return OffspringDistribution(Kind::poisson, mean, std::move(pmf));
    }

    static OffspringDistribution fixed(int k) {
        if (k < 0) throw std::invalid_argument("fixed: k must be >= 0");
        std::vector<double> pmf(k + 1, 0.0);
        pmf[k] = 1.0;
        return OffspringDistribution(Kind::fixed, static_cast<double>(k), std::move(pmf));
    }

    // pmf (1-p)^k p on k = 0, 1, ...
    static OffspringDistribution geometric(double p) {
        if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("geometric: need 0 < p <= 1");
        std::vector<double> pmf;
        double term = p;
        double cdf = 0.0;
        while (true) {
            pmf.push_back(term);
            cdf += term;
            if (1.0 - cdf <= kTailTolerance) break;
            term *= (1.0 - p);
            if (pmf.size() > 20000) throw std::runtime_error("geometric: truncation did not converge");
        }
        const double mean = (1.0 - p) / p;
        return OffspringDistribution(Kind::geometric, mean, std::move(pmf));
    }

    static OffspringDistribution explicit_pmf(std::vector<double> pmf) {
        if (pmf.empty()) throw std::invalid_argument("explicit_pmf: empty table");
        for (double v : pmf)
            if (v < 0.0 || !std::isfinite(v)) throw std::invalid_argument("explicit_pmf: invalid mass");
        const double sum = std::accumulate(pmf.begin(), pmf.end(), 0.0);
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("explicit_pmf: masses sum to " + std::to_string(sum));
        for (double& v : pmf) v /= sum;
        double mean = 0.0;
        for (std::size_t k = 0; k < pmf.size(); ++k) mean += static_cast<double>(k) * pmf[k];
        return OffspringDistribution(Kind::explicit_pmf, mean, std::move(pmf));
    }

    Kind kind() const { return kind_; }
    double mean() const { return mean_; }
    const std::vector<double>& pmf() const { return pmf_; }
    int max_support() const { return static_cast<int>(pmf_.size()) - 1; }
    double pmf_at(int k) const {
        return (k >= 0 && k < static_cast<int>(pmf_.size())) ? pmf_[k] : 0.0;
    }

    int sample(RngStream& rng) const {
        const double u = rng.next_unit();
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        return static_cast<int>(it - cdf_.begin());
    }

    std::string label() const {
        std::ostringstream os;
        switch (kind_) {
            case Kind::poisson: os << "poisson(" << mean_ << ")"; break;
            case Kind::fixed: os << "fixed(" << static_cast<int>(mean_) << ")"; break;
            case Kind::geometric: os << "geometric(p=" << pmf_[0] << ")"; break;
            case Kind::explicit_pmf: os << "pmf[" << pmf_.size() << "]"; break;
        }
        return os.str();
    }

private:
    OffspringDistribution(Kind kind, double mean, std::vector<double> pmf)
        : kind_(kind), mean_(mean), pmf_(std::move(pmf)) {
        cdf_.resize(pmf_.size());
        double acc = 0.0;
        for (std::size_t k = 0; k < pmf_.size(); ++k) {
            acc += pmf_[k];
            cdf_[k] = acc;
        }
        cdf_.back() = 1.0;  // sampler is total despite tail truncation
    }

    Kind kind_;
    double mean_;
    std::vector<double> pmf_;
    std::vector<double> cdf_;
};

// Size-biased shift rho_k = (k+1) P_{k+1} / mean(P), renormalized.
inline OffspringDistribution unimodular_offspring(const OffspringDistribution& P) {
    const double pbar = P.mean();
    if (!(pbar > 0.0)) throw std::invalid_argument("unimodular_offspring: mean(P) must be > 0");
    std::vector<double> q;
    q.reserve(P.pmf().size());
    for (int k = 0; k + 1 < static_cast<int>(P.pmf().size()); ++k)
        q.push_back((k + 1) * P.pmf_at(k + 1) / pbar);
    if (q.empty()) q.push_back(1.0);
    const double sum = std::accumulate(q.begin(), q.end(), 0.0);
    for (double& v : q) v /= sum;
    return OffspringDistribution::explicit_pmf(std::move(q));
}

inline double total_variation(const OffspringDistribution& a, const OffspringDistribution& b) {
    const int kmax = std::max(a.max_support(), b.max_support());
    double tv = 0.0;
    for (int k = 0; k <= kmax; ++k) tv += std::abs(a.pmf_at(k) - b.pmf_at(k));
    return 0.5 * tv;
}

inline OffspringDistribution empirical_degree_distribution(const Graph& g) {
    if (g.vertex_count() < 1)
        throw std::invalid_argument("empirical_degree_distribution: empty graph");
    int dmax = 0;
    for (int v = 0; v < g.vertex_count(); ++v) dmax = std::max(dmax, g.degree(v));
    std::vector<double> pmf(dmax + 1, 0.0);
    for (int v = 0; v < g.vertex_count(); ++v) pmf[g.degree(v)] += 1.0;
    for (double& p : pmf) p /= static_cast<double>(g.vertex_count());
    return OffspringDistribution::explicit_pmf(std::move(pmf));
}

}  // namespace mdm
