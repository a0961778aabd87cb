#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdm/offspring.hpp"
#include "mdm/parallel.hpp"
#include "mdm/rng.hpp"
#include "mdm/stats.hpp"

namespace mdm {

// ---------------------------------------------------------------------------
// Population dynamics for the cavity fixed point
//     X  =d=  x^2 / (x^2 + sum_{i=1}^K X_i),   K ~ rho.
// Starting from the constant-one pool, even-depth pools overestimate the
// limit law's mean and odd-depth pools underestimate it, giving a shrinking
// bracket.
// ---------------------------------------------------------------------------

struct Population {
    std::vector<double> samples;
    double activity = 1.0;
    int depth = 0;
    bool constant_one_init = true;
};

inline Population make_population(std::size_t n, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("make_population: activity must be > 0");
    return Population{std::vector<double>(n, 1.0), x, 0, true};
}

// One synchronized generation. Sample j draws K ~ rho and K uniform indices
// into the old pool from its own stream base.stream(j), so the result is
// independent of thread count.
inline Population iterate_population(const Population& pop, const OffspringDistribution& rho,
                                     const RngStream& base, int threads = 1) {
    const std::size_t n = pop.samples.size();
    if (n == 0) throw std::invalid_argument("iterate_population: empty population");
    Population next;
    next.samples.resize(n);
    next.activity = pop.activity;
    next.depth = pop.depth + 1;
    next.constant_one_init = pop.constant_one_init;
    const double x2 = pop.activity * pop.activity;
    const double* old = pop.samples.data();
    double* out = next.samples.data();
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            RngStream s = base.stream(j);
            const int k = rho.sample(s);
            double sum = 0.0;
            for (int i = 0; i < k; ++i) sum += old[s.next_below(n)];
            out[j] = x2 / (x2 + sum);
        }
    });
    return next;
}

inline Population iterate_population(const Population& pop, const OffspringDistribution& rho,
                                     std::uint64_t seed, int threads = 1) {
    return iterate_population(pop, rho, RngStream(seed).stream(0x17E2), threads);
}

inline double population_mean(const Population& pop) {
    double s = 0.0;
    for (double v : pop.samples) s += v;
    return s / static_cast<double>(pop.samples.size());
}

struct FixedPointResult {
    double x = 1.0;
    double mean_even = 1.0;
    double mean_odd = 0.0;
    double estimate = 0.0;      // midpoint of the even/odd means
    double gap = 0.0;           // mean_even - mean_odd at the final depths
    std::size_t population_size = 0;
    int depth = 0;
    std::uint64_t seed = 0;
    bool converged = false;
    std::string status;         // "converged" or "bracket-only"
    Population pool_even, pool_odd;
    std::vector<double> mean_by_depth;

    // Final even and odd pools merged; downstream estimators resample from
    // this so both parities weigh in symmetrically.
    std::vector<double> mixed_pool() const {
        std::vector<double> all = pool_even.samples;
        all.insert(all.end(), pool_odd.samples.begin(), pool_odd.samples.end());
        return all;
    }
};

// Iterate from the constant-one pool until the even/odd bracket is tighter
// than tol or r_max generations have run. Non-convergence is reported via
// status, not an error: at small x the gap closes slowly and the bracket is
// still valid.
inline FixedPointResult solve_fixed_point(const OffspringDistribution& rho, double x,
                                          std::size_t population_size, int r_max, double tol,
                                          std::uint64_t seed, int threads = 1) {
    if (!(x > 0.0)) throw std::invalid_argument("solve_fixed_point: activity must be > 0");
    if (population_size < 1) throw std::invalid_argument("solve_fixed_point: empty population");
    if (r_max < 2) throw std::invalid_argument("solve_fixed_point: need r_max >= 2");
    const RngStream base = RngStream(seed).stream(0xF1C5);
    Population pop = make_population(population_size, x);
    FixedPointResult res;
    res.x = x;
    res.population_size = population_size;
    res.seed = seed;
    res.pool_even = pop;
    res.mean_by_depth = {1.0};
    double mean_even = 1.0;
    double mean_odd = 0.0;
    bool have_odd = false;
    for (int depth = 1; depth <= r_max; ++depth) {
        pop = iterate_population(pop, rho, base.stream(depth), threads);
        const double mean = population_mean(pop);
        res.mean_by_depth.push_back(mean);
        if (depth % 2 == 0) {
            mean_even = mean;
            res.pool_even = pop;
        } else {
            mean_odd = mean;
            have_odd = true;
            res.pool_odd = pop;
        }
        res.depth = depth;
        if (have_odd && depth >= 2 && std::abs(mean_even - mean_odd) < tol) {
            res.converged = true;
            break;
        }
    }
    res.mean_even = mean_even;
    res.mean_odd = mean_odd;
    res.estimate = 0.5 * (mean_even + mean_odd);
    res.gap = mean_even - mean_odd;
    res.status = res.converged ? "converged" : "bracket-only";
    return res;
}

// ---------------------------------------------------------------------------
// Estimators on a converged pool
// ---------------------------------------------------------------------------

// Push the cavity pool through the root law Y = x^2/(x^2 + sum_{i=1}^Delta X_i),
// Delta ~ P. E[Y(x)] is the limiting monomer density.
inline std::vector<double> root_samples(const OffspringDistribution& P, double x,
                                        const std::vector<double>& pool, std::size_t m,
                                        std::uint64_t seed, int threads = 1) {
    if (pool.empty()) throw std::invalid_argument("root_samples: empty pool");
    const RngStream base = RngStream(seed).stream(0x9007);
    const double x2 = x * x;
    std::vector<double> out(m);
    parallel_for(m, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            RngStream s = base.stream(j);
            const int k = P.sample(s);
            double sum = 0.0;
            for (int i = 0; i < k; ++i) sum += pool[s.next_below(pool.size())];
            out[j] = x2 / (x2 + sum);
        }
    });
    return out;
}

inline MeanStderr root_density(const OffspringDistribution& P, double x,
                               const std::vector<double>& pool, std::size_t m,
                               std::uint64_t seed, int threads = 1) {
    return mean_stderr(root_samples(P, x, pool, m, seed, threads));
}

struct BoundsCurveRow {
    double x = 1.0;
    int r = 0;
    int parity = 0;  // 0 even (upper bound), 1 odd (lower bound)
    double mean = 1.0;
    double stderr_ = 0.0;
};

// Mean root value on the depth-r tree T(P, rho, r) for each x and r: the
// depth-(r-1) cavity pool pushed through the root law. Even r rows bound the
// density from above, odd r rows from below.
inline std::vector<BoundsCurveRow> bounds_curve(const OffspringDistribution& P,
                                                const OffspringDistribution& rho,
                                                const std::vector<double>& x_grid,
                                                const std::vector<int>& r_list,
                                                std::size_t population_size, std::uint64_t seed,
                                                int threads = 1) {
    int r_max = 0;
    for (int r : r_list) {
        if (r < 0) throw std::invalid_argument("bounds_curve: negative depth");
        r_max = std::max(r_max, r);
    }
    std::vector<BoundsCurveRow> rows;
    const RngStream base = RngStream(seed).stream(0xCB27E);
    for (std::size_t xi = 0; xi < x_grid.size(); ++xi) {
        const double x = x_grid[xi];
        const RngStream xs = base.stream(xi);
        Population pop = make_population(population_size, x);
        const int last_depth = r_max > 0 ? r_max - 1 : 0;
        for (int depth = 0; depth <= last_depth; ++depth) {
            if (depth > 0) pop = iterate_population(pop, rho, xs.stream(depth), threads);
            for (int r : r_list) {
                if (r != depth + 1 && !(r == 0 && depth == 0)) continue;
                BoundsCurveRow row;
                row.x = x;
                row.r = r;
                row.parity = r % 2;
                if (r == 0) {
                    row.mean = 1.0;
                    row.stderr_ = 0.0;
                } else {
                    const auto ys = root_samples(P, x, pop.samples, population_size,
                                                 xs.stream(1000 + r).next_u64(), threads);
                    const auto ms = mean_stderr(ys);
                    row.mean = ms.mean;
                    row.stderr_ = ms.stderr_;
                }
                rows.push_back(row);
            }
        }
    }
    return rows;
}

struct PressureEstimate {
    double x = 1.0;
    double value = 0.0;
    double stderr_ = 0.0;
    std::string formula;  // "general" or "erdos_renyi"
};

// p(x) = E[log(x + sum_{i<=Delta} X_i/x)] - (Pbar/2) E[log(1 + X_1 X_2 / x^2)],
// valid for unimodular (P, rho) pairs.
inline PressureEstimate pressure_general(const OffspringDistribution& P,
                                         const OffspringDistribution& rho, double x,
                                         const std::vector<double>& pool, std::size_t m,
                                         std::uint64_t seed, int threads = 1) {
    if (!(x > 0.0)) throw std::invalid_argument("pressure_general: activity must be > 0");
    if (total_variation(rho, unimodular_offspring(P)) > 1e-9)
        throw std::invalid_argument("pressure_general: (P, rho) is not a unimodular pair");
    if (pool.empty()) throw std::invalid_argument("pressure_general: empty pool");
    const double pbar = P.mean();
    const RngStream base = RngStream(seed).stream(0x93E55);
    std::vector<double> t1(m), t2(m);
    parallel_for(m, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            RngStream s = base.stream(j);
            const int k = P.sample(s);
            double sum = 0.0;
            for (int i = 0; i < k; ++i) sum += pool[s.next_below(pool.size())];
            t1[j] = std::log(x + sum / x);
            const double x1 = pool[s.next_below(pool.size())];
            const double x2 = pool[s.next_below(pool.size())];
            t2[j] = std::log1p(x1 * x2 / (x * x));
        }
    });
    const auto m1 = mean_stderr(t1);
    const auto m2 = mean_stderr(t2);
    PressureEstimate est;
    est.x = x;
    est.value = m1.mean - 0.5 * pbar * m2.mean;
    est.stderr_ = std::sqrt(m1.stderr_ * m1.stderr_ +
                            0.25 * pbar * pbar * m2.stderr_ * m2.stderr_);
    est.formula = "general";
    return est;
}

// Erdos-Renyi form: p(x) = -E[log(Y/x)] - (c/2) E[log(1 + Y_1 Y_2 / x^2)],
// with Y the root variable for Poisson(c) offspring.
inline PressureEstimate pressure_er(double c, double x, const std::vector<double>& pool,
                                    std::size_t m, std::uint64_t seed, int threads = 1) {
    if (!(x > 0.0)) throw std::invalid_argument("pressure_er: activity must be > 0");
    if (!(c >= 0.0)) throw std::invalid_argument("pressure_er: c must be >= 0");
    const OffspringDistribution P = OffspringDistribution::poisson(c);
    const RngStream base = RngStream(seed).stream(0xE2);
    const auto y1 = root_samples(P, x, pool, m, base.stream(1).next_u64(), threads);
    const auto y2 = root_samples(P, x, pool, m, base.stream(2).next_u64(), threads);
    const auto y3 = root_samples(P, x, pool, m, base.stream(3).next_u64(), threads);
    std::vector<double> t1(m), t2(m);
    for (std::size_t j = 0; j < m; ++j) {
        t1[j] = -std::log(y1[j] / x);
        t2[j] = std::log1p(y2[j] * y3[j] / (x * x));
    }
    const auto m1 = mean_stderr(t1);
    const auto m2 = mean_stderr(t2);
    PressureEstimate est;
    est.x = x;
    est.value = m1.mean - 0.5 * c * m2.mean;
    est.stderr_ =
        std::sqrt(m1.stderr_ * m1.stderr_ + 0.25 * c * c * m2.stderr_ * m2.stderr_);
    est.formula = "erdos_renyi";
    return est;
}

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

struct ContractionDiagnostic {
    double empirical_rate = 0.0;  // mean-|difference| decay per double step
    double bound = 0.0;           // rho_bar^2 / x^4
    double rate_stderr = 0.0;
    std::vector<double> diffs;    // D_t = mean |A_t - B_t| for t = 0, 1, ...
};

// Two coupled populations (constant-one and constant-zero inits) share every
// K draw and index draw; only the pool contents differ. One application of
// the two-generation recursion contracts E|A - B| by at most rho_bar^2/x^4.
inline ContractionDiagnostic contraction_diagnostic(const OffspringDistribution& rho, double x,
                                                    std::size_t population_size,
                                                    std::uint64_t seed, int threads = 1) {
    if (!(x > 0.0)) throw std::invalid_argument("contraction_diagnostic: activity must be > 0");
    const RngStream base = RngStream(seed).stream(0xC0117);
    const double x2 = x * x;
    std::vector<double> a(population_size, 1.0), b(population_size, 0.0);
    constexpr int kSteps = 5;
    std::vector<double> diffs;
    std::vector<double> diff_se;
    auto record = [&]() {
        RunningStat st;
        for (std::size_t j = 0; j < population_size; ++j) st.add(std::abs(a[j] - b[j]));
        diffs.push_back(st.mean());
        diff_se.push_back(st.stderr_());
    };
    record();
    std::vector<double> na(population_size), nb(population_size);
    for (int t = 1; t <= kSteps; ++t) {
        const RngStream gen = base.stream(t);
        parallel_for(population_size, threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t j = begin; j < end; ++j) {
                RngStream s = gen.stream(j);
                const int k = rho.sample(s);
                double sa = 0.0, sb = 0.0;
                for (int i = 0; i < k; ++i) {
                    const std::uint64_t idx = s.next_below(population_size);
                    sa += a[idx];
                    sb += b[idx];
                }
                na[j] = x2 / (x2 + sa);
                nb[j] = x2 / (x2 + sb);
            }
        });
        a.swap(na);
        b.swap(nb);
        record();
    }
    ContractionDiagnostic out;
    out.bound = rho.mean() * rho.mean() / (x2 * x2);
    out.diffs = diffs;
    // One double step from t = 1 (both pools populated, difference well above
    // the noise floor).
    if (diffs[1] > 0.0) {
        out.empirical_rate = diffs[3] / diffs[1];
        const double rel1 = diff_se[1] / diffs[1];
        const double rel3 = diffs[3] > 0.0 ? diff_se[3] / diffs[3] : 0.0;
        out.rate_stderr = out.empirical_rate * std::sqrt(rel1 * rel1 + rel3 * rel3);
    }
    return out;
}

struct IdentityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double lhs_stderr = 0.0;
    double rhs_stderr = 0.0;
    double z_score = 0.0;
};

// Unimodularity identity behind the pressure formula:
//   E[ (sum_i X_i/x) / (x + sum_i X_i/x) ] = Pbar E[ (X_1 X_2/x^2) / (1 + X_1 X_2/x^2) ]
// with the sum over Delta ~ P terms.
inline IdentityCheck unimodularity_identity_check(const OffspringDistribution& P,
                                                  const OffspringDistribution& rho, double x,
                                                  const std::vector<double>& pool, std::size_t m,
                                                  std::uint64_t seed, int threads = 1) {
    if (!(x > 0.0)) throw std::invalid_argument("unimodularity_identity_check: activity must be > 0");
    if (total_variation(rho, unimodular_offspring(P)) > 1e-9)
        throw std::invalid_argument("unimodularity_identity_check: (P, rho) is not a unimodular pair");
    if (pool.empty()) throw std::invalid_argument("unimodularity_identity_check: empty pool");
    const double pbar = P.mean();
    const RngStream base = RngStream(seed).stream(0x1D57);
    std::vector<double> lhs(m), rhs(m);
    parallel_for(m, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            RngStream s = base.stream(j);
            const int k = P.sample(s);
            double sum = 0.0;
            for (int i = 0; i < k; ++i) sum += pool[s.next_below(pool.size())] / x;
            lhs[j] = sum / (x + sum);
            const double x1 = pool[s.next_below(pool.size())];
            const double x2 = pool[s.next_below(pool.size())];
            const double prod = x1 * x2 / (x * x);
            rhs[j] = pbar * prod / (1.0 + prod);
        }
    });
    const auto ml = mean_stderr(lhs);
    const auto mr = mean_stderr(rhs);
    IdentityCheck out;
    out.lhs = ml.mean;
    out.rhs = mr.mean;
    out.lhs_stderr = ml.stderr_;
    out.rhs_stderr = mr.stderr_;
    const double se = std::sqrt(ml.stderr_ * ml.stderr_ + mr.stderr_ * mr.stderr_);
    out.z_score = se > 0.0 ? (ml.mean - mr.mean) / se : 0.0;
    return out;
}

// Positive root of k X^2 + x^2 X - x^2 = 0: the deterministic fixed point for
// rho = fixed(k).
inline double scalar_fixed_point(double x, int k) {
    if (k == 0) return 1.0;
    const double x2 = x * x;
    return (-x2 + std::sqrt(x2 * x2 + 4.0 * k * x2)) / (2.0 * k);
}

}  // namespace mdm
