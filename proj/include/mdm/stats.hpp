#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mdm {

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t n = 0;
};

inline MeanStderr mean_stderr(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("mean_stderr: empty sample");
    double sum = 0.0;
    for (double v : xs) sum += v;
    const double mean = sum / static_cast<double>(xs.size());
    if (xs.size() == 1) return {mean, 0.0, 1};
    double ss = 0.0;
    for (double v : xs) ss += (v - mean) * (v - mean);
    const double var = ss / static_cast<double>(xs.size() - 1);
    return {mean, std::sqrt(var / static_cast<double>(xs.size())), xs.size()};
}

// Welford accumulator for streaming means.
class RunningStat {
public:
    void add(double v) {
        ++n_;
        const double d = v - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (v - mean_);
    }
    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
    double stderr_() const { return n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0; }

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

}  // namespace mdm
