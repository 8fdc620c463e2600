#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace holling::stats {

/// Pairwise (cascade) summation; result depends only on element order.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

/// Sample mean and standard error of the mean (zero for a single sample).
inline MeanEstimate mean_estimate(std::span<const double> v) {
    MeanEstimate out;
    out.n = v.size();
    if (v.empty()) return out;
    out.mean = pairwise_sum(v) / static_cast<double>(v.size());
    if (v.size() > 1) {
        std::vector<double> sq(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - out.mean) * (v[i] - out.mean);
        const double var = pairwise_sum(sq) / static_cast<double>(v.size() - 1);
        out.std_error = std::sqrt(var / static_cast<double>(v.size()));
    }
    return out;
}

/// Ordinary least-squares slope of y on x. Requires at least two distinct x.
inline double ols_slope(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    const double mx = pairwise_sum(x) / n;
    const double my = pairwise_sum(y) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

} // namespace holling::stats
