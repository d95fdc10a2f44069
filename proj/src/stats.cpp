#include "tsdiscord/stats.hpp"

#include <cmath>

namespace tsdiscord {

RollingStats init_stats(const TimeSeries& series, index_t m) {
    const index_t n = series.n();
    if (m < 2 || m > n - 1) throw std::invalid_argument("init_stats: length out of range");

    RollingStats stats;
    stats.m = m;
    stats.valid_count = n - m + 1;
    stats.mu.resize(static_cast<std::size_t>(stats.valid_count));
    stats.sigma.resize(static_cast<std::size_t>(stats.valid_count));

    const std::vector<double>& t = series.values();
    double sum = 0.0;
    double sum_sq = 0.0;
    for (index_t k = 0; k < m; ++k) {
        sum += t[static_cast<std::size_t>(k)];
        sum_sq += t[static_cast<std::size_t>(k)] * t[static_cast<std::size_t>(k)];
    }
    for (index_t i = 0;; ++i) {
        const double mean = sum / static_cast<double>(m);
        const double var = sum_sq / static_cast<double>(m) - mean * mean;
        stats.mu[static_cast<std::size_t>(i)] = mean;
        stats.sigma[static_cast<std::size_t>(i)] = std::sqrt(std::max(var, 0.0));
        if (i + 1 >= stats.valid_count) break;
        const double out = t[static_cast<std::size_t>(i)];
        const double in = t[static_cast<std::size_t>(i + m)];
        sum += in - out;
        sum_sq += in * in - out * out;
    }
    return stats;
}

RollingStats advance_stats(const RollingStats& stats, const TimeSeries& series) {
    const index_t n = series.n();
    const index_t m = stats.m;
    if (m + 1 > n - 1) throw std::invalid_argument("advance_stats: next length out of range");

    RollingStats next = stats;
    next.m = m + 1;
    next.valid_count = stats.valid_count - 1;
    const double md = static_cast<double>(m);
    // One logical parallel unit per index: entries do not depend on each other.
    for (index_t i = 1; i <= next.valid_count; ++i) {
        const double mu = stats.mean(i);
        const double sg = stats.stddev(i);
        const double incoming = series.at(i + m);
        const double delta = mu - incoming;
        next.mu[static_cast<std::size_t>(i - 1)] = (md * mu + incoming) / (md + 1.0);
        const double var = md / (md + 1.0) * (sg * sg + delta * delta / (md + 1.0));
        next.sigma[static_cast<std::size_t>(i - 1)] = std::sqrt(std::max(var, 0.0));
    }
    return next;
}

}  // namespace tsdiscord
