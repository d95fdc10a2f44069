#ifndef TSDISCORD_STATS_HPP
#define TSDISCORD_STATS_HPP

#include <vector>

#include "tsdiscord/types.hpp"

namespace tsdiscord {

// Treat a subsequence with a standard deviation below this as constant.
inline constexpr double kSigmaEps = 1e-12;

// Per-start-index means and standard deviations for every subsequence of
// the current length. Entries past valid_count are stale and carry no
// contract; the vectors keep their initial size so the length can be
// advanced in place.
struct RollingStats {
    index_t m = 0;
    index_t valid_count = 0;  // n - m + 1
    std::vector<double> mu;
    std::vector<double> sigma;

    // 1-based accessors over the valid prefix.
    double mean(index_t i) const { return mu[static_cast<std::size_t>(i - 1)]; }
    double stddev(index_t i) const { return sigma[static_cast<std::size_t>(i - 1)]; }
};

// Direct single-pass computation of mu/sigma for length m.
RollingStats init_stats(const TimeSeries& series, index_t m);

// Advance from length m to m+1 via the one-step mean/variance recurrences.
// Each valid entry updates independently of the others.
RollingStats advance_stats(const RollingStats& stats, const TimeSeries& series);

}  // namespace tsdiscord

#endif
