#ifndef TSDISCORD_MERLIN_HPP
#define TSDISCORD_MERLIN_HPP

#include <vector>

#include "tsdiscord/types.hpp"

namespace tsdiscord {

// Per-length minimal nearest-neighbor distances (unsquared units) of the
// lengths processed so far; the steady phase needs the last five.
struct ThresholdHistory {
    std::vector<double> nn_dist;

    void push(double v) { nn_dist.push_back(v); }
    double last() const { return nn_dist.back(); }
    // Mean / std over exactly the last five entries.
    double window_mean() const;
    double window_std() const;
};

enum class ThresholdPhase { first, warmup, steady };

// Next threshold r per the adaptive schedule, in unsquared distance units:
// first length starts at 2*sqrt(minL) and halves on failure; the next four
// lengths take 99% of the previous length's minimal nnDist, times another
// 0.99 per failure; afterwards r = mu - 2*sigma over the last five minima,
// retrying with r - max(sigma, 0.01*r) on failure.
double next_threshold(const ThresholdHistory& history, ThresholdPhase phase, index_t min_len,
                      double last_r, bool failed);

struct MerlinOptions {
    index_t top_k = 1;
    index_t seglen = 512;
    index_t workers = 1;
    index_t max_retries = 100;  // per length, before the length is reported failed
    bool reuse_stats = true;    // advance the rolling stats instead of recomputing
};

struct MerlinReport {
    MultiLengthDiscordSet discords;
    std::vector<double> final_r;    // per length, unsquared
    std::vector<index_t> retries;   // per length
};

// Arbitrary-length discord driver: iterates lengths minL..maxL, advancing
// rolling stats once per length and running the parallel range-discord scan
// with the adaptive threshold. Each retry replaces the provisional record
// list; the per-length output keeps the top_k records with largest nnDist.
MerlinReport merlin_full(const TimeSeries& series, index_t min_len, index_t max_len,
                         const MerlinOptions& opts);

MultiLengthDiscordSet merlin(const TimeSeries& series, index_t min_len, index_t max_len,
                             const MerlinOptions& opts);

}  // namespace tsdiscord

#endif
