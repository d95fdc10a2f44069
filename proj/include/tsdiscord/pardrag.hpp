#ifndef TSDISCORD_PARDRAG_HPP
#define TSDISCORD_PARDRAG_HPP

#include <atomic>
#include <memory>
#include <vector>

#include "tsdiscord/stats.hpp"
#include "tsdiscord/types.hpp"

namespace tsdiscord {

// A scan-route distance observation: subsequence q at recurrence-route
// distance d from some candidate. Kept only while d is within a small band of
// the candidate's running minimum, so the exact nearest neighbor can be
// re-derived from a handful of pairs after the scans.
struct NearPair {
    index_t q;
    double d;
};

// Shared state of the two-phase parallel scan: candidate / neighbor bitmaps
// and the per-subsequence nearest-neighbor minima, sized to the padded
// candidate count numSeg*segN. All mutations are monotone (flags only clear,
// distances only decrease) and atomic, so the final state does not depend on
// worker scheduling. Indices are 1-based like the rest of the API.
//
// The route-minimum / near-pair side channel is different: it is written only
// by the segment that owns the candidate (the same segment in both phases),
// so it needs no atomics and stays deterministic for a fixed layout.
class SelectionState {
public:
    SelectionState(const SegmentLayout& layout, index_t real_count);

    index_t size() const { return size_; }

    bool cand(index_t i) const { return cand_[idx(i)].load(std::memory_order_relaxed); }
    bool neighbor(index_t i) const { return neighbor_[idx(i)].load(std::memory_order_relaxed); }
    double nn_dist_sq(index_t i) const { return nn_[idx(i)].load(std::memory_order_relaxed); }

    void clear_cand(index_t i) { cand_[idx(i)].store(0, std::memory_order_relaxed); }
    void clear_neighbor(index_t i) { neighbor_[idx(i)].store(0, std::memory_order_relaxed); }
    void lower_nn_dist_sq(index_t i, double value);

    // Owner-segment-exclusive accessors (no synchronization).
    double& route_min(index_t i) { return route_min_[idx(i)]; }
    double route_min(index_t i) const { return route_min_[idx(i)]; }
    std::vector<NearPair>& near_pairs(index_t i) { return near_[idx(i)]; }
    const std::vector<NearPair>& near_pairs(index_t i) const { return near_[idx(i)]; }
    bool near_overflow(index_t i) const { return overflow_[idx(i)] != 0; }
    void set_near_overflow(index_t i) { overflow_[idx(i)] = 1; }

    // cand &= neighbor, elementwise.
    void conjoin();

private:
    std::size_t idx(index_t i) const { return static_cast<std::size_t>(i - 1); }

    index_t size_ = 0;
    std::unique_ptr<std::atomic<unsigned char>[]> cand_;
    std::unique_ptr<std::atomic<unsigned char>[]> neighbor_;
    std::unique_ptr<std::atomic<double>[]> nn_;
    std::vector<double> route_min_;
    std::vector<std::vector<NearPair>> near_;
    std::vector<unsigned char> overflow_;
};

struct ParOptions {
    index_t workers = 1;
    bool early_exit = true;  // stop a segment once all its candidates are cleared
};

// Phase 1: every segment treats its local subsequences as candidates and
// scans the chunks strictly to its right.
SelectionState par_select(const TimeSeries& series, index_t m, double r_sq,
                          const RollingStats& stats, const SegmentLayout& layout,
                          const ParOptions& opts = {});

// Phase 2: conjoined segments with surviving candidates scan the chunks
// strictly to their left; survivors come out with exact nearest-neighbor
// distances.
std::vector<DiscordRecord> par_refine(const TimeSeries& series, index_t m, double r_sq,
                                      const RollingStats& stats, const SegmentLayout& layout,
                                      SelectionState& state, const ParOptions& opts = {});

// select -> conjoin -> refine. Results are independent of the worker count.
std::vector<DiscordRecord> pardrag(const TimeSeries& series, index_t m, double r_sq,
                                   index_t seglen, index_t workers,
                                   bool early_exit = true);

std::vector<DiscordRecord> pardrag(const TimeSeries& series, index_t m, double r_sq,
                                   const RollingStats& stats, const SegmentLayout& layout,
                                   const ParOptions& opts);

}  // namespace tsdiscord

#endif
