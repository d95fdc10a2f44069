#ifndef TSDISCORD_DRAG_HPP
#define TSDISCORD_DRAG_HPP

#include <vector>

#include "tsdiscord/types.hpp"

namespace tsdiscord {

// Candidate surviving the selection phase, with the smallest distance
// observed against it so far (+inf if nothing admissible was evaluated).
struct Candidate {
    index_t index = 0;
    double best_so_far_sq = 0;
};

struct CandidateSet {
    std::vector<Candidate> entries;
};

// Serial reference implementation of range-discord discovery: a left-to-right
// selection scan followed by a refinement scan that prunes false positives
// and fixes the exact nearest-neighbor distances. All distances are squared
// z-normalized Euclidean; the threshold r_sq is squared as well.
CandidateSet drag_select(const TimeSeries& series, index_t m, double r_sq);

std::vector<DiscordRecord> drag_refine(const TimeSeries& series, index_t m, double r_sq,
                                       const CandidateSet& candidates,
                                       bool early_abandon = true);

std::vector<DiscordRecord> drag(const TimeSeries& series, index_t m, double r_sq,
                                bool early_abandon = true);

// O(N^2) oracle: exact squared nearest-non-self-match distance for every
// subsequence, by direct evaluation. Entry [i-1] corresponds to start i.
std::vector<double> brute_force_nn(const TimeSeries& series, index_t m);

// The k subsequences with the largest nearest-neighbor distance, ties broken
// by smaller start index.
std::vector<DiscordRecord> brute_force_topk(const TimeSeries& series, index_t m, index_t k);

}  // namespace tsdiscord

#endif
