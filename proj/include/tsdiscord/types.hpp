#ifndef TSDISCORD_TYPES_HPP
#define TSDISCORD_TYPES_HPP

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

namespace tsdiscord {

using index_t = long;  // 1-based subsequence start position in the public API

// Raw real-valued series. Dummy padding needed by the segment layout is
// virtual: pad positions live past n() and are never backed by data, so
// they can never leak into a distance computation.
class TimeSeries {
public:
    TimeSeries() = default;
    explicit TimeSeries(std::vector<double> values);

    const std::vector<double>& values() const { return values_; }
    index_t n() const { return static_cast<index_t>(values_.size()); }

    // 1-based element access, valid for 1 <= i <= n().
    double at(index_t i) const { return values_[static_cast<std::size_t>(i - 1)]; }

    // Number of m-length subsequences, N = n - m + 1.
    index_t subseq_count(index_t m) const { return n() - m + 1; }

private:
    std::vector<double> values_;
};

struct SubseqIndex {
    index_t i = 0;  // 1-based start
    index_t m = 0;  // subsequence length
};

// Segmentation of the candidate index space. Segment j (0-based) owns
// candidate indices j*segN+1 .. (j+1)*segN; consecutive segments overlap
// by m-1 elements; pad dummy elements virtually extend the series so the
// last segment is full.
struct SegmentLayout {
    index_t seglen = 0;   // elements per segment
    index_t seg_n = 0;    // subsequences per segment, seglen - m + 1
    index_t num_seg = 0;  // ceil(N / segN)
    index_t pad = 0;      // dummy elements appended on the right
};

struct DiscordRecord {
    index_t index = 0;       // 1-based start of the subsequence
    double nn_dist_sq = 0;   // squared z-normalized ED to nearest non-self match
    double nn_dist = 0;      // sqrt(nn_dist_sq)
};

// Discords per subsequence length, each list sorted by nn_dist_sq
// descending with ascending index as tie-break.
struct MultiLengthDiscordSet {
    index_t min_len = 0;
    index_t max_len = 0;
    std::map<index_t, std::vector<DiscordRecord>> per_length;
    std::vector<index_t> failed_lengths;
};

// Sort order used everywhere a discord list is produced.
void sort_discords(std::vector<DiscordRecord>& records);

bool non_self_match(index_t i, index_t j, index_t m);

SegmentLayout compute_layout(index_t n, index_t m, index_t seglen);

}  // namespace tsdiscord

#endif
