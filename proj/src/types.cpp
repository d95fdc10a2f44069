#include "tsdiscord/types.hpp"

#include <algorithm>
#include <cmath>

namespace tsdiscord {

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
    if (n() < 3) throw std::invalid_argument("time series needs at least 3 points");
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("time series contains a non-finite value");
    }
}

void sort_discords(std::vector<DiscordRecord>& records) {
    std::sort(records.begin(), records.end(), [](const DiscordRecord& a, const DiscordRecord& b) {
        if (a.nn_dist_sq != b.nn_dist_sq) return a.nn_dist_sq > b.nn_dist_sq;
        return a.index < b.index;
    });
}

bool non_self_match(index_t i, index_t j, index_t m) {
    return std::labs(i - j) >= m;
}

SegmentLayout compute_layout(index_t n, index_t m, index_t seglen) {
    if (m < 3) throw std::invalid_argument("subsequence length must be at least 3");
    if (m > n - 2) throw std::invalid_argument("subsequence length too large for series");
    if (seglen < m) throw std::invalid_argument("segment length must be at least the subsequence length");
    if (n < seglen) throw std::invalid_argument("series shorter than one segment");

    SegmentLayout layout;
    layout.seglen = seglen;
    layout.seg_n = seglen - m + 1;
    const index_t num_subseq = n - m + 1;
    layout.num_seg = (num_subseq + layout.seg_n - 1) / layout.seg_n;
    layout.pad = layout.num_seg * layout.seg_n + 2 * (m - 1) - n;
    return layout;
}

}  // namespace tsdiscord
