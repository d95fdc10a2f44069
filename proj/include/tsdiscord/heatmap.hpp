#ifndef TSDISCORD_HEATMAP_HPP
#define TSDISCORD_HEATMAP_HPP

#include <iosfwd>
#include <vector>

#include "tsdiscord/types.hpp"

namespace tsdiscord {

// Score matrix over (length, start index): rows are lengths minL..maxL,
// columns are start indices 1..n-minL. A recorded discord of length m at
// index i scores nnDistSq / (2m), which lands in [0, 2]; everything else
// is 0.
class Heatmap {
public:
    Heatmap(index_t min_len, index_t max_len, index_t n);

    index_t min_len() const { return min_len_; }
    index_t max_len() const { return max_len_; }
    index_t rows() const { return max_len_ - min_len_ + 1; }
    index_t cols() const { return n_ - min_len_; }

    double score(index_t m, index_t i) const { return scores_[cell(m, i)]; }
    void set_score(index_t m, index_t i, double value) { scores_[cell(m, i)] = value; }

private:
    std::size_t cell(index_t m, index_t i) const {
        return static_cast<std::size_t>((m - min_len_) * cols() + (i - 1));
    }

    index_t min_len_, max_len_, n_;
    std::vector<double> scores_;
};

struct RankedDiscord {
    index_t index = 0;
    index_t length = 0;
    double score = 0;
};

Heatmap build_heatmap(const MultiLengthDiscordSet& discords, index_t n);

// Per-column maximum over lengths, columns ranked by that maximum; ties go
// to the smaller index, then the smaller length. At most k entries, and
// only columns with a nonzero score.
std::vector<RankedDiscord> rank_discords(const Heatmap& heatmap, index_t k);

// Rows = lengths ascending, comma-separated, round-trip precision.
void write_heatmap_csv(const Heatmap& heatmap, std::ostream& out);

// 8-bit binary graymap, pixel = round(score / 2 * 255).
void write_heatmap_pgm(const Heatmap& heatmap, std::ostream& out);

// rank,index,length,score
void write_ranking_csv(const std::vector<RankedDiscord>& ranking, std::ostream& out);

}  // namespace tsdiscord

#endif
