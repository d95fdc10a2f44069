#include "tsdiscord/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "tsdiscord/io.hpp"

namespace tsdiscord {

Heatmap::Heatmap(index_t min_len, index_t max_len, index_t n)
    : min_len_(min_len), max_len_(max_len), n_(n) {
    if (min_len < 3 || min_len > max_len || max_len >= n)
        throw std::invalid_argument("heatmap: invalid length range");
    scores_.assign(static_cast<std::size_t>(rows() * cols()), 0.0);
}

Heatmap build_heatmap(const MultiLengthDiscordSet& discords, index_t n) {
    Heatmap heatmap(discords.min_len, discords.max_len, n);
    for (const auto& [m, records] : discords.per_length) {
        for (const auto& rec : records) {
            // The matrix width n-minL drops the one boundary start index
            // that only the shortest length can reach.
            if (rec.index > heatmap.cols()) continue;
            heatmap.set_score(m, rec.index, rec.nn_dist_sq / (2.0 * static_cast<double>(m)));
        }
    }
    return heatmap;
}

std::vector<RankedDiscord> rank_discords(const Heatmap& heatmap, index_t k) {
    if (k < 1) throw std::invalid_argument("rank_discords: k must be positive");
    std::vector<RankedDiscord> columns;
    for (index_t i = 1; i <= heatmap.cols(); ++i) {
        RankedDiscord best{i, 0, 0.0};
        for (index_t m = heatmap.min_len(); m <= heatmap.max_len(); ++m) {
            const double s = heatmap.score(m, i);
            if (s > best.score) {
                best.score = s;
                best.length = m;
            }
        }
        if (best.score > 0.0) columns.push_back(best);
    }
    std::sort(columns.begin(), columns.end(), [](const RankedDiscord& a, const RankedDiscord& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.index != b.index) return a.index < b.index;
        return a.length < b.length;
    });
    if (static_cast<index_t>(columns.size()) > k) columns.resize(static_cast<std::size_t>(k));
    return columns;
}

void write_heatmap_csv(const Heatmap& heatmap, std::ostream& out) {
    for (index_t m = heatmap.min_len(); m <= heatmap.max_len(); ++m) {
        for (index_t i = 1; i <= heatmap.cols(); ++i) {
            if (i > 1) out << ',';
            out << format_double(heatmap.score(m, i));
        }
        out << '\n';
    }
}

void write_heatmap_pgm(const Heatmap& heatmap, std::ostream& out) {
    out << "P5\n" << heatmap.cols() << ' ' << heatmap.rows() << "\n255\n";
    for (index_t m = heatmap.min_len(); m <= heatmap.max_len(); ++m) {
        for (index_t i = 1; i <= heatmap.cols(); ++i) {
            const double v = std::clamp(heatmap.score(m, i) / 2.0, 0.0, 1.0);
            out.put(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0))));
        }
    }
}

void write_ranking_csv(const std::vector<RankedDiscord>& ranking, std::ostream& out) {
    out << "rank,index,length,score\n";
    for (std::size_t r = 0; r < ranking.size(); ++r) {
        out << (r + 1) << ',' << ranking[r].index << ',' << ranking[r].length << ','
            << format_double(ranking[r].score) << '\n';
    }
}

}  // namespace tsdiscord
