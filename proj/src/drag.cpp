#include "tsdiscord/drag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "tsdiscord/distance.hpp"
#include "tsdiscord/stats.hpp"

namespace tsdiscord {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::span<const double> subseq(const TimeSeries& series, index_t i, index_t m) {
    return std::span<const double>(series.values()).subspan(static_cast<std::size_t>(i - 1),
                                                           static_cast<std::size_t>(m));
}

// Z-normalized windows plus constancy flags, shared by the serial scans and
// the brute-force oracle.
struct ZnormCache {
    std::vector<std::vector<double>> rows;
    std::vector<bool> is_const;

    ZnormCache(const TimeSeries& series, index_t m) {
        const index_t count = series.subseq_count(m);
        rows.resize(static_cast<std::size_t>(count));
        is_const.resize(static_cast<std::size_t>(count));
        for (index_t i = 1; i <= count; ++i) {
            auto raw = subseq(series, i, m);
            auto z = znormalize(raw);
            bool constant = true;
            for (double v : z)
                if (v != 0.0) { constant = false; break; }
            // An all-zero z-row only arises from the constant convention.
            is_const[static_cast<std::size_t>(i - 1)] = constant;
            rows[static_cast<std::size_t>(i - 1)] = std::move(z);
        }
    }

    // Squared z-normalized distance under the constant-subsequence
    // convention; nullopt when the summation was abandoned at `bound`.
    std::optional<double> dist(index_t i, index_t j, index_t m, double bound,
                               bool early_abandon) const {
        const bool ci = is_const[static_cast<std::size_t>(i - 1)];
        const bool cj = is_const[static_cast<std::size_t>(j - 1)];
        const double md = static_cast<double>(m);
        if (ci && cj) return 0.0 >= bound ? std::nullopt : std::optional<double>(0.0);
        if (ci || cj) return 2.0 * md >= bound ? std::nullopt : std::optional<double>(2.0 * md);
        const auto& x = rows[static_cast<std::size_t>(i - 1)];
        const auto& y = rows[static_cast<std::size_t>(j - 1)];
        if (!early_abandon) return sq_ed(x, y);
        return early_abandon_sq_ed(x, y, bound);
    }
};

}  // namespace

CandidateSet drag_select(const TimeSeries& series, index_t m, double r_sq) {
    if (m < 3 || 2 * m > series.n()) throw std::invalid_argument("drag_select: invalid length");
    if (r_sq < 0) throw std::invalid_argument("drag_select: negative threshold");

    const index_t count = series.subseq_count(m);
    const ZnormCache cache(series, m);

    CandidateSet set;
    set.entries.push_back({1, kInf});
    for (index_t s = 2; s <= count; ++s) {
        bool is_cand = true;
        for (auto it = set.entries.begin(); it != set.entries.end();) {
            if (!non_self_match(s, it->index, m)) {
                ++it;
                continue;
            }
            const double d = *cache.dist(s, it->index, m, kInf, false);
            if (d < r_sq) {
                it = set.entries.erase(it);
                is_cand = false;
            } else {
                it->best_so_far_sq = std::min(it->best_so_far_sq, d);
                ++it;
            }
        }
        if (is_cand) set.entries.push_back({s, kInf});
    }
    return set;
}

std::vector<DiscordRecord> drag_refine(const TimeSeries& series, index_t m, double r_sq,
                                       const CandidateSet& candidates, bool early_abandon) {
    const index_t count = series.subseq_count(m);
    const ZnormCache cache(series, m);

    struct Live {
        index_t index;
        double nn_sq;
    };
    std::vector<Live> live;
    live.reserve(candidates.entries.size());
    for (const auto& c : candidates.entries) live.push_back({c.index, kInf});

    for (index_t s = 1; s <= count && !live.empty(); ++s) {
        for (auto it = live.begin(); it != live.end();) {
            if (!non_self_match(s, it->index, m)) {
                ++it;
                continue;
            }
            const auto d = cache.dist(s, it->index, m, it->nn_sq, early_abandon);
            if (!d) {  // abandoned: distance is at least the current nn bound
                ++it;
                continue;
            }
            if (*d < r_sq) {
                it = live.erase(it);
            } else {
                it->nn_sq = std::min(it->nn_sq, *d);
                ++it;
            }
        }
    }

    std::vector<DiscordRecord> out;
    out.reserve(live.size());
    for (const auto& c : live) out.push_back({c.index, c.nn_sq, std::sqrt(c.nn_sq)});
    sort_discords(out);
    return out;
}

std::vector<DiscordRecord> drag(const TimeSeries& series, index_t m, double r_sq,
                                bool early_abandon) {
    return drag_refine(series, m, r_sq, drag_select(series, m, r_sq), early_abandon);
}

std::vector<double> brute_force_nn(const TimeSeries& series, index_t m) {
    const index_t count = series.subseq_count(m);
    const ZnormCache cache(series, m);
    std::vector<double> nn(static_cast<std::size_t>(count), kInf);
    for (index_t i = 1; i <= count; ++i) {
        for (index_t j = i + m; j <= count; ++j) {
            const double d = *cache.dist(i, j, m, kInf, false);
            nn[static_cast<std::size_t>(i - 1)] = std::min(nn[static_cast<std::size_t>(i - 1)], d);
            nn[static_cast<std::size_t>(j - 1)] = std::min(nn[static_cast<std::size_t>(j - 1)], d);
        }
    }
    return nn;
}

std::vector<DiscordRecord> brute_force_topk(const TimeSeries& series, index_t m, index_t k) {
    const index_t count = series.subseq_count(m);
    if (k < 1 || k > count) throw std::invalid_argument("brute_force_topk: k out of range");
    auto nn = brute_force_nn(series, m);
    std::vector<DiscordRecord> all;
    all.reserve(static_cast<std::size_t>(count));
    for (index_t i = 1; i <= count; ++i) {
        const double d = nn[static_cast<std::size_t>(i - 1)];
        all.push_back({i, d, std::sqrt(d)});
    }
    sort_discords(all);
    all.resize(static_cast<std::size_t>(k));
    return all;
}

}  // namespace tsdiscord
