#include "tsdiscord/merlin.hpp"

#include <algorithm>
#include <cmath>

#include "tsdiscord/pardrag.hpp"
#include "tsdiscord/stats.hpp"

namespace tsdiscord {

namespace {

constexpr std::size_t kWindow = 5;
constexpr double kRetryEps = 0.01;

}  // namespace

double ThresholdHistory::window_mean() const {
    if (nn_dist.size() < kWindow) throw std::logic_error("threshold history window too short");
    double sum = 0.0;
    for (std::size_t k = nn_dist.size() - kWindow; k < nn_dist.size(); ++k) sum += nn_dist[k];
    return sum / static_cast<double>(kWindow);
}

double ThresholdHistory::window_std() const {
    const double mu = window_mean();
    double sum = 0.0;
    for (std::size_t k = nn_dist.size() - kWindow; k < nn_dist.size(); ++k) {
        const double d = nn_dist[k] - mu;
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(kWindow));
}

double next_threshold(const ThresholdHistory& history, ThresholdPhase phase, index_t min_len,
                      double last_r, bool failed) {
    switch (phase) {
        case ThresholdPhase::first:
            return failed ? 0.5 * last_r : 2.0 * std::sqrt(static_cast<double>(min_len));
        case ThresholdPhase::warmup:
            return 0.99 * (failed ? last_r : history.last());
        case ThresholdPhase::steady: {
            if (failed) {
                const double sigma = history.window_std();
                return last_r - std::max(sigma, kRetryEps * last_r);
            }
            const double r = history.window_mean() - 2.0 * history.window_std();
            // A non-positive threshold would accept every subsequence; start
            // from a small positive fraction of the last minimum instead.
            if (r <= 0.0) return kRetryEps * history.last();
            return r;
        }
    }
    throw std::logic_error("unreachable");
}

MerlinReport merlin_full(const TimeSeries& series, index_t min_len, index_t max_len,
                         const MerlinOptions& opts) {
    const index_t n = series.n();
    if (min_len < 3 || min_len > max_len || 2 * max_len > n)
        throw std::invalid_argument("merlin: length range out of bounds (need 3 <= minL <= maxL <= n/2)");
    if (opts.top_k < 1) throw std::invalid_argument("merlin: topK must be positive");

    MerlinReport report;
    report.discords.min_len = min_len;
    report.discords.max_len = max_len;

    ThresholdHistory history;
    RollingStats stats = init_stats(series, min_len);

    for (index_t m = min_len; m <= max_len; ++m) {
        if (m > min_len) stats = opts.reuse_stats ? advance_stats(stats, series) : init_stats(series, m);

        const ThresholdPhase phase = m == min_len              ? ThresholdPhase::first
                                     : m < min_len + 5         ? ThresholdPhase::warmup
                                                               : ThresholdPhase::steady;
        if (phase != ThresholdPhase::first && history.nn_dist.empty()) {
            report.discords.failed_lengths.push_back(m);
            report.final_r.push_back(0.0);
            report.retries.push_back(0);
            continue;
        }

        // Keep segments long enough to hold several candidates per segment
        // once m approaches the configured segment length.
        const index_t seglen = std::min(std::max(opts.seglen, 2 * m), n);
        const SegmentLayout layout = compute_layout(n, m, seglen);
        const ParOptions par_opts{opts.workers, true};

        double r = next_threshold(history, phase, min_len, 0.0, false);
        std::vector<DiscordRecord> records;
        index_t retries = 0;
        bool success = false;
        for (;;) {
            const double r_sq = r > 0.0 ? r * r : 0.0;
            records = pardrag(series, m, r_sq, stats, layout, par_opts);
            // Keep lowering the threshold until the call yields the requested
            // number of records; each retry replaces the provisional list, and
            // a lower threshold only ever widens it.
            if (static_cast<index_t>(records.size()) >= opts.top_k) {
                success = true;
                break;
            }
            if (retries >= opts.max_retries) {
                success = !records.empty();
                break;
            }
            ++retries;
            r = next_threshold(history, phase, min_len, r, true);
        }

        report.final_r.push_back(r);
        report.retries.push_back(retries);
        if (!success) {
            report.discords.failed_lengths.push_back(m);
            continue;
        }

        if (static_cast<index_t>(records.size()) > opts.top_k)
            records.resize(static_cast<std::size_t>(opts.top_k));

        // History tracks the smallest distance among the kept records (for
        // topK = 1, the discord's own distance); the next length's threshold
        // then sits just under the top-k tail instead of decaying toward the
        // global minimum.
        double min_nn = records.front().nn_dist;
        for (const auto& rec : records) min_nn = std::min(min_nn, rec.nn_dist);
        history.push(min_nn);
        report.discords.per_length[m] = std::move(records);
    }
    return report;
}

MultiLengthDiscordSet merlin(const TimeSeries& series, index_t min_len, index_t max_len,
                             const MerlinOptions& opts) {
    return merlin_full(series, min_len, max_len, opts).discords;
}

}  // namespace tsdiscord
