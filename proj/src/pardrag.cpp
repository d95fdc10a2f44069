#include "tsdiscord/pardrag.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <thread>

#include "tsdiscord/distance.hpp"

namespace tsdiscord {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Segments are independent tasks; workers pull indices from a shared counter.
void run_parallel(index_t tasks, index_t workers, const std::function<void(index_t)>& fn) {
    workers = std::min(workers, tasks);
    if (workers <= 1) {
        for (index_t t = 0; t < tasks; ++t) fn(t);
        return;
    }
    std::atomic<index_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (index_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const index_t t = next.fetch_add(1, std::memory_order_relaxed);
                if (t >= tasks) return;
                fn(t);
            }
        });
    }
    for (auto& th : pool) th.join();
}

std::span<const double> elements(const TimeSeries& series, index_t first, index_t count) {
    return std::span<const double>(series.values())
        .subspan(static_cast<std::size_t>(first - 1), static_cast<std::size_t>(count));
}

// The dot-product recurrence and the z-normalized summation disagree by a few
// ulps, which matters in two places: prune decisions when a distance sits on
// the threshold, and the reported nearest-neighbor distances. Distances
// inside this relative band of the decision value are resolved with the
// reference summation instead.
constexpr double kBoundaryBand = 1e-7;

// Near-pair lists are pruned back to the band when they reach this size; if
// pruning cannot shrink one (many distances tied at the minimum, e.g. exactly
// periodic data), the candidate falls back to a full exact pass.
constexpr std::size_t kNearCap = 64;

double reference_sq_dist(const TimeSeries& series, index_t m, index_t i, index_t j) {
    const auto x = znormalize(elements(series, i, m));
    const auto y = znormalize(elements(series, j, m));
    const auto is_const = [](const std::vector<double>& z) {
        for (double v : z)
            if (v != 0.0) return false;
        return true;
    };
    const bool ci = is_const(x), cj = is_const(y);
    if (ci && cj) return 0.0;
    if (ci || cj) return 2.0 * static_cast<double>(m);
    return sq_ed(x, y);
}

struct SegmentGeometry {
    index_t seg_n;
    index_t real_count;  // N, subsequences not overlapping the pad

    index_t first_candidate(index_t seg) const { return seg * seg_n + 1; }
    index_t tid_max(index_t seg) const {
        return std::min(seg_n, real_count - seg * seg_n);
    }
};

enum class Phase { select, refine };

// Worker-private buffers, reused across segments and chunks.
struct Scratch {
    std::vector<double> mu_c, inv_sig_c, row, col_a, col_b, dist;
    std::vector<char> const_c, alive;
    std::vector<index_t> live;  // compacted alive lane ids, ascending
};

// One segment's full scan for either phase. The hot loop iterates only the
// compacted live lanes and stays free of atomics and branches: per chunk
// column it evaluates the candidate distances into a buffer and only falls
// back to the careful scalar path when the column minimum comes close to the
// pruning threshold or a constant subsequence is involved. Shared folds
// happen once per column / once per segment; candidate-side route minima and
// near-minimum pairs go to the owner-exclusive side channel.
void scan_segment(Phase phase, const TimeSeries& series, index_t m, double r_sq,
                  const RollingStats& stats, const SegmentGeometry& geo, index_t seg,
                  SelectionState& state, bool early_exit, Scratch& ws) {
    const index_t tid_max = geo.tid_max(seg);
    if (tid_max <= 0) return;
    const index_t c0 = geo.first_candidate(seg);
    const index_t count = geo.real_count;
    const std::size_t tids = static_cast<std::size_t>(tid_max);
    const double md = static_cast<double>(m);
    const double two_m = 2.0 * md;
    const double band = kBoundaryBand * (1.0 + r_sq);

    ws.mu_c.resize(tids);
    ws.inv_sig_c.resize(tids);
    ws.const_c.resize(tids);
    ws.alive.resize(tids);
    ws.dist.resize(tids);
    ws.live.clear();
    bool const_live = false;
    for (std::size_t i = 0; i < tids; ++i) {
        const index_t c = c0 + static_cast<index_t>(i);
        const double sig = stats.stddev(c);
        ws.mu_c[i] = stats.mean(c);
        ws.const_c[i] = sig < kSigmaEps ? 1 : 0;
        ws.inv_sig_c[i] = ws.const_c[i] ? 0.0 : 1.0 / sig;
        const char a = phase == Phase::select ? 1 : (state.cand(c) ? 1 : 0);
        ws.alive[i] = a;
        if (a) {
            ws.live.push_back(static_cast<index_t>(i));
            const_live = const_live || ws.const_c[i];
        }
    }
    if (ws.live.empty() && early_exit) return;

    const auto segment = elements(series, c0, tid_max + m - 1);
    bool stop = false;

    // Record (q, d) against candidate c while d stays within the band of the
    // candidate's running route minimum; these pairs are enough to rebuild
    // the exact nearest neighbor afterwards.
    const auto track = [&](index_t c, index_t q, double d) {
        double& rm = state.route_min(c);
        if (d <= rm + kBoundaryBand * (1.0 + rm)) {
            auto& lst = state.near_pairs(c);
            lst.push_back({q, d});
            if (lst.size() >= kNearCap) {
                const double lim = std::min(rm, d);
                const double thr = lim + kBoundaryBand * (1.0 + lim);
                lst.erase(std::remove_if(lst.begin(), lst.end(),
                                         [thr](const NearPair& e) { return e.d > thr; }),
                          lst.end());
                if (lst.size() >= kNearCap) {
                    state.set_near_overflow(c);
                    lst.clear();
                }
            }
        }
        if (d < rm) rm = d;
    };

    const auto scan_chunk = [&](index_t q_first, index_t cnt, bool near) {
        const auto chunk = elements(series, q_first, cnt + m - 1);
        const std::size_t cn = static_cast<std::size_t>(cnt);

        // Row of dot products: segment's first subsequence against the chunk.
        ws.row.resize(cn);
        for (std::size_t k = 0; k < cn; ++k) {
            double dot = 0.0;
            for (std::size_t p = 0; p < static_cast<std::size_t>(m); ++p)
                dot += segment[p] * chunk[k + p];
            ws.row[k] = dot;
        }

        ws.col_a.resize(tids);
        ws.col_b.resize(tids);
        std::vector<double>* col = &ws.col_a;
        std::vector<double>* prev = &ws.col_b;

        for (index_t k = 1; k <= cnt; ++k) {
            if (k == 1) {
                for (std::size_t i = 0; i < tids; ++i) {
                    double dot = 0.0;
                    for (std::size_t p = 0; p < static_cast<std::size_t>(m); ++p)
                        dot += chunk[p] * segment[i + p];
                    (*col)[i] = dot;
                }
            } else {
                std::swap(col, prev);
                (*col)[0] = ws.row[static_cast<std::size_t>(k - 1)];
                const double chunk_last = chunk[static_cast<std::size_t>(k - 1 + m - 1)];
                const double chunk_first = chunk[static_cast<std::size_t>(k - 2)];
                const std::vector<double>& pc = *prev;
                std::vector<double>& cc = *col;
                for (std::size_t i = 1; i < tids; ++i) {
                    cc[i] = pc[i - 1] + segment[i + static_cast<std::size_t>(m) - 1] * chunk_last -
                            segment[i - 1] * chunk_first;
                }
            }

            const index_t q = q_first + k - 1;
            // Admissible candidates: the near chunk overlaps the segment, so
            // the non-self-match constraint trims one end of the lane range.
            std::size_t vb = 0, ve = ws.live.size();
            if (near) {
                if (phase == Phase::select) {
                    const index_t h = q - m - c0 + 1;  // highest admissible tid
                    if (h < 1) continue;
                    ve = static_cast<std::size_t>(
                        std::upper_bound(ws.live.begin(), ws.live.end(), h - 1) -
                        ws.live.begin());
                } else {
                    const index_t l = q + m - c0 + 1;  // lowest admissible tid
                    if (l > tid_max) continue;
                    vb = static_cast<std::size_t>(
                        std::lower_bound(ws.live.begin(), ws.live.end(),
                                         std::max<index_t>(l, 1) - 1) -
                        ws.live.begin());
                }
            }
            if (vb >= ve) continue;

            const double sig_q = stats.stddev(q);
            const bool const_q = sig_q < kSigmaEps;
            const double a = md * stats.mean(q);
            const double b = const_q ? 0.0 : 2.0 / sig_q;
            const std::vector<double>& cc = *col;

            if (!const_q && !const_live) {
                // Fast path: evaluate the live range branch-free and commit
                // only when every distance clears the threshold with margin.
                double col_min = kInf;
                for (std::size_t v = vb; v < ve; ++v) {
                    const std::size_t i = static_cast<std::size_t>(ws.live[v]);
                    const double d = two_m - (cc[i] - a * ws.mu_c[i]) * (b * ws.inv_sig_c[i]);
                    ws.dist[v] = d;
                    col_min = std::min(col_min, d);
                }
                if (col_min >= r_sq + band) {
                    for (std::size_t v = vb; v < ve; ++v)
                        track(c0 + ws.live[v], q, ws.dist[v]);
                    state.lower_nn_dist_sq(q, col_min);
                    continue;
                }
            }

            // Careful path: per-candidate conventions, knife-edge
            // recomputation, prune bookkeeping.
            double col_min = kInf;
            bool deaths = false;
            for (std::size_t v = vb; v < ve; ++v) {
                const std::size_t i = static_cast<std::size_t>(ws.live[v]);
                const index_t c = c0 + static_cast<index_t>(i);
                double d;
                if (ws.const_c[i] || const_q) {
                    d = (ws.const_c[i] && const_q) ? 0.0 : two_m;
                } else {
                    d = two_m - (cc[i] - a * ws.mu_c[i]) * (b * ws.inv_sig_c[i]);
                }
                if (std::abs(d - r_sq) <= band) d = reference_sq_dist(series, m, c, q);
                if (d < r_sq) {
                    ws.alive[i] = 0;
                    deaths = true;
                    state.clear_cand(c);
                    if (phase == Phase::select) state.clear_neighbor(q);
                } else {
                    track(c, q, d);
                    col_min = std::min(col_min, d);
                }
            }
            if (col_min < kInf) state.lower_nn_dist_sq(q, col_min);
            if (deaths) {
                ws.live.erase(std::remove_if(ws.live.begin(), ws.live.end(),
                                             [&](index_t i) {
                                                 return !ws.alive[static_cast<std::size_t>(i)];
                                             }),
                              ws.live.end());
                const_live = false;
                for (index_t i : ws.live)
                    const_live = const_live || ws.const_c[static_cast<std::size_t>(i)];
                if (early_exit && ws.live.empty()) {
                    stop = true;
                    return;
                }
            }
        }
    };

    if (phase == Phase::select) {
        for (index_t j = seg; !stop; ++j) {
            const index_t q_first = j * geo.seg_n + m;
            if (q_first > count) break;
            scan_chunk(q_first, std::min(geo.seg_n, count - q_first + 1), j == seg);
        }
    } else {
        for (index_t j = seg; j >= 0 && !stop; --j) {
            const index_t q_nominal = j * geo.seg_n - m + 2;
            const index_t k_start = std::max<index_t>(1, 1 - q_nominal + 1);
            const index_t k_max = std::min(geo.seg_n, count - q_nominal + 1);
            if (k_start > k_max) continue;
            scan_chunk(q_nominal + k_start - 1, k_max - k_start + 1, j == seg);
        }
    }

    // Fold the candidate-side minima into the shared state once per segment.
    for (index_t i : ws.live) {
        const index_t c = c0 + i;
        if (state.route_min(c) < kInf) state.lower_nn_dist_sq(c, state.route_min(c));
    }
}

}  // namespace

SelectionState::SelectionState(const SegmentLayout& layout, index_t real_count)
    : size_(layout.num_seg * layout.seg_n),
      cand_(new std::atomic<unsigned char>[static_cast<std::size_t>(size_)]),
      neighbor_(new std::atomic<unsigned char>[static_cast<std::size_t>(size_)]),
      nn_(new std::atomic<double>[static_cast<std::size_t>(size_)]),
      route_min_(static_cast<std::size_t>(size_), kInf),
      near_(static_cast<std::size_t>(size_)),
      overflow_(static_cast<std::size_t>(size_), 0) {
    for (index_t i = 0; i < size_; ++i) {
        const unsigned char real = i < real_count ? 1 : 0;
        cand_[static_cast<std::size_t>(i)].store(real, std::memory_order_relaxed);
        neighbor_[static_cast<std::size_t>(i)].store(real, std::memory_order_relaxed);
        nn_[static_cast<std::size_t>(i)].store(kInf, std::memory_order_relaxed);
    }
}

void SelectionState::lower_nn_dist_sq(index_t i, double value) {
    auto& slot = nn_[idx(i)];
    double cur = slot.load(std::memory_order_relaxed);
    while (value < cur &&
           !slot.compare_exchange_weak(cur, value, std::memory_order_relaxed)) {
    }
}

void SelectionState::conjoin() {
    for (index_t i = 1; i <= size_; ++i) {
        if (!neighbor(i)) clear_cand(i);
    }
}

SelectionState par_select(const TimeSeries& series, index_t m, double r_sq,
                          const RollingStats& stats, const SegmentLayout& layout,
                          const ParOptions& opts) {
    const index_t count = series.subseq_count(m);
    SelectionState state(layout, count);
    const SegmentGeometry geo{layout.seg_n, count};

    run_parallel(layout.num_seg, opts.workers, [&](index_t seg) {
        thread_local Scratch ws;
        scan_segment(Phase::select, series, m, r_sq, stats, geo, seg, state, opts.early_exit,
                     ws);
    });
    return state;
}

std::vector<DiscordRecord> par_refine(const TimeSeries& series, index_t m, double r_sq,
                                      const RollingStats& stats, const SegmentLayout& layout,
                                      SelectionState& state, const ParOptions& opts) {
    const index_t count = series.subseq_count(m);
    const SegmentGeometry geo{layout.seg_n, count};

    // Only segments that still own at least one candidate take part.
    std::vector<index_t> participating;
    for (index_t seg = 0; seg < layout.num_seg; ++seg) {
        const index_t tid_max = geo.tid_max(seg);
        for (index_t tid = 1; tid <= tid_max; ++tid) {
            if (state.cand(geo.first_candidate(seg) + tid - 1)) {
                participating.push_back(seg);
                break;
            }
        }
    }

    run_parallel(static_cast<index_t>(participating.size()), opts.workers, [&](index_t task) {
        thread_local Scratch ws;
        scan_segment(Phase::refine, series, m, r_sq, stats, geo,
                     participating[static_cast<std::size_t>(task)], state, opts.early_exit, ws);
    });

    // The recurrence-route minima carry a few ulps of rounding; rebuild each
    // survivor's nearest-neighbor distance with the reference summation so
    // the reported value equals the serial scan's bit for bit. The owner
    // segment saw every admissible pair of a survivor across both phases, so
    // its near-pair list contains the true minimizer; only those few pairs
    // need recomputing.
    std::vector<DiscordRecord> out;
    for (index_t i = 1; i <= count; ++i) {
        if (!state.cand(i)) continue;
        double best = kInf;
        if (state.near_overflow(i)) {
            // Degenerate case (list would not stay bounded): one exact pass.
            const auto zi = znormalize(elements(series, i, m));
            const auto is_const = [](const std::vector<double>& z) {
                for (double v : z)
                    if (v != 0.0) return false;
                return true;
            };
            const bool ci = is_const(zi);
            for (index_t j = 1; j <= count; ++j) {
                if (!non_self_match(i, j, m)) continue;
                const auto zj = znormalize(elements(series, j, m));
                const bool cj = is_const(zj);
                if (ci || cj) {
                    const double d = (ci && cj) ? 0.0 : 2.0 * static_cast<double>(m);
                    best = std::min(best, d);
                    continue;
                }
                if (const auto d = early_abandon_sq_ed(zi, zj, best)) best = *d;
            }
        } else {
            const double rm = state.route_min(i);
            const double thr = rm + kBoundaryBand * (1.0 + rm);
            for (const NearPair& e : state.near_pairs(i)) {
                if (e.d <= thr) best = std::min(best, reference_sq_dist(series, m, i, e.q));
            }
        }
        out.push_back({i, best, std::sqrt(best)});
    }
    sort_discords(out);
    return out;
}

std::vector<DiscordRecord> pardrag(const TimeSeries& series, index_t m, double r_sq,
                                   const RollingStats& stats, const SegmentLayout& layout,
                                   const ParOptions& opts) {
    SelectionState state = par_select(series, m, r_sq, stats, layout, opts);
    state.conjoin();
    return par_refine(series, m, r_sq, stats, layout, state, opts);
}

std::vector<DiscordRecord> pardrag(const TimeSeries& series, index_t m, double r_sq,
                                   index_t seglen, index_t workers, bool early_exit) {
    const SegmentLayout layout = compute_layout(series.n(), m, seglen);
    const RollingStats stats = init_stats(series, m);
    return pardrag(series, m, r_sq, stats, layout, ParOptions{workers, early_exit});
}

}  // namespace tsdiscord
