// Release gate: one check per acceptance criterion, one PASS/FAIL line each.
// Criterion 9 is a soft scalability report and never fails the gate.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tsdiscord/distance.hpp"
#include "tsdiscord/drag.hpp"
#include "tsdiscord/heatmap.hpp"
#include "tsdiscord/io.hpp"
#include "tsdiscord/merlin.hpp"
#include "tsdiscord/pardrag.hpp"
#include "tsdiscord/stats.hpp"

namespace {

using namespace tsdiscord;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << number << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!pass) ++failures;
}

void info(int number, const std::string& name, const std::string& detail) {
    std::cout << "[INFO] criterion " << number << ": " << name << " (" << detail << ")"
              << std::endl;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// 1. Oracle exactness: 50 random walks, single-length merlin top-3 vs the
//    brute-force oracle; discovery runtime budget 60 s.
void criterion_1() {
    bool pass = true;
    std::string detail;
    double discover_s = 0.0;
    for (std::uint64_t seed = 1; seed <= 50 && pass; ++seed) {
        const TimeSeries series = gen_randomwalk(2000, seed);
        for (index_t m : {8, 16, 32, 64}) {
            MerlinOptions opts;
            opts.top_k = 3;
            opts.seglen = 512;
            opts.workers = 2;
            const auto start = Clock::now();
            const auto result = merlin(series, m, m, opts);
            discover_s += seconds_since(start);
            const auto expected = brute_force_topk(series, m, 3);
            const auto it = result.per_length.find(m);
            if (it == result.per_length.end() || it->second.size() != expected.size()) {
                pass = false;
                detail = "seed " + std::to_string(seed) + " m " + std::to_string(m) +
                         ": wrong record count";
                break;
            }
            for (std::size_t k = 0; k < expected.size(); ++k) {
                const double rel = std::abs(it->second[k].nn_dist - expected[k].nn_dist) /
                                   std::max(expected[k].nn_dist, 1e-300);
                if (it->second[k].index != expected[k].index || rel > 1e-7) {
                    pass = false;
                    detail = "seed " + std::to_string(seed) + " m " + std::to_string(m) +
                             ": record " + std::to_string(k) + " mismatch";
                    break;
                }
            }
        }
    }
    if (pass && discover_s >= 60.0) {
        pass = false;
        detail = "discovery took " + fmt(discover_s) + " s, budget 60 s";
    }
    if (pass) detail = "discovery time " + fmt(discover_s) + " s";
    report(1, "single-length top-3 equals the brute-force oracle", pass, detail);
}

// 2. Serial/parallel equivalence on 50 instances, plus byte-identical
//    discovery CSV across worker counts.
void criterion_2() {
    bool pass = true;
    std::string detail;
    std::mt19937_64 rng(404);
    for (int instance = 0; instance < 50 && pass; ++instance) {
        const index_t n = 300 + static_cast<index_t>(rng() % 400);
        const TimeSeries series = gen_randomwalk(n, 1000 + static_cast<std::uint64_t>(instance));
        const index_t m = 8;
        const auto nn = brute_force_nn(series, m);
        std::vector<double> sorted(nn);
        std::sort(sorted.begin(), sorted.end());
        const double r_sq = sorted[sorted.size() * 3 / 4];
        const auto serial = drag(series, m, r_sq);
        for (index_t seglen : {16, 32, 64}) {
            for (index_t workers : {1, 2, 4, 8}) {
                const auto parallel = pardrag(series, m, r_sq, seglen, workers);
                if (parallel.size() != serial.size()) {
                    pass = false;
                    detail = "instance " + std::to_string(instance) + ": size mismatch";
                    break;
                }
                for (std::size_t k = 0; k < serial.size(); ++k) {
                    if (parallel[k].index != serial[k].index ||
                        std::abs(parallel[k].nn_dist_sq - serial[k].nn_dist_sq) > 1e-12) {
                        pass = false;
                        detail = "instance " + std::to_string(instance) + ": record mismatch";
                        break;
                    }
                }
                if (!pass) break;
            }
            if (!pass) break;
        }
    }

    if (pass) {
        const TimeSeries series = gen_randomwalk(3000, 2024);
        std::string first_csv;
        for (index_t workers : {1, 2, 4, 8}) {
            MerlinOptions opts;
            opts.top_k = 2;
            opts.seglen = 128;
            opts.workers = workers;
            std::ostringstream out;
            write_discords_csv(merlin(series, 8, 24, opts), out);
            if (workers == 1) {
                first_csv = out.str();
            } else if (out.str() != first_csv) {
                pass = false;
                detail = "discovery CSV differs at workers=" + std::to_string(workers);
            }
        }
    }
    report(2, "parallel scan equals the serial scan; CSV byte-identical across workers", pass,
           detail);
}

// 3. Rolling-stats recurrence from m=8 to m=512 on n=10,000.
void criterion_3() {
    const TimeSeries series = gen_randomwalk(10000, 3);
    RollingStats rolling = init_stats(series, 8);
    double max_mu = 0.0, max_sigma = 0.0;
    for (index_t m = 9; m <= 512; ++m) {
        rolling = advance_stats(rolling, series);
        const auto direct = init_stats(series, m);
        for (index_t i = 1; i <= direct.valid_count; ++i) {
            max_mu = std::max(max_mu, std::abs(rolling.mean(i) - direct.mean(i)));
            max_sigma = std::max(max_sigma, std::abs(rolling.stddev(i) - direct.stddev(i)));
        }
    }
    const bool pass = max_mu < 1e-9 && max_sigma < 1e-9;
    report(3, "rolling-stats recurrence error below 1e-9 through m=512", pass,
           "max mean err " + fmt(max_mu) + ", max stddev err " + fmt(max_sigma));
}

// 4. Dot-product column recurrence on 1,000 random segment/chunk pairs.
void criterion_4() {
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> dist(-100.0, 100.0);
    bool pass = true;
    double worst = 0.0;
    for (int pair = 0; pair < 1000 && pass; ++pair) {
        const index_t m = 3 + static_cast<index_t>(rng() % 510);  // up to 512
        const index_t seg_n = 2 + static_cast<index_t>(rng() % 24);
        std::vector<double> segment(static_cast<std::size_t>(seg_n + m - 1));
        std::vector<double> chunk(static_cast<std::size_t>(seg_n + m - 1));
        for (auto& v : segment) v = dist(rng);
        for (auto& v : chunk) v = dist(rng);

        const DotRow row = dot_products_block(
            std::span(segment).first(static_cast<std::size_t>(m)), chunk, m, seg_n);
        DotRow col = dot_products_block(std::span(chunk).first(static_cast<std::size_t>(m)),
                                        segment, m, seg_n);
        for (index_t k = 2; k <= seg_n && pass; ++k) {
            col = update_dot_col(col, row, k, segment, chunk, m);
            for (index_t tid = 0; tid < seg_n; ++tid) {
                double direct = 0.0;
                for (index_t p = 0; p < m; ++p)
                    direct += segment[static_cast<std::size_t>(tid + p)] *
                              chunk[static_cast<std::size_t>(k - 1 + p)];
                const double rel = std::abs(col[static_cast<std::size_t>(tid)] - direct) /
                                   std::max(std::abs(direct), 1.0);
                worst = std::max(worst, rel);
                if (rel > 1e-8) {
                    pass = false;
                    break;
                }
            }
        }
    }
    report(4, "dot-product column recurrence within 1e-8 of direct products", pass,
           "worst relative error " + fmt(worst));
}

// 5. Range-discord semantics at the 50th/90th/100th percentile thresholds.
void criterion_5() {
    bool pass = true;
    std::string detail;
    for (std::uint64_t seed = 500; seed < 510 && pass; ++seed) {
        const TimeSeries series = gen_randomwalk(800, seed);
        const index_t m = 12;
        const auto nn = brute_force_nn(series, m);
        std::vector<double> sorted(nn);
        std::sort(sorted.begin(), sorted.end());
        const double r50 = sorted[sorted.size() / 2];
        const double r90 = sorted[sorted.size() * 9 / 10];
        const double r100 = sorted.back();

        std::set<index_t> previous;
        bool first = true;
        for (double r_sq : {r50, r90, r100}) {
            std::set<index_t> expected;
            for (std::size_t i = 0; i < nn.size(); ++i)
                if (nn[i] >= r_sq) expected.insert(static_cast<index_t>(i + 1));
            for (int par = 0; par < 2; ++par) {
                const auto result = par ? pardrag(series, m, r_sq, 64, 4)
                                        : drag(series, m, r_sq);
                std::set<index_t> got;
                for (const auto& rec : result) got.insert(rec.index);
                if (got != expected) {
                    pass = false;
                    detail = "seed " + std::to_string(seed) + ": set mismatch";
                }
            }
            // monotone shrink as the threshold grows
            if (!first && !std::includes(previous.begin(), previous.end(), expected.begin(),
                                         expected.end())) {
                pass = false;
                detail = "seed " + std::to_string(seed) + ": shrink violated";
            }
            previous = expected;
            first = false;
        }
    }
    report(5, "range-discord output equals the oracle threshold set", pass, detail);
}

// 6. Threshold schedule constants.
void criterion_6() {
    bool pass = true;
    auto expect = [&](double got, double want) {
        if (std::abs(got - want) > 1e-12 * std::max(1.0, std::abs(want))) pass = false;
    };
    ThresholdHistory empty;
    expect(next_threshold(empty, ThresholdPhase::first, 64, 0.0, false), 16.0);
    expect(next_threshold(empty, ThresholdPhase::first, 64, 16.0, true), 8.0);
    ThresholdHistory one;
    one.push(10.0);
    expect(next_threshold(one, ThresholdPhase::warmup, 8, 0.0, false), 9.9);
    expect(next_threshold(one, ThresholdPhase::warmup, 8, 9.9, true), 9.9 * 0.99);
    ThresholdHistory steady;
    for (double v : {3.5, 4.5, 4.0, 4.5, 3.5}) steady.push(v);
    const double sigma = steady.window_std();
    expect(steady.window_mean(), 4.0);
    expect(next_threshold(steady, ThresholdPhase::steady, 8, 0.0, false), 4.0 - 2.0 * sigma);
    expect(next_threshold(steady, ThresholdPhase::steady, 8, 3.0, true), 3.0 - sigma);
    ThresholdHistory flat;
    for (int k = 0; k < 5; ++k) flat.push(3.0);
    expect(next_threshold(flat, ThresholdPhase::steady, 8, 3.0, true), 3.0 - 0.03);
    report(6, "threshold schedule reproduces the fixed constants", pass);
}

// 7. Heatmap scores in [0,2], 4m maps to 2.0, top-1 equals a direct max scan.
void criterion_7() {
    bool pass = true;
    {
        MultiLengthDiscordSet set;
        set.min_len = set.max_len = 8;
        set.per_length[8] = {{3, 32.0, std::sqrt(32.0)}};
        const auto hm = build_heatmap(set, 50);
        if (hm.score(8, 3) != 2.0) pass = false;
    }
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20 && pass; ++trial) {
        const index_t min_len = 4 + static_cast<index_t>(rng() % 4);
        const index_t max_len = min_len + static_cast<index_t>(rng() % 6);
        const index_t n = 60 + static_cast<index_t>(rng() % 100);
        MultiLengthDiscordSet set;
        set.min_len = min_len;
        set.max_len = max_len;
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (index_t m = min_len; m <= max_len; ++m) {
            std::vector<DiscordRecord> records;
            const int count = static_cast<int>(rng() % 4);
            for (int c = 0; c < count; ++c) {
                const index_t i = 1 + static_cast<index_t>(rng() % (n - m));
                const double d = unit(rng) * 4.0 * static_cast<double>(m);
                records.push_back({i, d, std::sqrt(d)});
            }
            if (!records.empty()) set.per_length[m] = std::move(records);
        }
        const auto hm = build_heatmap(set, n);
        double best = 0.0;
        RankedDiscord direct{0, 0, 0.0};
        for (index_t i = 1; i <= hm.cols(); ++i) {
            for (index_t m = min_len; m <= max_len; ++m) {
                const double s = hm.score(m, i);
                if (s < 0.0 || s > 2.0) pass = false;
                if (s > best) {
                    best = s;
                    direct = {i, m, s};
                }
            }
        }
        const auto ranking = rank_discords(hm, 1);
        if (best > 0.0) {
            if (ranking.empty() || ranking[0].index != direct.index ||
                ranking[0].length != direct.length || ranking[0].score != direct.score)
                pass = false;
        } else if (!ranking.empty()) {
            pass = false;
        }
    }
    report(7, "heatmap scores bounded and top-1 equals the direct double max", pass);
}

// 8. Padding formula over 10,000 random layout triples.
void criterion_8() {
    std::mt19937_64 rng(88);
    bool pass = true;
    int checked = 0, aligned = 0;
    while (checked < 10000 && pass) {
        const index_t n = 50 + static_cast<index_t>(rng() % 5000);
        const index_t m = 3 + static_cast<index_t>(rng() % (n / 3));
        if (m > n - 2) continue;
        const index_t seglen = m + static_cast<index_t>(rng() % (n - m + 1));
        const auto layout = compute_layout(n, m, seglen);
        ++checked;
        const index_t count = n - m + 1;
        const index_t expected_segs = (count + layout.seg_n - 1) / layout.seg_n;
        const index_t expected_pad = expected_segs * layout.seg_n + 2 * (m - 1) - n;
        if (layout.num_seg != expected_segs || layout.pad != expected_pad) pass = false;
        if (count % layout.seg_n == 0) {
            ++aligned;
            if (layout.pad != m - 1) pass = false;
        }
    }
    report(8, "padding formula holds on 10,000 random layouts", pass,
           std::to_string(aligned) + " aligned cases hit pad = m-1");
}

// 9. Soft scalability report: worker speedup and growth in n and range width.
void criterion_9() {
    const unsigned cores = std::thread::hardware_concurrency();
    const TimeSeries series = gen_randomwalk(100000, 9);
    auto timed = [&](index_t workers, index_t min_len, index_t max_len) {
        MerlinOptions opts;
        opts.seglen = 512;
        opts.workers = workers;
        const auto start = Clock::now();
        (void)merlin(series, min_len, max_len, opts);
        return seconds_since(start);
    };
    const double t1 = timed(1, 128, 130);
    const double t8 = timed(8, 128, 130);
    info(9, "worker scaling on n=100000",
         "host cores " + std::to_string(cores) + ", 1 worker " + fmt(t1) + " s, 8 workers " +
             fmt(t8) + " s, ratio " + fmt(t8 / t1) +
             (cores >= 4 ? "" : "; host below 4 cores, 0.6x target not applicable"));

    double prev = 0.0;
    std::string growth;
    for (index_t n : {25000, 50000, 100000}) {
        const TimeSeries s = gen_randomwalk(n, 10);
        MerlinOptions opts;
        opts.seglen = 512;
        opts.workers = cores == 0 ? 1 : static_cast<index_t>(cores);
        const auto start = Clock::now();
        (void)merlin(s, 128, 129, opts);
        const double t = seconds_since(start);
        growth += (growth.empty() ? "" : ", ") + std::to_string(n) + ": " + fmt(t) + " s";
        prev = t;
    }
    (void)prev;
    info(9, "growth in n (m range 128..129)", growth);

    growth.clear();
    for (index_t width : {1, 4, 16}) {
        MerlinOptions opts;
        opts.seglen = 512;
        opts.workers = cores == 0 ? 1 : static_cast<index_t>(cores);
        const auto start = Clock::now();
        (void)merlin(series, 128, 128 + width - 1, opts);
        growth += (growth.empty() ? "" : ", ") + std::to_string(width) + " lengths: " +
                  fmt(seconds_since(start)) + " s";
    }
    info(9, "growth in length-range width (n=100000)", growth);
    report(9, "relative scalability (soft, reported above)", true, "not asserted");
}

// 10. Case-study configuration completes in budget with the stated shapes.
void criterion_10() {
    const index_t n = 35040, min_len = 48, max_len = 672;
    const TimeSeries series = gen_randomwalk(n, 1048);
    MerlinOptions opts;
    opts.top_k = 6;
    opts.seglen = 512;
    const unsigned cores = std::thread::hardware_concurrency();
    opts.workers = cores == 0 ? 1 : static_cast<index_t>(cores);

    const auto start = Clock::now();
    const auto discords = merlin(series, min_len, max_len, opts);
    const double elapsed = seconds_since(start);

    bool pass = elapsed < 1800.0;
    std::string detail = "wall time " + fmt(elapsed) + " s";
    if (!discords.failed_lengths.empty()) {
        pass = false;
        detail += ", " + std::to_string(discords.failed_lengths.size()) + " failed lengths";
    }
    const auto heatmap = build_heatmap(discords, n);
    if (heatmap.rows() != max_len - min_len + 1 || heatmap.cols() != n - min_len) {
        pass = false;
        detail += ", unexpected heatmap shape " + std::to_string(heatmap.rows()) + "x" +
                  std::to_string(heatmap.cols());
    } else {
        detail += ", heatmap " + std::to_string(heatmap.rows()) + "x" +
                  std::to_string(heatmap.cols());
    }
    const auto ranking = rank_discords(heatmap, 6);
    if (ranking.size() != 6) {
        pass = false;
        detail += ", ranking size " + std::to_string(ranking.size());
    }
    report(10, "case-study configuration finishes in budget with the stated shapes", pass,
           detail);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
              << std::endl;
    return failures == 0 ? 0 : 1;
}
