#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "tsdiscord/drag.hpp"
#include "tsdiscord/heatmap.hpp"
#include "tsdiscord/io.hpp"
#include "tsdiscord/merlin.hpp"
#include "tsdiscord/pardrag.hpp"

namespace {

using namespace tsdiscord;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

index_t default_workers() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<index_t>(hc);
}

struct CommonArgs {
    std::string input;
    std::string column;
    index_t min_len = 0;
    index_t max_len = 0;
    index_t top_k = 1;
    index_t seglen = 512;
    index_t workers = default_workers();
    std::string output;
};

void add_range_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--minl", args.min_len, "Minimum discord length")->required();
    cmd->add_option("--maxl", args.max_len, "Maximum discord length")->required();
    cmd->add_option("--topk", args.top_k, "Discords to keep per length");
    cmd->add_option("--seglen", args.seglen, "Segment length");
    cmd->add_option("--workers", args.workers, "Worker threads");
}

MerlinOptions to_options(const CommonArgs& args) {
    MerlinOptions opts;
    opts.top_k = args.top_k;
    opts.seglen = args.seglen;
    opts.workers = args.workers;
    return opts;
}

int cmd_discover(const CommonArgs& args) {
    const TimeSeries series = load_series(args.input, args.column);
    const auto start = Clock::now();
    const MultiLengthDiscordSet discords = merlin(series, args.min_len, args.max_len, to_options(args));
    const double elapsed = seconds_since(start);

    auto out = open_output(args.output);
    write_discords_csv(discords, out);

    for (const auto& [m, records] : discords.per_length)
        std::cout << "length " << m << ": " << records.size() << " discord(s)\n";
    for (index_t m : discords.failed_lengths)
        std::cout << "length " << m << ": FAILED (threshold retries exhausted)\n";
    std::cout << "wall time: " << elapsed << " s\n";
    return discords.failed_lengths.empty() ? 0 : 1;
}

int cmd_oracle_check(const CommonArgs& args, const std::string& discords_path) {
    const TimeSeries series = load_series(args.input, args.column);
    if (series.n() > 5000) throw std::runtime_error("oracle-check: series too long (guard is n <= 5000)");

    MultiLengthDiscordSet got;
    if (discords_path.empty()) {
        got = merlin(series, args.min_len, args.max_len, to_options(args));
    } else {
        std::ifstream in(discords_path);
        if (!in) throw std::runtime_error("cannot open discord file: " + discords_path);
        got = read_discords_csv(in);
    }

    bool all_pass = true;
    for (index_t m = args.min_len; m <= args.max_len; ++m) {
        const auto expected = brute_force_topk(series, m, args.top_k);
        const auto it = got.per_length.find(m);
        double max_rel = 0.0;
        bool pass = it != got.per_length.end() && it->second.size() == expected.size();
        if (pass) {
            for (std::size_t k = 0; k < expected.size(); ++k) {
                if (it->second[k].index != expected[k].index) pass = false;
                const double rel = std::abs(it->second[k].nn_dist - expected[k].nn_dist) /
                                   std::max(expected[k].nn_dist, 1e-300);
                max_rel = std::max(max_rel, rel);
            }
            if (max_rel > 1e-7) pass = false;
        }
        std::cout << "length " << m << ": " << (pass ? "PASS" : "FAIL")
                  << " (max nn_dist discrepancy " << max_rel << ")\n";
        all_pass = all_pass && pass;
    }
    return all_pass ? 0 : 1;
}

int cmd_heatmap(const std::string& discords_path, index_t n, const std::string& prefix) {
    std::ifstream in(discords_path);
    if (!in) throw std::runtime_error("cannot open discord file: " + discords_path);
    MultiLengthDiscordSet discords = read_discords_csv(in);
    if (discords.per_length.empty())
        throw std::runtime_error("discord file contains no records; nothing to plot");

    const Heatmap heatmap = build_heatmap(discords, n);
    {
        auto out = open_output(prefix + "_heatmap.csv");
        write_heatmap_csv(heatmap, out);
    }
    {
        auto out = open_output(prefix + "_heatmap.pgm");
        write_heatmap_pgm(heatmap, out);
    }
    {
        auto out = open_output(prefix + "_ranking.csv");
        write_ranking_csv(rank_discords(heatmap, 10), out);
    }
    std::cout << "heatmap: " << heatmap.rows() << " x " << heatmap.cols() << "\n";
    return 0;
}

int cmd_bench(const CommonArgs& args, const std::vector<index_t>& ns,
              const std::vector<index_t>& seglens, const std::vector<index_t>& worker_counts,
              const std::vector<index_t>& widths, std::uint64_t seed) {
    auto out = open_output(args.output);
    out << "axis,n,min_len,max_len,seglen,workers,wall_s,discords,s_per_discord\n";

    auto run_row = [&](const char* axis, index_t n, index_t min_len, index_t max_len,
                       index_t seglen, index_t workers) {
        const TimeSeries series = gen_randomwalk(n, seed);
        MerlinOptions opts;
        opts.top_k = args.top_k;
        opts.seglen = seglen;
        opts.workers = workers;
        const auto start = Clock::now();
        const auto discords = merlin(series, min_len, max_len, opts);
        const double elapsed = seconds_since(start);
        std::size_t found = 0;
        for (const auto& [m, records] : discords.per_length) found += records.size();
        out << axis << ',' << n << ',' << min_len << ',' << max_len << ',' << seglen << ','
            << workers << ',' << elapsed << ',' << found << ','
            << (found ? elapsed / static_cast<double>(found) : 0.0) << '\n';
        std::cout << axis << " n=" << n << " range=[" << min_len << ',' << max_len << "]"
                  << " seglen=" << seglen << " workers=" << workers << ": " << elapsed << " s\n";
    };

    for (index_t n : ns) run_row("n", n, args.min_len, args.max_len, args.seglen, args.workers);
    for (index_t w : widths)
        run_row("range", ns.empty() ? 100000 : ns.front(), args.min_len, args.min_len + w - 1,
                args.seglen, args.workers);
    for (index_t s : seglens)
        run_row("seglen", ns.empty() ? 100000 : ns.front(), args.min_len, args.max_len, s,
                args.workers);
    for (index_t w : worker_counts)
        run_row("workers", ns.empty() ? 100000 : ns.front(), args.min_len, args.max_len,
                args.seglen, w);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-length time series discord discovery"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string discords_path;
    index_t gen_n = 0;
    std::uint64_t seed = 0;
    index_t heatmap_n = 0;
    std::vector<index_t> bench_ns, bench_seglens, bench_workers, bench_widths;

    auto* gen = app.add_subcommand("gen-rw", "Generate a random-walk series");
    gen->add_option("--n", gen_n, "Series length")->required();
    gen->add_option("--seed", seed, "RNG seed");
    gen->add_option("--output", args.output, "Output path")->required();

    auto* discover = app.add_subcommand("discover", "Run multi-length discord discovery");
    discover->add_option("--input", args.input, "Input series file")->required();
    discover->add_option("--column", args.column, "CSV column (name or 0-based position)");
    add_range_flags(discover, args);
    discover->add_option("--output", args.output, "Discord CSV output path")->required();

    auto* oracle = app.add_subcommand("oracle-check", "Compare discovery against the brute-force oracle");
    oracle->add_option("--input", args.input, "Input series file")->required();
    oracle->add_option("--column", args.column, "CSV column (name or 0-based position)");
    add_range_flags(oracle, args);
    oracle->add_option("--discords", discords_path, "Check an existing discord CSV instead of running discovery");

    auto* heat = app.add_subcommand("heatmap", "Render heatmap, graymap and ranking from a discord CSV");
    heat->add_option("--input", discords_path, "Discord CSV from `discover`")->required();
    heat->add_option("--n", heatmap_n, "Length of the original series")->required();
    heat->add_option("--output", args.output, "Output path prefix")->required();

    auto* bench = app.add_subcommand("bench", "Scalability sweeps on synthetic data");
    add_range_flags(bench, args);
    bench->add_option("--seed", seed, "RNG seed for the synthetic series");
    bench->add_option("--sweep-n", bench_ns, "Series lengths to sweep")->delimiter(',');
    bench->add_option("--sweep-seglen", bench_seglens, "Segment lengths to sweep")->delimiter(',');
    bench->add_option("--sweep-workers", bench_workers, "Worker counts to sweep")->delimiter(',');
    bench->add_option("--sweep-width", bench_widths, "Length-range widths to sweep")->delimiter(',');
    bench->add_option("--output", args.output, "Report CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            const TimeSeries series = gen_randomwalk(gen_n, seed);
            auto out = open_output(args.output);
            write_series(series, out);
            return 0;
        }
        if (discover->parsed()) return cmd_discover(args);
        if (oracle->parsed()) return cmd_oracle_check(args, discords_path);
        if (heat->parsed()) return cmd_heatmap(discords_path, heatmap_n, args.output);
        if (bench->parsed())
            return cmd_bench(args, bench_ns, bench_seglens, bench_workers, bench_widths, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
