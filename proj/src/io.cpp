#include "tsdiscord/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

namespace tsdiscord {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& token, double& out) {
    const std::string t = trim(token);
    if (t.empty()) return false;
    const char* begin = t.data();
    const char* end = begin + t.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

TimeSeries load_series(const std::string& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);

    std::vector<double> values;
    std::string line;
    long line_no = 0;
    long column_index = column.empty() ? 0 : -1;
    bool header_checked = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv(line);

        if (!header_checked) {
            header_checked = true;
            double probe;
            const bool numeric_first_row = parse_double(fields[0], probe);
            if (!numeric_first_row) {
                // Header row: resolve the requested column by name.
                if (!column.empty()) {
                    for (std::size_t f = 0; f < fields.size(); ++f) {
                        if (trim(fields[f]) == column) column_index = static_cast<long>(f);
                    }
                    if (column_index < 0) {
                        double idx;
                        if (parse_double(column, idx))
                            column_index = static_cast<long>(idx);
                        else
                            throw std::runtime_error("column '" + column + "' not found in header");
                    }
                }
                continue;
            }
            if (!column.empty()) {
                double idx;
                if (!parse_double(column, idx))
                    throw std::runtime_error("column '" + column + "' requested but file has no header");
                column_index = static_cast<long>(idx);
            }
        }

        if (column_index >= static_cast<long>(fields.size()))
            throw std::runtime_error("line " + std::to_string(line_no) + ": missing column " +
                                     std::to_string(column_index));
        double v;
        if (!parse_double(fields[static_cast<std::size_t>(column_index)], v))
            throw std::runtime_error("line " + std::to_string(line_no) + ": non-numeric value '" +
                                     trim(fields[static_cast<std::size_t>(column_index)]) + "'");
        values.push_back(v);
    }
    if (values.size() < 3)
        throw std::runtime_error("series too short: need at least 3 values, got " +
                                 std::to_string(values.size()));
    return TimeSeries(std::move(values));
}

void write_series(const TimeSeries& series, std::ostream& out) {
    for (double v : series.values()) out << format_double(v) << '\n';
}

TimeSeries gen_randomwalk(index_t n, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("gen_randomwalk: n must be at least 3");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> step(0.0, 1.0);
    std::vector<double> values(static_cast<std::size_t>(n));
    values[0] = 0.0;
    for (index_t i = 1; i < n; ++i)
        values[static_cast<std::size_t>(i)] = values[static_cast<std::size_t>(i - 1)] + step(rng);
    return TimeSeries(std::move(values));
}

void write_discords_csv(const MultiLengthDiscordSet& discords, std::ostream& out) {
    out << "length,index,nn_dist,nn_dist_sq,score\n";
    for (const auto& [m, records] : discords.per_length) {
        for (const auto& rec : records) {
            out << m << ',' << rec.index << ',' << format_double(rec.nn_dist) << ','
                << format_double(rec.nn_dist_sq) << ','
                << format_double(rec.nn_dist_sq / (2.0 * static_cast<double>(m))) << '\n';
        }
    }
}

MultiLengthDiscordSet read_discords_csv(std::istream& in) {
    MultiLengthDiscordSet set;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        if (line_no == 1) {
            if (line.rfind("length,", 0) != 0)
                throw std::runtime_error("discord CSV: unexpected header '" + line + "'");
            continue;
        }
        auto fields = split_csv(line);
        if (fields.size() < 4)
            throw std::runtime_error("discord CSV line " + std::to_string(line_no) +
                                     ": expected at least 4 fields");
        double m, index, nn_dist, nn_dist_sq;
        if (!parse_double(fields[0], m) || !parse_double(fields[1], index) ||
            !parse_double(fields[2], nn_dist) || !parse_double(fields[3], nn_dist_sq))
            throw std::runtime_error("discord CSV line " + std::to_string(line_no) +
                                     ": non-numeric field");
        set.per_length[static_cast<index_t>(m)].push_back(
            {static_cast<index_t>(index), nn_dist_sq, nn_dist});
    }
    if (!set.per_length.empty()) {
        set.min_len = set.per_length.begin()->first;
        set.max_len = set.per_length.rbegin()->first;
    }
    return set;
}

}  // namespace tsdiscord
