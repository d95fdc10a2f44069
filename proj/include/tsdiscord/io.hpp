#ifndef TSDISCORD_IO_HPP
#define TSDISCORD_IO_HPP

#include <iosfwd>
#include <string>

#include "tsdiscord/types.hpp"

namespace tsdiscord {

// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double value);

// One value per line, or CSV with a designated column (by header name or
// 0-based position; empty = first column). Blank lines are skipped;
// non-numeric tokens are reported with their line number.
TimeSeries load_series(const std::string& path, const std::string& column = "");

void write_series(const TimeSeries& series, std::ostream& out);

// Random walk: x1 = 0, x_{i+1} = x_i + eps_i with standard-normal steps from
// a seeded deterministic generator.
TimeSeries gen_randomwalk(index_t n, std::uint64_t seed);

// Discord list CSV: header "length,index,nn_dist,nn_dist_sq,score", sorted by
// (length asc, nn_dist desc, index asc); score = nn_dist_sq / (2m).
void write_discords_csv(const MultiLengthDiscordSet& discords, std::ostream& out);
MultiLengthDiscordSet read_discords_csv(std::istream& in);

}  // namespace tsdiscord

#endif
