#ifndef TSDISCORD_DISTANCE_HPP
#define TSDISCORD_DISTANCE_HPP

#include <optional>
#include <span>
#include <vector>

#include "tsdiscord/stats.hpp"
#include "tsdiscord/types.hpp"

namespace tsdiscord {

// Scalar products between one fixed m-length subsequence and each
// subsequence of a window (the QTrow / QTcol vectors).
using DotRow = std::vector<double>;

// Mean-0 / std-1 rescaling; a constant input maps to the all-zero vector.
std::vector<double> znormalize(std::span<const double> x);

// Plain squared Euclidean distance.
double sq_ed(std::span<const double> x, std::span<const double> y);

// Squared z-normalized Euclidean distance from a raw scalar product and the
// per-subsequence moments: 2m * (1 - (dot - m*muX*muY) / (m*sigmaX*sigmaY)),
// clamped to [0, 4m]. If exactly one sigma is (near) zero the result is the
// uncorrelated midpoint 2m; if both, 0.
double sq_ednorm_from_dot(double dot, index_t m, double mu_x, double mu_y,
                          double sigma_x, double sigma_y);

// Running-sum squared distance that stops as soon as the partial sum reaches
// `bound`; nullopt signals the abandon.
std::optional<double> early_abandon_sq_ed(std::span<const double> xh,
                                          std::span<const double> yh, double bound);

// Direct O(count*m) scalar products of `query` against the `count` windows
// of length m starting at window[0], window[1], ...
DotRow dot_products_block(std::span<const double> query, std::span<const double> window,
                          index_t m, index_t count);

// One step of the O(1)-per-entry diagonal scalar-product recurrence.
// `prev_col` holds products of the chunk's (k-1)-th subsequence against every
// segment subsequence, `row` the products of the segment's first subsequence
// against every chunk subsequence. Entry tid=1 comes from row[k]; entry
// tid>1 slides prev_col[tid-1] by one element pair.
DotRow update_dot_col(const DotRow& prev_col, const DotRow& row, index_t k,
                      std::span<const double> segment, std::span<const double> chunk,
                      index_t m);

}  // namespace tsdiscord

#endif
