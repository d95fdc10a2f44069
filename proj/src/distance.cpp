#include "tsdiscord/distance.hpp"

#include <cmath>
#include <numeric>

namespace tsdiscord {

std::vector<double> znormalize(std::span<const double> x) {
    const std::size_t m = x.size();
    if (m < 3) throw std::invalid_argument("znormalize: need at least 3 points");
    double sum = 0.0, sum_sq = 0.0;
    for (double v : x) {
        sum += v;
        sum_sq += v * v;
    }
    const double mu = sum / static_cast<double>(m);
    const double var = sum_sq / static_cast<double>(m) - mu * mu;
    const double sigma = std::sqrt(std::max(var, 0.0));
    std::vector<double> out(m);
    if (sigma < kSigmaEps) return out;  // constant input: all zeros
    for (std::size_t i = 0; i < m; ++i) out[i] = (x[i] - mu) / sigma;
    return out;
}

double sq_ed(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("sq_ed: length mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        sum += d * d;
    }
    return sum;
}

double sq_ednorm_from_dot(double dot, index_t m, double mu_x, double mu_y,
                          double sigma_x, double sigma_y) {
    const double md = static_cast<double>(m);
    const bool const_x = sigma_x < kSigmaEps;
    const bool const_y = sigma_y < kSigmaEps;
    if (const_x && const_y) return 0.0;
    if (const_x || const_y) return 2.0 * md;
    const double corr = (dot - md * mu_x * mu_y) / (md * sigma_x * sigma_y);
    const double dist = 2.0 * md * (1.0 - corr);
    return std::clamp(dist, 0.0, 4.0 * md);
}

std::optional<double> early_abandon_sq_ed(std::span<const double> xh,
                                          std::span<const double> yh, double bound) {
    if (xh.size() != yh.size()) throw std::invalid_argument("early_abandon_sq_ed: length mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < xh.size(); ++i) {
        const double d = xh[i] - yh[i];
        sum += d * d;
        if (sum >= bound) return std::nullopt;
    }
    return sum;
}

DotRow dot_products_block(std::span<const double> query, std::span<const double> window,
                          index_t m, index_t count) {
    if (static_cast<index_t>(query.size()) < m)
        throw std::invalid_argument("dot_products_block: query shorter than m");
    if (static_cast<index_t>(window.size()) < count + m - 1)
        throw std::invalid_argument("dot_products_block: window too short");
    DotRow out(static_cast<std::size_t>(count));
    for (index_t k = 0; k < count; ++k) {
        double dot = 0.0;
        for (index_t p = 0; p < m; ++p)
            dot += query[static_cast<std::size_t>(p)] * window[static_cast<std::size_t>(k + p)];
        out[static_cast<std::size_t>(k)] = dot;
    }
    return out;
}

DotRow update_dot_col(const DotRow& prev_col, const DotRow& row, index_t k,
                      std::span<const double> segment, std::span<const double> chunk,
                      index_t m) {
    if (k <= 1 || k > static_cast<index_t>(row.size()))
        throw std::invalid_argument("update_dot_col: chunk ordinal out of range");
    const std::size_t tids = prev_col.size();
    DotRow col(tids);
    col[0] = row[static_cast<std::size_t>(k - 1)];
    const double chunk_last = chunk[static_cast<std::size_t>(k - 1 + m - 1)];
    const double chunk_first = chunk[static_cast<std::size_t>(k - 2)];
    for (std::size_t tid = 1; tid < tids; ++tid) {
        col[tid] = prev_col[tid - 1] + segment[tid + static_cast<std::size_t>(m) - 1] * chunk_last -
                   segment[tid - 1] * chunk_first;
    }
    return col;
}

}  // namespace tsdiscord
