#include "polarscope/logomega.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "polarscope/errors.hpp"

namespace polarscope::polarization {

namespace {

constexpr double kRescaleAt = 1e280;
const double kLogRescale = std::log(1e280);

double log_choose(double n, double k) {
    return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

/// Coefficient of z^target in prod_j (1 + z + ... + z^{c_j}), computed
/// with prefix sums and explicit rescaling. Returns its natural log.
double two_row_dp(std::int64_t target, std::span<const std::int64_t> cols) {
    const std::size_t a = static_cast<std::size_t>(target);
    std::vector<double> f(a + 1, 0.0), prefix(a + 2, 0.0);
    f[0] = 1.0;
    double log_scale = 0.0;
    for (const std::int64_t c : cols) {
        prefix[0] = 0.0;
        for (std::size_t k = 0; k <= a; ++k) prefix[k + 1] = prefix[k] + f[k];
        double maxv = 0.0;
        for (std::size_t k = 0; k <= a; ++k) {
            const std::size_t lo = static_cast<std::int64_t>(k) - c > 0
                                       ? k - static_cast<std::size_t>(c)
                                       : 0;
            f[k] = prefix[k + 1] - prefix[lo];
            maxv = std::max(maxv, f[k]);
        }
        if (maxv > kRescaleAt) {
            for (auto& v : f) v /= kRescaleAt;
            log_scale += kLogRescale;
        }
    }
    if (f[a] <= 0.0) return -1e300; // unreachable for consistent margins
    return std::log(f[a]) + log_scale;
}

/// Bounded compositions of t into three parts (0 <= y_j <= c_j).
std::int64_t compositions3(std::int64_t t, std::int64_t c1, std::int64_t c2,
                           std::int64_t c3) {
    auto tri = [](std::int64_t x) -> std::int64_t {
        return x < 0 ? 0 : (x + 1) * (x + 2) / 2;
    };
    return tri(t) - tri(t - c1 - 1) - tri(t - c2 - 1) - tri(t - c3 - 1) +
           tri(t - c1 - c2 - 2) + tri(t - c1 - c3 - 2) + tri(t - c2 - c3 - 2) -
           tri(t - c1 - c2 - c3 - 3);
}

/// Exact 3x3 count: sum over first-row compositions, closed form for the
/// remaining 2x3 block. Margins are pre-sorted ascending so the double
/// loop runs over the smallest part.
double three_by_three(std::span<const std::int64_t> rows,
                      std::span<const std::int64_t> cols) {
    const std::int64_t a1 = rows[0], a2 = rows[1];
    long double total = 0.0L;
    for (std::int64_t x11 = 0; x11 <= std::min(a1, cols[0]); ++x11) {
        for (std::int64_t x12 = 0; x12 <= std::min(a1 - x11, cols[1]); ++x12) {
            const std::int64_t x13 = a1 - x11 - x12;
            if (x13 > cols[2]) continue;
            total += static_cast<long double>(
                compositions3(a2, cols[0] - x11, cols[1] - x12, cols[2] - x13));
        }
    }
    if (total <= 0.0L) return -1e300;
    return static_cast<double>(std::log(total));
}

/// Column DP for three-part rows and any number of columns. State
/// (u, v) = amount of rows[0] and rows[1] consumed so far.
double three_row_dp(std::span<const std::int64_t> rows,
                    std::span<const std::int64_t> cols) {
    const std::size_t r1 = static_cast<std::size_t>(rows[0]);
    const std::size_t r2 = static_cast<std::size_t>(rows[1]);
    const std::size_t w = r2 + 1;
    std::vector<double> g((r1 + 1) * w, 0.0), next((r1 + 1) * w, 0.0),
        prefix((r1 + 1) * (w + 1), 0.0);
    g[0] = 1.0;
    double log_scale = 0.0;
    for (const std::int64_t c : cols) {
        // Row-direction prefix sums over v for each u.
        for (std::size_t u = 0; u <= r1; ++u) {
            prefix[u * (w + 1)] = 0.0;
            for (std::size_t v = 0; v <= r2; ++v)
                prefix[u * (w + 1) + v + 1] = prefix[u * (w + 1) + v] + g[u * w + v];
        }
        double maxv = 0.0;
        for (std::size_t u = 0; u <= r1; ++u) {
            const std::size_t x1_max = std::min<std::size_t>(u, static_cast<std::size_t>(c));
            for (std::size_t v = 0; v <= r2; ++v) {
                double acc = 0.0;
                for (std::size_t x1 = 0; x1 <= x1_max; ++x1) {
                    const std::size_t rem = static_cast<std::size_t>(c) - x1;
                    const std::size_t x2_max = std::min(v, rem);
                    const double* p = &prefix[(u - x1) * (w + 1)];
                    acc += p[v + 1] - p[v - x2_max];
                }
                next[u * w + v] = acc;
                maxv = std::max(maxv, acc);
            }
        }
        std::swap(g, next);
        if (maxv > kRescaleAt) {
            for (auto& x : g) x /= kRescaleAt;
            log_scale += kLogRescale;
        }
    }
    const double count = g[r1 * w + r2];
    if (count <= 0.0) return -1e300;
    return std::log(count) + log_scale;
}

struct GeneralCounter {
    std::span<const std::int64_t> cols;
    std::int64_t ops = 0;
    std::int64_t ops_cap = 0;
    bool aborted = false;
    std::map<std::pair<std::size_t, std::vector<std::int64_t>>, double> memo;

    double count(std::size_t col, std::vector<std::int64_t> remaining) {
        if (aborted) return 0.0;
        std::sort(remaining.begin(), remaining.end());
        if (col == cols.size()) {
            for (const auto r : remaining)
                if (r != 0) return 0.0;
            return 1.0;
        }
        const auto key = std::make_pair(col, remaining);
        if (const auto it = memo.find(key); it != memo.end()) return it->second;
        double total = 0.0;
        enumerate(col, remaining, 0, cols[col], total);
        memo.emplace(key, total);
        return total;
    }

    void enumerate(std::size_t col, std::vector<std::int64_t>& remaining, std::size_t row,
                   std::int64_t left, double& total) {
        if (aborted) return;
        if (++ops > ops_cap) { aborted = true; return; }
        if (row + 1 == remaining.size()) {
            if (left <= remaining[row]) {
                remaining[row] -= left;
                total += count(col + 1, remaining);
                remaining[row] += left;
            }
            return;
        }
        const std::int64_t hi = std::min(left, remaining[row]);
        for (std::int64_t x = 0; x <= hi; ++x) {
            remaining[row] -= x;
            enumerate(col, remaining, row + 1, left - x, total);
            remaining[row] += x;
        }
    }
};

double good_approximation(std::span<const std::int64_t> rows,
                          std::span<const std::int64_t> cols, std::int64_t n) {
    const double r = static_cast<double>(rows.size());
    const double s = static_cast<double>(cols.size());
    double v = -log_choose(static_cast<double>(n) + r * s - 1, r * s - 1);
    for (const auto a : rows) v += log_choose(static_cast<double>(a) + s - 1, s - 1);
    for (const auto b : cols) v += log_choose(static_cast<double>(b) + r - 1, r - 1);
    return v;
}

} // namespace

LogOmegaResult log_omega(std::span<const std::int64_t> row_sums,
                         std::span<const std::int64_t> col_sums,
                         const LogOmegaOptions& opts) {
    std::int64_t rsum = 0, csum = 0;
    for (const auto v : row_sums) {
        if (v < 0) throw DataError("log_omega: negative row margin");
        rsum += v;
    }
    for (const auto v : col_sums) {
        if (v < 0) throw DataError("log_omega: negative column margin");
        csum += v;
    }
    if (rsum != csum)
        throw DataError("log_omega: margin sums differ (" + std::to_string(rsum) + " vs " +
                        std::to_string(csum) + ")");
    const std::int64_t n = rsum;

    // Zero margins fix their whole line to zero and drop out.
    std::vector<std::int64_t> rows, cols;
    for (const auto v : row_sums)
        if (v > 0) rows.push_back(v);
    for (const auto v : col_sums)
        if (v > 0) cols.push_back(v);
    if (rows.size() > cols.size()) std::swap(rows, cols);
    std::sort(rows.begin(), rows.end());
    std::sort(cols.begin(), cols.end());

    if (rows.size() <= 1 || cols.size() <= 1) return {0.0, true};

    if (rows.size() == 2 && n <= opts.two_row_exact_max)
        return {two_row_dp(rows[0], cols), true};

    if (rows.size() == 3 && n <= opts.three_row_exact_max) {
        if (cols.size() == 3) return {three_by_three(rows, cols), true};
        return {three_row_dp(rows, cols), true};
    }

    if (n <= opts.general_exact_max) {
        double state_bound = 1.0;
        for (const auto r : rows) state_bound *= static_cast<double>(r + 1);
        if (state_bound <= 2e6) {
            GeneralCounter gc;
            gc.cols = cols;
            gc.ops_cap = opts.general_ops_cap;
            std::vector<std::int64_t> remaining(rows.begin(), rows.end());
            const double count = gc.count(0, std::move(remaining));
            if (!gc.aborted && count > 0.0) return {std::log(count), true};
        }
    }

    return {good_approximation(rows, cols, n), false};
}

} // namespace polarscope::polarization
