#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace polarscope::polarization {

// Natural log of the number of non-negative integer matrices with the
// given row and column sums (the contingency-table count the reduced
// mutual information needs).
//
// Exact paths:
//   - one-part margins: ln 1 = 0
//   - two-part margins: column-convolution DP at any n up to
//     two_row_exact_max
//   - three-part margins up to three_row_exact_max: closed double sum
//     when the other side has <= 3 parts, otherwise a 2D-state column DP
//   - anything else up to general_exact_max: memoized recursion over
//     columns with sorted remaining-row keys
//
// Beyond the thresholds the value falls back to Good's independence
// approximation
//   ln C(a_r+S-1, S-1) summed + ln C(b_s+R-1, R-1) summed
//   - ln C(n+RS-1, RS-1)
// and the result is flagged approximate so run metadata can record it.

struct LogOmegaOptions {
    std::int64_t two_row_exact_max = 100000;
    std::int64_t three_row_exact_max = 2000;
    std::int64_t general_exact_max = 60;
    // Work cap for the generic exact recursion before falling back.
    std::int64_t general_ops_cap = 50000000;
};

struct LogOmegaResult {
    double value = 0.0;
    bool exact = true;
};

/// Throws DataError when margins mismatch or are negative.
LogOmegaResult log_omega(std::span<const std::int64_t> row_sums,
                         std::span<const std::int64_t> col_sums,
                         const LogOmegaOptions& opts = {});

} // namespace polarscope::polarization
