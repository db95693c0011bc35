#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace polarscope::text {

// Unicode simple case folding over UTF-8, covering the ranges that occur
// in the supported corpora: ASCII, Latin-1 Supplement, Latin Extended-A,
// micro sign, and the basic Greek and Cyrillic alphabets. Codepoints
// outside these ranges (and invalid byte sequences) pass through
// unchanged, which keeps folding idempotent.
std::uint32_t fold_codepoint(std::uint32_t cp);
std::string case_fold(std::string_view utf8);

/// Case-insensitive substring test: `needle` must already be case-folded.
bool contains_folded(std::string_view folded_haystack, std::string_view folded_needle);

} // namespace polarscope::text
