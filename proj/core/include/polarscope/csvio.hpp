#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace polarscope::csv {

/// Shortest-round-trip-then-truncated formatting with 9 significant
/// digits. All floating-point values written to output files go through
/// this one function so reruns serialize identically.
std::string format_double(double v);

std::string format_int(std::int64_t v);

/// Quote iff the field contains a comma, quote, or newline.
std::string escape_field(std::string_view field);

class Writer {
public:
    explicit Writer(std::ostream& out) : out_(out) {}

    void comment(std::string_view line);
    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
};

/// Split one CSV record (quoted fields supported, no embedded newlines).
std::vector<std::string> split_line(std::string_view line);

struct Table {
    std::vector<std::string> comments; // leading '#' lines, '#' stripped
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::optional<std::size_t> column(std::string_view name) const;
};

/// Read a whole CSV file (header required). Throws DataError on ragged rows.
Table read_file(const std::string& path);

} // namespace polarscope::csv
