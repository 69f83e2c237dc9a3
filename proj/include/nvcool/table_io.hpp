// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "nvcool/trace.hpp"

namespace nvcool {

/// Shortest decimal text that parses back to exactly v.
std::string format_double(double v);

/// Strict full-string parse; throws ParseError naming `what` on failure.
double parse_double(std::string_view text, std::string_view what = "number");

/// Whitespace/comma separated numeric rows with exactly `columns` fields.
/// Blank lines and '#' comments are skipped.
std::vector<std::vector<double>> parse_numeric_table(const std::string& text, std::size_t columns);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

struct CsvColumn {
  std::string header;
  std::vector<double> values;
};

/// Header row then one row per sample; all columns must share a length.
std::string to_csv(const std::vector<CsvColumn>& columns);

/// Two-column "time_s,<label>" CSV. The label becomes Trace::unit. Times
/// must be uniformly spaced to 1e-6 relative.
Trace parse_trace_csv(const std::string& text);
std::string trace_to_csv(const Trace& trace, const std::string& value_header);

} // namespace nvcool
