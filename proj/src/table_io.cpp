// SPDX-License-Identifier: Apache-2.0
#include "nvcool/table_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nvcool/errors.hpp"

namespace nvcool {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == ',' || line[i] == '\r')) ++i;
    const std::size_t b = i;
    while (i < line.size() && !(line[i] == ' ' || line[i] == '\t' || line[i] == ',' || line[i] == '\r')) ++i;
    if (i > b) out.push_back(line.substr(b, i - b));
  }
  return out;
}

} // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return std::to_string(v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view text, std::string_view what) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw ParseError("expected " + std::string(what) + ", got '" + std::string(text) + "'");
  return v;
}

std::vector<std::vector<double>> parse_numeric_table(const std::string& text, std::size_t columns) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const auto fields = split_fields(body);
    if (fields.size() != columns)
      throw ParseError("expected " + std::to_string(columns) + " columns, found " +
                           std::to_string(fields.size()),
                       lineno);
    std::vector<double> row;
    row.reserve(columns);
    for (auto f : fields) {
      try {
        row.push_back(parse_double(f));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), lineno);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

std::string to_csv(const std::vector<CsvColumn>& columns) {
  std::string out;
  if (columns.empty()) return out;
  const std::size_t n = columns.front().values.size();
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].values.size() != n) throw DomainError("CSV columns differ in length");
    if (c) out += ',';
    out += columns[c].header;
  }
  out += '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out += ',';
      out += format_double(columns[c].values[i]);
    }
    out += '\n';
  }
  return out;
}

Trace parse_trace_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::string label;
  std::vector<double> times, values;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = split_fields(body);
    if (label.empty()) {
      if (fields.size() != 2) throw ParseError("trace header needs two columns", lineno);
      label = std::string(fields[1]);
      continue;
    }
    if (fields.size() != 2) throw ParseError("expected two columns", lineno);
    try {
      times.push_back(parse_double(fields[0], "time"));
      values.push_back(parse_double(fields[1], "value"));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  if (label.empty()) throw ParseError("trace CSV has no header");
  if (times.size() < 2) throw ParseError("trace CSV needs at least two samples");
  const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  if (!(dt > 0.0)) throw ParseError("trace times must increase");
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double expect = times.front() + static_cast<double>(i) * dt;
    if (std::abs(times[i] - expect) > 1e-6 * dt)
      throw ParseError("trace is not uniformly sampled near t = " + format_double(times[i]));
  }
  return Trace(times.front(), dt, std::move(values), label);
}

std::string trace_to_csv(const Trace& trace, const std::string& value_header) {
  std::vector<double> t(trace.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = trace.time_at(i);
  return to_csv({{"time_s", std::move(t)}, {value_header, trace.values}});
}

} // namespace nvcool
