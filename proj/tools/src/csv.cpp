#include "saalab/cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

namespace saalab::cli {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_series_csv(std::ostream& out, std::span<const ErrorSeries> series,
                      const Schedule& schedule) {
  std::uint64_t last = 0;
  for (const auto& s : series) {
    if (!s.checkpoints.empty()) last = std::max(last, s.checkpoints.back());
  }
  const TimeGrid grid = TimeGrid::from_schedule(schedule, last);
  out << kCsvHeader << '\n';
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.checkpoints.size(); ++i) {
      const auto n = s.checkpoints[i];
      out << n << ',' << format_real(grid[n]) << ',' << to_string(s.kind) << ','
          << format_real(s.estimates[i]) << ',' << format_real(s.abs_estimate(i)) << ','
          << format_real(s.half_widths[i]) << ',' << s.samples << ',' << s.seed << '\n';
    }
  }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

template <typename T>
T field(const std::string& text, const char* column, int line_no) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw CsvSchemaError("line " + std::to_string(line_no) + ": bad " + column + " '" + text +
                         "'");
  }
  return value;
}

}  // namespace

ErrorSeries read_series_csv(std::istream& in, std::optional<ErrorKind> kind) {
  std::string line;
  if (!std::getline(in, line)) throw CsvSchemaError("empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) {
    throw CsvSchemaError("header must be '" + std::string(kCsvHeader) + "'");
  }
  ErrorSeries s;
  bool have_rows = false;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 8) {
      throw CsvSchemaError("line " + std::to_string(line_no) + ": expected 8 fields");
    }
    const auto row_kind = parse_error_kind(f[2]);
    if (!row_kind) throw CsvSchemaError("line " + std::to_string(line_no) + ": bad kind");
    if (!kind) kind = row_kind;
    const auto n = field<std::uint64_t>(f[0], "n", line_no);
    field<double>(f[1], "t_n", line_no);
    const auto estimate = field<double>(f[3], "estimate", line_no);
    const auto abs_estimate = field<double>(f[4], "abs_estimate", line_no);
    const auto half_width = field<double>(f[5], "half_width", line_no);
    const auto samples = field<std::uint64_t>(f[6], "samples", line_no);
    const auto seed = field<std::uint64_t>(f[7], "seed", line_no);
    if (!std::isfinite(estimate) || !(half_width >= 0.0) || abs_estimate != std::abs(estimate)) {
      throw CsvSchemaError("line " + std::to_string(line_no) + ": inconsistent estimate columns");
    }
    if (*row_kind != *kind) continue;
    if (!s.checkpoints.empty() && n <= s.checkpoints.back()) {
      throw CsvSchemaError("line " + std::to_string(line_no) + ": n must be increasing");
    }
    s.kind = *row_kind;
    s.checkpoints.push_back(n);
    s.estimates.push_back(estimate);
    s.half_widths.push_back(half_width);
    s.samples = samples;
    s.seed = seed;
    have_rows = true;
  }
  if (!have_rows) throw CsvSchemaError("no rows of the requested kind");
  return s;
}

}  // namespace saalab::cli
