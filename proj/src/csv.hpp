// Minimal long-format CSV reader shared by the ingestion paths.
// Internal header: not part of the public include tree.
#ifndef BUCKYQA_SRC_CSV_HPP
#define BUCKYQA_SRC_CSV_HPP

#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "buckyqa/spectra_io.hpp"

namespace buckyqa::csv {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
}

/// Parses a full field as a double; std::nullopt on any trailing garbage.
/// "nan"/"inf" parse successfully so callers can report them as non-finite.
inline std::optional<double> parse_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::optional<int> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

/// Header-addressed row reader. Blank lines are skipped; line numbers are 1-based
/// and count the header.
class Reader {
 public:
  Reader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {
    std::string header;
    if (!std::getline(in_, header)) {
      throw IngestError(IngestErrorKind::MalformedRow, source_ + ": empty file (missing header)", 1);
    }
    line_no_ = 1;
    if (header.size() >= 3 && header.compare(0, 3, "\xEF\xBB\xBF") == 0) header.erase(0, 3);
    const auto names = split(header);
    for (std::size_t i = 0; i < names.size(); ++i) columns_.emplace(std::string(names[i]), i);
    width_ = names.size();
  }

  [[nodiscard]] std::optional<std::size_t> column(const std::string& name) const {
    const auto it = columns_.find(name);
    if (it == columns_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t require(const std::string& name) const {
    if (auto c = column(name)) return *c;
    throw IngestError(IngestErrorKind::MissingColumn,
                      source_ + ": missing required column '" + name + "'", 1);
  }

  bool next() {
    while (std::getline(in_, line_)) {
      ++line_no_;
      if (trim(line_).empty()) continue;
      fields_ = split(line_);
      if (fields_.size() != width_) {
        fail(IngestErrorKind::MalformedRow, "expected " + std::to_string(width_) + " fields, found " +
                                                std::to_string(fields_.size()));
      }
      return true;
    }
    return false;
  }

  [[nodiscard]] std::string_view field(std::size_t col) const { return fields_[col]; }
  [[nodiscard]] std::size_t line() const { return line_no_; }
  [[nodiscard]] const std::string& source() const { return source_; }

  [[noreturn]] void fail(IngestErrorKind kind, const std::string& what) const {
    throw IngestError(kind, source_ + ":" + std::to_string(line_no_) + ": " + what, line_no_);
  }

  int index_field(std::size_t col, const char* name, IngestErrorKind missing_kind) const {
    const auto f = field(col);
    if (f.empty()) fail(missing_kind, std::string("missing ") + name + " index");
    const auto v = parse_int(f);
    if (!v) fail(IngestErrorKind::MalformedRow, std::string("bad ") + name + " index '" + std::string(f) + "'");
    return *v;
  }

  double real_field(std::size_t col, const char* name) const {
    const auto f = field(col);
    const auto v = parse_double(f);
    if (!v) fail(IngestErrorKind::MalformedRow, std::string("bad ") + name + " value '" + std::string(f) + "'");
    if (!std::isfinite(*v)) fail(IngestErrorKind::NonFiniteValue, std::string("non-finite ") + name);
    return *v;
  }

  /// Empty cells read as 0 (used for optional effect columns).
  double real_field_or_zero(std::size_t col, const char* name) const {
    if (field(col).empty()) return 0.0;
    return real_field(col, name);
  }

 private:
  std::istream& in_;
  std::string source_;
  std::string line_;
  std::vector<std::string_view> fields_;
  std::unordered_map<std::string, std::size_t> columns_;
  std::size_t width_ = 0;
  std::size_t line_no_ = 0;
};

/// Shortest representation that parses back to the identical double.
std::string format_double(double v);

}  // namespace buckyqa::csv

#endif  // BUCKYQA_SRC_CSV_HPP
