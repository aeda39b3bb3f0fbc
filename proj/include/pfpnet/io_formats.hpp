#pragma once

// Text formats: peering lists (.asl), key-value reports (.report) and
// distribution tables (.csv). Input is tolerant; output is canonical, LF-only.

#include <charconv>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "pfpnet/graph.hpp"
#include "pfpnet/metrics.hpp"

namespace pfpnet {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class ReportError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

inline std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_blank(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_blank(line[j])) ++j;
    if (j > i) words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    ++line_no;
    fn(line_no, text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

inline Graph parse_peering_list(std::string_view text) {
  std::vector<Edge> edges;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    auto words = detail::split_words(line);
    if (words.empty() || words.front().front() == '#') return;
    if (words.size() != 2)
      throw ParseError(line_no, "expected two AS numbers, found " + std::to_string(words.size()) + " fields");
    NodeId ends[2];
    for (int k = 0; k < 2; ++k) {
      const auto w = words[k];
      if (w.front() == '-') throw ParseError(line_no, "negative AS number '" + std::string(w) + "'");
      auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), ends[k]);
      if (ec == std::errc::result_out_of_range)
        throw ParseError(line_no, "AS number out of range '" + std::string(w) + "'");
      if (ec != std::errc{} || ptr != w.data() + w.size())
        throw ParseError(line_no, "not a decimal AS number '" + std::string(w) + "'");
    }
    edges.emplace_back(ends[0], ends[1]);
  });
  return Graph::from_edge_list(edges);
}

inline std::string write_peering_list(const Graph& g) {
  std::string out;
  for (auto [u, v] : g.edges()) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

// One "key value" line per field in report_fields order, then the
// disconnected flag. Absent values are written as "absent:<reason>".
inline std::string write_report(const MetricsReport& r) {
  std::string out;
  for (const auto& f : report_fields) {
    const Metric& m = r.*f.member;
    out += f.key;
    out += ' ';
    out += m.defined() ? detail::format_double(*m.value) : "absent:" + m.reason;
    out += '\n';
  }
  out += "disconnected ";
  out += r.disconnected ? "true" : "false";
  out += '\n';
  return out;
}

inline MetricsReport read_report(std::string_view text) {
  MetricsReport r;
  std::set<std::string> seen;
  std::vector<std::string> unknown;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    auto words = detail::split_words(line);
    if (words.empty() || words.front().front() == '#') return;
    if (words.size() != 2) throw ParseError(line_no, "expected 'key value'");
    const std::string key(words[0]);
    const std::string_view value = words[1];
    if (!seen.insert(key).second) throw ParseError(line_no, "duplicate key '" + key + "'");
    if (key == "disconnected") {
      if (value != "true" && value != "false") throw ParseError(line_no, "disconnected must be true or false");
      r.disconnected = value == "true";
      return;
    }
    const ReportField* field = nullptr;
    for (const auto& f : report_fields)
      if (key == f.key) field = &f;
    if (!field) {
      unknown.push_back(key);
      return;
    }
    Metric& m = r.*field->member;
    constexpr std::string_view absent = "absent:";
    if (value.substr(0, absent.size()) == absent) {
      auto reason = value.substr(absent.size());
      if (reason.empty()) throw ParseError(line_no, "absent field '" + key + "' needs a reason code");
      m = Metric::absent(std::string(reason));
      return;
    }
    double v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
      throw ParseError(line_no, "bad number for '" + key + "'");
    m = Metric::of(v);
  });
  std::string problems;
  if (!unknown.empty()) {
    problems += "unknown keys:";
    for (const auto& k : unknown) problems += " " + k;
  }
  std::string missing;
  for (const auto& f : report_fields)
    if (!seen.count(f.key)) missing += std::string(" ") + f.key;
  if (!missing.empty()) problems += (problems.empty() ? "" : "; ") + std::string("missing keys:") + missing;
  if (!problems.empty()) throw ReportError(problems);
  return r;
}

inline std::string write_distribution_csv(const DistributionTable& table) {
  std::string out = "x,y\n";
  for (const auto& p : table.points) {
    out += detail::format_double(p.x);
    out += ',';
    out += detail::format_double(p.y);
    out += '\n';
  }
  return out;
}

}  // namespace pfpnet
