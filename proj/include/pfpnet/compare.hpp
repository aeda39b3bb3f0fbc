#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pfpnet/io_formats.hpp"
#include "pfpnet/metrics.hpp"

namespace pfpnet {

// Allowed deviation for one report field: absolute, or a fraction of the
// reference value when written with a trailing '%'.
struct Tolerance {
  double amount = 0;
  bool relative = false;

  double bound(double reference) const { return relative ? amount * std::fabs(reference) : amount; }
};

using Tolerances = std::map<std::string, Tolerance>;

// Lines of "key tolerance", e.g. "gamma 0.05" or "l 5%". '#' starts a comment line.
inline Tolerances parse_tolerances(std::string_view text) {
  Tolerances out;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    auto words = detail::split_words(line);
    if (words.empty() || words.front().front() == '#') return;
    if (words.size() != 2) throw ParseError(line_no, "expected 'key tolerance'");
    const std::string key(words[0]);
    bool known = false;
    for (const auto& f : report_fields) known = known || key == f.key;
    if (!known) throw ParseError(line_no, "unknown report key '" + key + "'");
    auto value = words[1];
    Tolerance t;
    if (value.back() == '%') {
      t.relative = true;
      value.remove_suffix(1);
    }
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), t.amount);
    if (ec != std::errc{} || ptr != value.data() + value.size() || t.amount < 0)
      throw ParseError(line_no, "bad tolerance for '" + key + "'");
    if (t.relative) t.amount /= 100.0;
    if (!out.emplace(key, t).second) throw ParseError(line_no, "duplicate key '" + key + "'");
  });
  return out;
}

// True when `value` lies within tolerance of `reference`. Two absent fields
// agree; an absent field never matches a present one.
inline bool within(const Metric& reference, const Metric& value, const Tolerance& tol) {
  if (!reference.defined() || !value.defined()) return reference.defined() == value.defined();
  return std::fabs(*value.value - *reference.value) <= tol.bound(*reference.value);
}

struct Comparison {
  std::string table;
  bool pass = true;
};

// Side-by-side table, one column per report. With tolerances, every report is
// checked against the first one and rows carry an ok/FAIL verdict.
inline Comparison compare_reports(const std::vector<std::string>& names,
                                  const std::vector<MetricsReport>& reports,
                                  const std::optional<Tolerances>& tolerances = std::nullopt) {
  Comparison cmp;
  auto cell = [](const Metric& m) {
    if (!m.defined()) return "absent(" + m.reason + ")";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", *m.value);
    return std::string(buf);
  };

  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"metric"};
  header.insert(header.end(), names.begin(), names.end());
  if (tolerances) header.push_back("check");
  rows.push_back(header);
  for (const auto& f : report_fields) {
    std::vector<std::string> row{f.key};
    for (const auto& r : reports) row.push_back(cell(r.*f.member));
    if (tolerances) {
      auto it = tolerances->find(f.key);
      if (it == tolerances->end()) {
        row.push_back("-");
      } else {
        bool ok = true;
        for (std::size_t i = 1; i < reports.size(); ++i)
          ok = ok && within(reports[0].*f.member, reports[i].*f.member, it->second);
        row.push_back(ok ? "ok" : "FAIL");
        cmp.pass = cmp.pass && ok;
      }
    }
    rows.push_back(row);
  }

  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += row[c];
      if (c + 1 < row.size()) line.append(width[c] - row[c].size(), ' ');
    }
    cmp.table += line + '\n';
  }
  return cmp;
}

}  // namespace pfpnet
