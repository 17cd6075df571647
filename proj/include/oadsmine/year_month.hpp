#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace oadsmine {

// Calendar month; the granularity of every time series in the reports.
struct YearMonth {
  int year = 0;
  int month = 0;  // 1..12

  auto operator<=>(const YearMonth&) const = default;

  // "YYYY-MM"
  std::string to_string() const;

  // Strict "YYYY-MM" with a four-digit year and a two-digit month in 01..12.
  static std::optional<YearMonth> parse(std::string_view text);
};

// Inclusive range of months a corpus is allowed to cover.
struct MonthWindow {
  YearMonth first{2007, 4};
  YearMonth last{2021, 12};

  bool contains(const YearMonth& m) const { return first <= m && m <= last; }
};

}  // namespace oadsmine
