#include "oadsmine/year_month.hpp"

#include <cstdio>

namespace oadsmine {

std::string YearMonth::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
  return buf;
}

std::optional<YearMonth> YearMonth::parse(std::string_view text) {
  if (text.size() != 7 || text[4] != '-') return std::nullopt;
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  int year = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!digit(text[i])) return std::nullopt;
    year = year * 10 + (text[i] - '0');
  }
  if (!digit(text[5]) || !digit(text[6])) return std::nullopt;
  int month = (text[5] - '0') * 10 + (text[6] - '0');
  if (month < 1 || month > 12) return std::nullopt;
  return YearMonth{year, month};
}

}  // namespace oadsmine
