#pragma once

#include <cstddef>
#include <filesystem>
#include <string>

#include "oadsmine/analytics.hpp"

namespace oadsmine {

// Fixed-precision rendering shared by every report: averages and shares at
// four decimals, percentages at two. Undefined values are empty cells.
std::string monthly_csv(const CorpusStats& stats);
std::string yearly_csv(const CorpusStats& stats);
std::string hostnames_csv(const HostnameStats& stats);
std::string histogram_csv(const Histogram& histogram);
std::string top_hostnames_csv(const HostnameStats& stats, std::size_t n);

inline constexpr std::size_t kDefaultTopN = 15;

// monthly.csv, yearly.csv, hostnames.csv, histogram.csv, top_hostnames.csv.
void write_reports(const std::filesystem::path& dir, const CorpusStats& stats, std::size_t top_n = kDefaultTopN);

}  // namespace oadsmine
