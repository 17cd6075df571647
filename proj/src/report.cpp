#include "oadsmine/report.hpp"

#include <cstdio>
#include <optional>

#include "oadsmine/records.hpp"

namespace oadsmine {
namespace {

std::string fixed(std::optional<double> v, int decimals) {
  if (!v) return {};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, *v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

constexpr const char* kCountColumns =
    "publications,uri_total,oads,non_oads,ghp,non_ghp_oads,avg_total,avg_oads,avg_non_oads,pct_ghp,pct_non_ghp_oads,"
    "pct_non_oads\n";

std::string count_columns(const CategoryCounts& c) {
  auto pct = category_percentages(c);
  std::string row = std::to_string(c.publications) + "," + std::to_string(c.uri_total) + "," +
                    std::to_string(c.oads) + "," + std::to_string(c.non_oads) + "," + std::to_string(c.ghp) + "," +
                    std::to_string(c.non_ghp_oads) + ",";
  row += fixed(c.avg_total(), 4) + "," + fixed(c.avg_oads(), 4) + "," + fixed(c.avg_non_oads(), 4) + ",";
  if (pct)
    row += fixed(pct->ghp, 2) + "," + fixed(pct->non_ghp_oads, 2) + "," + fixed(pct->non_oads, 2);
  else
    row += ",,";
  return row + "\n";
}

}  // namespace

std::string monthly_csv(const CorpusStats& stats) {
  std::string out = std::string("month,") + kCountColumns;
  for (const auto& m : stats.monthly()) out += m.month.to_string() + "," + count_columns(m);
  return out;
}

std::string yearly_csv(const CorpusStats& stats) {
  std::string out = std::string("year,") + kCountColumns;
  for (const auto& y : stats.yearly()) out += std::to_string(y.year) + "," + count_columns(y);
  return out;
}

std::string hostnames_csv(const HostnameStats& stats) {
  std::string out = "hostname,count,share\n";
  for (const auto& [host, n] : top_hostnames(stats, stats.counts.size()))
    out += csv_field(host) + "," + std::to_string(n) + "," + fixed(stats.share(host), 4) + "\n";
  return out;
}

std::string histogram_csv(const Histogram& histogram) {
  std::string out = "bin_start,bin_end,hostname_count\n";
  for (const auto& b : histogram.bins)
    out += std::to_string(b.start) + "," + std::to_string(b.end) + "," + std::to_string(b.hostnames) + "\n";
  return out;
}

std::string top_hostnames_csv(const HostnameStats& stats, std::size_t n) {
  std::string out = "rank,hostname,count,share\n";
  std::size_t rank = 0;
  for (const auto& [host, count] : top_hostnames(stats, n))
    out += std::to_string(++rank) + "," + csv_field(host) + "," + std::to_string(count) + "," +
           fixed(stats.share(host), 4) + "\n";
  return out;
}

void write_reports(const std::filesystem::path& dir, const CorpusStats& stats, std::size_t top_n) {
  std::filesystem::create_directories(dir);
  write_file_atomic(dir / "monthly.csv", monthly_csv(stats));
  write_file_atomic(dir / "yearly.csv", yearly_csv(stats));
  write_file_atomic(dir / "hostnames.csv", hostnames_csv(stats.hostnames()));
  write_file_atomic(dir / "histogram.csv", histogram_csv(frequency_histogram(stats.hostnames(), stats.config().bin_width)));
  write_file_atomic(dir / "top_hostnames.csv", top_hostnames_csv(stats.hostnames(), top_n));
}

}  // namespace oadsmine
