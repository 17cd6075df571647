#include "oadsmine/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "oadsmine/error.hpp"
#include "oadsmine/uri.hpp"

namespace oadsmine {
namespace {

std::optional<double> per(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

void CategoryCounts::add(Category c, std::uint64_t n) {
  uri_total += n;
  switch (c) {
    case Category::GHP:
      ghp += n;
      oads += n;
      break;
    case Category::NonGhpOADS:
      non_ghp_oads += n;
      oads += n;
      break;
    case Category::NonOADS:
      non_oads += n;
      break;
  }
}

CategoryCounts& CategoryCounts::operator+=(const CategoryCounts& o) {
  publications += o.publications;
  uri_total += o.uri_total;
  oads += o.oads;
  non_oads += o.non_oads;
  ghp += o.ghp;
  non_ghp_oads += o.non_ghp_oads;
  return *this;
}

std::optional<double> CategoryCounts::avg_total() const { return per(uri_total, publications); }
std::optional<double> CategoryCounts::avg_oads() const { return per(oads, publications); }
std::optional<double> CategoryCounts::avg_non_oads() const { return per(non_oads, publications); }

std::optional<CategoryPercentages> category_percentages(std::uint64_t ghp, std::uint64_t non_ghp_oads,
                                                        std::uint64_t non_oads) {
  const std::uint64_t total = ghp + non_ghp_oads + non_oads;
  if (total == 0) return std::nullopt;
  const double t = static_cast<double>(total);
  return CategoryPercentages{100.0 * static_cast<double>(ghp) / t, 100.0 * static_cast<double>(non_ghp_oads) / t,
                             100.0 * static_cast<double>(non_oads) / t};
}

std::optional<CategoryPercentages> category_percentages(const CategoryCounts& c) {
  return category_percentages(c.ghp, c.non_ghp_oads, c.non_oads);
}

double round_percent(double pct) { return std::round(pct * 100.0) / 100.0; }

std::optional<double> ghp_share_of_oads(const CategoryCounts& c) {
  auto r = per(c.ghp, c.oads);
  if (!r) return std::nullopt;
  return 100.0 * *r;
}

void HostnameStats::add(const std::string& host, std::uint64_t n) {
  counts[ascii_lower(host)] += n;
  total += n;
}

HostnameStats& HostnameStats::operator+=(const HostnameStats& o) {
  for (const auto& [host, n] : o.counts) counts[host] += n;
  total += o.total;
  return *this;
}

std::optional<double> HostnameStats::share(const std::string& host) const {
  if (total == 0) return std::nullopt;
  auto it = counts.find(ascii_lower(host));
  return static_cast<double>(it == counts.end() ? 0 : it->second) / static_cast<double>(total);
}

HostnameStats hostname_frequency(const std::vector<std::string>& uris) {
  HostnameStats s;
  for (const auto& u : uris) s.add(host_of(u));
  return s;
}

Histogram frequency_histogram(const HostnameStats& stats, std::uint64_t bin_width) {
  if (bin_width == 0) throw DataError("histogram bin width must be at least 1");
  Histogram h;
  h.bin_width = bin_width;
  for (const auto& [host, n] : stats.counts) {
    std::size_t bin = static_cast<std::size_t>(n / bin_width);
    while (h.bins.size() <= bin) {
      std::uint64_t start = h.bins.size() * bin_width;
      h.bins.push_back({start, start + bin_width, 0});
    }
    ++h.bins[bin].hostnames;
  }
  return h;
}

std::vector<std::pair<std::string, std::uint64_t>> top_hostnames(const HostnameStats& stats, std::size_t n) {
  std::vector<std::pair<std::string, std::uint64_t>> rows(stats.counts.begin(), stats.counts.end());
  auto by_rank = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  if (rows.size() > n) {
    std::partial_sort(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n), rows.end(), by_rank);
    rows.resize(n);
  } else {
    std::sort(rows.begin(), rows.end(), by_rank);
  }
  return rows;
}

std::optional<Dispersion> dispersion_metrics(const HostnameStats& stats) {
  if (stats.total == 0) return std::nullopt;
  std::uint64_t singleton = 0, gt5 = 0;
  Dispersion d;
  for (const auto& [host, n] : stats.counts) {
    if (n == 1) singleton += n;
    if (n > 5) gt5 += n;
    if (n > 1000) ++d.hostnames_over_1000;
  }
  d.singleton_uri_share = *per(singleton, stats.total);
  d.gt5_uri_share = *per(gt5, stats.total);
  return d;
}

void CorpusStats::add_document(const YearMonth& month) { ++months_[month].publications; }

void CorpusStats::add_mention(const YearMonth& month, Category category, const std::string& uri) {
  months_[month].add(category);
  if (category == Category::NonGhpOADS) hostnames_.add(host_of(uri));
}

std::vector<MonthlyStats> CorpusStats::monthly() const {
  std::vector<MonthlyStats> out;
  out.reserve(months_.size());
  for (const auto& [month, counts] : months_) {
    MonthlyStats m;
    static_cast<CategoryCounts&>(m) = counts;
    m.month = month;
    out.push_back(m);
  }
  return out;
}

std::vector<YearlyStats> CorpusStats::yearly() const {
  std::vector<YearlyStats> out;
  for (const auto& [month, counts] : months_) {
    if (out.empty() || out.back().year != month.year) {
      out.emplace_back();
      out.back().year = month.year;
    }
    out.back() += counts;
  }
  return out;
}

CategoryCounts CorpusStats::totals() const {
  CategoryCounts t;
  for (const auto& [month, counts] : months_) t += counts;
  return t;
}

CorpusStats& CorpusStats::operator+=(const CorpusStats& o) {
  if (!(config_ == o.config_)) throw DataError("cannot merge statistics built with different configurations");
  for (const auto& [m, c] : o.months_) months_[m] += c;
  hostnames_ += o.hostnames_;
  return *this;
}

CorpusStats merge(const CorpusStats& a, const CorpusStats& b) {
  CorpusStats out = a;
  out += b;
  return out;
}

CorpusStats build_stats(const std::vector<DocumentRecord>& documents, const std::vector<CategorizedMention>& mentions,
                        const MonthWindow& window, StatsConfig config) {
  CorpusStats stats(config);
  std::set<DocumentId> known;
  for (const auto& d : documents) {
    if (!window.contains(d.month))
      throw DataError("document " + d.id.to_string() + " month " + d.month.to_string() + " is outside the corpus window");
    if (!known.insert(d.id).second) throw DataError("document " + d.id.to_string() + " listed twice");
    stats.add_document(d.month);
  }
  for (const auto& m : mentions) {
    if (!window.contains(m.month))
      throw DataError("mention in " + m.doc_id.to_string() + " has month " + m.month.to_string() +
                      " outside the corpus window");
    if (!known.contains(m.doc_id)) throw DataError("mention refers to unknown document " + m.doc_id.to_string());
    stats.add_mention(m.month, m.category, m.uri);
  }
  return stats;
}

std::vector<MonthlyStats> monthly_stats(const std::vector<DocumentRecord>& documents,
                                        const std::vector<CategorizedMention>& mentions, const MonthWindow& window) {
  return build_stats(documents, mentions, window).monthly();
}

}  // namespace oadsmine
