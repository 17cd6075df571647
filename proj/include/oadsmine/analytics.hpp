#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oadsmine/corpus.hpp"
#include "oadsmine/ghp.hpp"
#include "oadsmine/year_month.hpp"

namespace oadsmine {

// Publication and URI counts for one period. oads = ghp + non_ghp_oads and
// uri_total = oads + non_oads hold by construction.
struct CategoryCounts {
  std::uint64_t publications = 0;
  std::uint64_t uri_total = 0;
  std::uint64_t oads = 0;
  std::uint64_t non_oads = 0;
  std::uint64_t ghp = 0;
  std::uint64_t non_ghp_oads = 0;

  void add(Category c, std::uint64_t n = 1);
  CategoryCounts& operator+=(const CategoryCounts& o);
  bool operator==(const CategoryCounts&) const = default;

  // Averages per publication; nullopt when there are no publications.
  std::optional<double> avg_total() const;
  std::optional<double> avg_oads() const;
  std::optional<double> avg_non_oads() const;
};

struct MonthlyStats : CategoryCounts {
  YearMonth month;
  bool operator==(const MonthlyStats&) const = default;
};

struct YearlyStats : CategoryCounts {
  int year = 0;
  bool operator==(const YearlyStats&) const = default;
};

// Percentages of uri_total, unrounded.
struct CategoryPercentages {
  double ghp = 0.0;
  double non_ghp_oads = 0.0;
  double non_oads = 0.0;
};

std::optional<CategoryPercentages> category_percentages(const CategoryCounts& counts);
std::optional<CategoryPercentages> category_percentages(std::uint64_t ghp, std::uint64_t non_ghp_oads,
                                                        std::uint64_t non_oads);

// Rounds to the 0.01 reporting resolution.
double round_percent(double pct);

// Share of OADS URIs that point at a Git hosting platform, as a percentage.
std::optional<double> ghp_share_of_oads(const CategoryCounts& counts);

struct HostnameStats {
  std::map<std::string, std::uint64_t> counts;  // lowercased host -> mentions
  std::uint64_t total = 0;

  void add(const std::string& host, std::uint64_t n = 1);
  HostnameStats& operator+=(const HostnameStats& o);
  bool operator==(const HostnameStats&) const = default;

  // Fraction of `total` (not a percentage); nullopt when total is 0.
  std::optional<double> share(const std::string& host) const;
};

// Host counts over URIs of non-GHP OADS mentions.
HostnameStats hostname_frequency(const std::vector<std::string>& uris);

struct HistogramBin {
  std::uint64_t start = 0;  // inclusive
  std::uint64_t end = 0;    // exclusive
  std::uint64_t hostnames = 0;
  bool operator==(const HistogramBin&) const = default;
};

struct Histogram {
  std::uint64_t bin_width = 50;
  std::vector<HistogramBin> bins;  // contiguous from 0 up to the bin holding the top frequency
  bool operator==(const Histogram&) const = default;
};

// Buckets hostnames by their frequency into [k*w, (k+1)*w). Throws
// DataError for a zero bin width.
Histogram frequency_histogram(const HostnameStats& stats, std::uint64_t bin_width);

// Descending count, ties broken by hostname; at most n rows.
std::vector<std::pair<std::string, std::uint64_t>> top_hostnames(const HostnameStats& stats, std::size_t n);

struct Dispersion {
  double singleton_uri_share = 0.0;  // mentions whose host occurs once
  double gt5_uri_share = 0.0;        // mentions whose host occurs more than five times
  std::uint64_t hostnames_over_1000 = 0;
};

std::optional<Dispersion> dispersion_metrics(const HostnameStats& stats);

struct StatsConfig {
  std::uint64_t bin_width = 50;
  CategoryPolicy policy = CategoryPolicy::GhpForcesOads;
  bool operator==(const StatsConfig&) const = default;
};

// A mention after classification, scoping and categorisation.
struct CategorizedMention {
  DocumentId doc_id;
  YearMonth month;
  std::string uri;
  Category category = Category::NonOADS;
};

struct DocumentRecord {
  DocumentId id;
  YearMonth month;
  bool operator==(const DocumentRecord&) const = default;
};

// Mergeable corpus aggregate behind every report. Shards built separately
// and merged equal the aggregate of the whole corpus.
class CorpusStats {
 public:
  explicit CorpusStats(StatsConfig config = {}) : config_(config) {}

  void add_document(const YearMonth& month);
  // Non-GHP OADS mentions also feed the hostname counts.
  void add_mention(const YearMonth& month, Category category, const std::string& uri);

  const StatsConfig& config() const { return config_; }
  const std::map<YearMonth, CategoryCounts>& by_month() const { return months_; }
  const HostnameStats& hostnames() const { return hostnames_; }

  std::vector<MonthlyStats> monthly() const;
  std::vector<YearlyStats> yearly() const;
  CategoryCounts totals() const;

  // Throws DataError when the configs differ.
  CorpusStats& operator+=(const CorpusStats& o);
  bool operator==(const CorpusStats&) const = default;

 private:
  StatsConfig config_;
  std::map<YearMonth, CategoryCounts> months_;
  HostnameStats hostnames_;
};

// Field-wise sum. Throws DataError when the configs differ.
CorpusStats merge(const CorpusStats& a, const CorpusStats& b);

// Builds the aggregate for a set of documents and their mentions. Every
// mention must belong to a listed document and fall inside `window`;
// violations throw DataError.
CorpusStats build_stats(const std::vector<DocumentRecord>& documents, const std::vector<CategorizedMention>& mentions,
                        const MonthWindow& window, StatsConfig config = {});

// One record per month that has at least one document.
std::vector<MonthlyStats> monthly_stats(const std::vector<DocumentRecord>& documents,
                                        const std::vector<CategorizedMention>& mentions, const MonthWindow& window);

}  // namespace oadsmine
