// Helpers shared by the unit tests and the acceptance runner.
#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <unistd.h>

#include "oadsmine/analytics.hpp"
#include "oadsmine/ghp.hpp"
#include "oadsmine/scope.hpp"

namespace fixtures {

inline std::filesystem::path test_data(const std::string& name) {
  return std::filesystem::path(OADSMINE_TEST_DATA) / name;
}

inline std::filesystem::path repo_data(const std::string& name) {
  return std::filesystem::path(OADSMINE_REPO_DATA) / name;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Tab-separated rows; '#' lines and blank lines skipped.
inline std::vector<std::vector<std::string>> read_tsv(const std::filesystem::path& path) {
  std::istringstream in(slurp(path));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

inline std::optional<oadsmine::ScopeReason> parse_reason(const std::string& s) {
  for (auto r : oadsmine::kAllScopeReasons)
    if (oadsmine::to_string(r) == s) return r;
  return std::nullopt;
}

inline std::optional<oadsmine::Platform> parse_platform(const std::string& s) {
  for (auto p : oadsmine::kAllPlatforms)
    if (oadsmine::to_string(p) == s) return p;
  return std::nullopt;
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("oadsmine_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

// Random categorised corpus: documents spread over a few months, mentions
// over a small host pool so hostnames repeat.
struct RandomCorpus {
  std::vector<oadsmine::DocumentRecord> documents;
  std::vector<oadsmine::CategorizedMention> mentions;
};

inline RandomCorpus random_corpus(std::mt19937_64& rng, std::size_t max_docs, std::size_t max_mentions) {
  static const std::vector<std::string> hosts = {
      "cds.cern.ch", "www.sciencedirect.com", "zenodo.org", "ibm.biz", "Data.Example.org", "a.b.c",
      "heasarc.gsfc.nasa.gov", "x.org", "y.org", "z.org", "[2001:db8::1]", "192.0.2.4:8080"};
  RandomCorpus c;
  std::size_t docs = 1 + rng() % max_docs;
  for (std::size_t i = 0; i < docs; ++i) {
    oadsmine::YearMonth m{2007 + static_cast<int>(rng() % 15), 1 + static_cast<int>(rng() % 12)};
    if (m.year == 2007 && m.month < 4) m.month = 4;
    c.documents.push_back({{"doc" + std::to_string(i), 1 + static_cast<int>(rng() % 3)}, m});
  }
  std::size_t mentions = rng() % (max_mentions + 1);
  for (std::size_t i = 0; i < mentions; ++i) {
    const auto& d = c.documents[rng() % c.documents.size()];
    auto cat = oadsmine::kAllCategories[rng() % 3];
    std::string uri = "https://" + hosts[rng() % hosts.size()] + "/p" + std::to_string(rng() % 7);
    c.mentions.push_back({d.id, d.month, uri, cat});
  }
  return c;
}

}  // namespace fixtures
