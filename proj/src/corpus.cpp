#include "oadsmine/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include "oadsmine/error.hpp"

namespace oadsmine {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

int parse_version(std::string_view s) {
  if (!all_digits(s) || s.size() > 9) return 0;
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace

std::string DocumentId::to_string() const { return base_id + "v" + std::to_string(version); }

DocumentId DocumentId::parse(std::string_view text) {
  if (text.empty()) throw DataError("empty document id");
  if (std::any_of(text.begin(), text.end(), is_space))
    throw DataError("document id contains whitespace: '" + std::string(text) + "'");

  auto v = text.find_last_of('v');
  if (v != std::string_view::npos && v > 0 && all_digits(text.substr(v + 1))) {
    int version = parse_version(text.substr(v + 1));
    if (version < 1) throw DataError("invalid version in document id '" + std::string(text) + "'");
    return {std::string(text.substr(0, v)), version};
  }
  return {std::string(text), 1};
}

CorpusManifest parse_manifest(std::istream& in, const std::filesystem::path& base_dir,
                              const std::string& source_name) {
  CorpusManifest manifest;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;

    auto fields = split_tabs(line);
    if (fields.size() != 4)
      throw ParseError(source_name, lineno,
                       "expected 4 tab-separated fields, got " + std::to_string(fields.size()));

    DocumentId id;
    try {
      id = DocumentId::parse(fields[0]);
    } catch (const DataError& e) {
      throw ParseError(source_name, lineno, e.what());
    }

    int version = parse_version(fields[1]);
    if (version < 1)
      throw ParseError(source_name, lineno, "version must be a positive integer, got '" +
                                                std::string(fields[1]) + "'");
    bool id_has_suffix = id.base_id.size() < fields[0].size();
    if (id_has_suffix && id.version != version)
      throw ParseError(source_name, lineno,
                       "id suffix v" + std::to_string(id.version) + " disagrees with version column " +
                           std::to_string(version));
    id.version = version;

    auto month = YearMonth::parse(fields[2]);
    if (!month)
      throw ParseError(source_name, lineno, "unparseable month '" + std::string(fields[2]) + "'");

    if (fields[3].empty()) throw ParseError(source_name, lineno, "empty path");
    std::filesystem::path p{std::string(fields[3])};
    if (p.is_relative()) p = base_dir / p;

    manifest.entries.push_back({std::move(id), *month, std::move(p)});
  }
  return manifest;
}

CorpusManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open manifest " + path.string());
  return parse_manifest(in, path.parent_path(), path.string());
}

CorpusManifest select_latest_versions(const CorpusManifest& manifest) {
  std::map<DocumentId, std::size_t> seen;
  std::vector<std::string> duplicates;
  for (const auto& e : manifest.entries) {
    if (++seen[e.id] == 2) duplicates.push_back(e.id.to_string());
  }
  if (!duplicates.empty()) {
    std::string msg = "duplicate (id, version) pairs:";
    for (const auto& d : duplicates) msg += " " + d;
    throw DataError(msg);
  }

  std::map<std::string, std::size_t> best;  // base_id -> index of max version
  for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
    const auto& e = manifest.entries[i];
    auto [it, inserted] = best.try_emplace(e.id.base_id, i);
    if (!inserted && manifest.entries[it->second].id.version < e.id.version) it->second = i;
  }

  CorpusManifest out;
  for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
    if (best.at(manifest.entries[i].id.base_id) == i) out.entries.push_back(manifest.entries[i]);
  }
  return out;
}

WindowSplit filter_window(const CorpusManifest& manifest, const MonthWindow& window) {
  WindowSplit split;
  for (const auto& e : manifest.entries) {
    if (window.contains(e.month))
      split.kept.entries.push_back(e);
    else
      ++split.rejected;
  }
  return split;
}

Document read_document(const ManifestEntry& entry) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(entry.path, ec))
    throw DataError("document " + entry.id.to_string() + ": no such file " + entry.path.string());
  std::ifstream in(entry.path, std::ios::binary);
  if (!in) throw DataError("document " + entry.id.to_string() + ": cannot read " + entry.path.string());
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw DataError("document " + entry.id.to_string() + ": read error on " + entry.path.string());
  return {entry.id, entry.month, std::move(text)};
}

}  // namespace oadsmine
