#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "oadsmine/year_month.hpp"

namespace oadsmine {

// Article identifier split into the versionless id and its version number.
struct DocumentId {
  std::string base_id;
  int version = 1;

  auto operator<=>(const DocumentId&) const = default;

  // base_id followed by "v<version>", e.g. "0704.0001v2".
  std::string to_string() const;

  // Splits a trailing "v<digits>" suffix; an id without one is version 1.
  // Throws DataError for an empty id, whitespace in the id, or version 0.
  static DocumentId parse(std::string_view text);
};

struct Document {
  DocumentId id;
  YearMonth month;
  std::string text;
};

struct ManifestEntry {
  DocumentId id;
  YearMonth month;
  std::filesystem::path path;  // resolved against the manifest's directory
};

struct CorpusManifest {
  std::vector<ManifestEntry> entries;
};

// Reads `id<TAB>version<TAB>YYYY-MM<TAB>relative/path.txt` records. Lines
// starting with '#' and blank lines are skipped. An id carrying its own
// "v<digits>" suffix must agree with the version column. Throws ParseError
// naming the offending line, or ConfigError when the file cannot be opened.
CorpusManifest load_manifest(const std::filesystem::path& path);

// Same, from an in-memory stream; relative paths resolve against `base_dir`.
CorpusManifest parse_manifest(std::istream& in, const std::filesystem::path& base_dir,
                              const std::string& source_name = "<manifest>");

// Keeps one entry per base_id, the one with the highest version, at that
// entry's original position. Duplicate (base_id, version) pairs are a
// DataError listing every duplicate.
CorpusManifest select_latest_versions(const CorpusManifest& manifest);

struct WindowSplit {
  CorpusManifest kept;
  std::size_t rejected = 0;
};

// Drops entries whose month falls outside `window`, counting them.
WindowSplit filter_window(const CorpusManifest& manifest, const MonthWindow& window);

// Reads the entry's text file verbatim. Throws DataError naming the id when
// the file is missing or unreadable.
Document read_document(const ManifestEntry& entry);

}  // namespace oadsmine
