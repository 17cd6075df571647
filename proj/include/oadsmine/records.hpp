#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "oadsmine/analytics.hpp"
#include "oadsmine/extraction.hpp"

namespace oadsmine {

// Mentions file: one record per line,
//   doc_id<TAB>YYYY-MM<TAB>uri<TAB>span_start<TAB>span_end<TAB>"json-escaped context"
// preceded by a '#' header line. Readers skip '#' lines.
void write_mentions(std::ostream& out, const std::vector<UriMention>& mentions);
std::vector<UriMention> read_mentions(std::istream& in, const std::string& source_name = "<mentions>");
std::vector<UriMention> load_mentions(const std::filesystem::path& path);

// Documents file: doc_id<TAB>YYYY-MM for every document that was read,
// including those without URIs. It supplies the per-month publication counts.
void write_documents(std::ostream& out, const std::vector<DocumentRecord>& documents);
std::vector<DocumentRecord> read_documents(std::istream& in, const std::string& source_name = "<documents>");
std::vector<DocumentRecord> load_documents(const std::filesystem::path& path);

std::string json_quote(std::string_view s);

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace oadsmine
