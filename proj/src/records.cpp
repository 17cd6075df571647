#include "oadsmine/records.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oadsmine/error.hpp"

namespace oadsmine {
namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (auto tab = line.find('\t'); tab != std::string_view::npos; tab = line.find('\t', start)) {
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  fields.push_back(line.substr(start));
  return fields;
}

std::size_t parse_offset(std::string_view s, const std::string& source, std::size_t lineno) {
  if (s.empty() || s.size() > 18) throw ParseError(source, lineno, "bad offset '" + std::string(s) + "'");
  std::size_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw ParseError(source, lineno, "bad offset '" + std::string(s) + "'");
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  return v;
}

template <typename Record, typename F>
std::vector<Record> read_lines(std::istream& in, F&& parse_line) {
  std::vector<Record> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    out.push_back(parse_line(split_tabs(line), lineno));
  }
  return out;
}

DocumentId parse_id(std::string_view s, const std::string& source, std::size_t lineno) {
  try {
    return DocumentId::parse(s);
  } catch (const DataError& e) {
    throw ParseError(source, lineno, e.what());
  }
}

YearMonth parse_month(std::string_view s, const std::string& source, std::size_t lineno) {
  auto m = YearMonth::parse(s);
  if (!m) throw ParseError(source, lineno, "unparseable month '" + std::string(s) + "'");
  return *m;
}

}  // namespace

std::string json_quote(std::string_view s) {
  return nlohmann::json(std::string(s)).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

void write_mentions(std::ostream& out, const std::vector<UriMention>& mentions) {
  out << "# doc_id\tmonth\turi\tspan_start\tspan_end\tcontext\n";
  for (const auto& m : mentions) {
    out << m.doc_id.to_string() << '\t' << m.month.to_string() << '\t' << m.uri << '\t' << m.span.start << '\t'
        << m.span.end << '\t' << json_quote(m.context) << '\n';
  }
}

std::vector<UriMention> read_mentions(std::istream& in, const std::string& source) {
  return read_lines<UriMention>(in, [&](const std::vector<std::string_view>& f, std::size_t lineno) {
    if (f.size() != 6) throw ParseError(source, lineno, "expected 6 tab-separated fields");
    UriMention m;
    m.doc_id = parse_id(f[0], source, lineno);
    m.month = parse_month(f[1], source, lineno);
    m.uri = std::string(f[2]);
    if (m.uri.empty()) throw ParseError(source, lineno, "empty uri");
    m.span = {parse_offset(f[3], source, lineno), parse_offset(f[4], source, lineno)};
    if (m.span.end < m.span.start) throw ParseError(source, lineno, "span end precedes start");
    try {
      auto j = nlohmann::json::parse(f[5]);
      if (!j.is_string()) throw ParseError(source, lineno, "context must be a JSON string");
      m.context = j.get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source, lineno, std::string("bad context: ") + e.what());
    }
    return m;
  });
}

std::vector<UriMention> load_mentions(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open mentions file " + path.string());
  return read_mentions(in, path.string());
}

void write_documents(std::ostream& out, const std::vector<DocumentRecord>& documents) {
  out << "# doc_id\tmonth\n";
  for (const auto& d : documents) out << d.id.to_string() << '\t' << d.month.to_string() << '\n';
}

std::vector<DocumentRecord> read_documents(std::istream& in, const std::string& source) {
  return read_lines<DocumentRecord>(in, [&](const std::vector<std::string_view>& f, std::size_t lineno) {
    if (f.size() != 2) throw ParseError(source, lineno, "expected doc_id<TAB>month");
    return DocumentRecord{parse_id(f[0], source, lineno), parse_month(f[1], source, lineno)};
  });
}

std::vector<DocumentRecord> load_documents(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open documents file " + path.string());
  return read_documents(in, path.string());
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ConfigError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw ConfigError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

}  // namespace oadsmine
