#include "oadsmine/extraction.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <utility>

#include "oadsmine/uri.hpp"

namespace oadsmine {
namespace {

constexpr std::size_t kMaxSchemeLength = 32;

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return is_alpha(c) || is_digit(c); }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\f' || c == '\v'; }
bool is_space(char c) { return is_blank(c) || c == '\n' || c == '\r'; }

bool is_scheme_char(char c) { return is_alnum(c) || c == '+' || c == '-' || c == '.'; }

// RFC 3986 unreserved, reserved and '%', plus braces for templated paths.
bool is_uri_char(char c) {
  if (is_alnum(c)) return true;
  switch (c) {
    case '-': case '.': case '_': case '~': case ':': case '/': case '?': case '#':
    case '[': case ']': case '@': case '!': case '$': case '&': case '\'': case '(':
    case ')': case '*': case '+': case ',': case ';': case '=': case '%': case '{':
    case '}':
      return true;
    default:
      return false;
  }
}

// Characters a URI may end on in running text only as punctuation.
bool ends_clause(char c) {
  switch (c) {
    case '.': case ',': case ';': case ':': case '\'': case '"': case ')': case ']': case '}':
      return true;
    default:
      return false;
  }
}

// First character of a plausible continuation after a wrapped line.
bool is_tail_start(char c) {
  if (is_lower(c) || is_digit(c)) return true;
  switch (c) {
    case '/': case '-': case '_': case '~': case '%': case '#': case '?': case '=': case '&':
      return true;
    default:
      return false;
  }
}

bool is_function_word(std::string_view w) {
  static constexpr std::array<std::string_view, 40> kWords = {
      "a",    "an",   "and",   "are",   "as",    "at",   "be",    "but",  "by",   "can",
      "for",  "from", "has",   "have",  "in",    "is",   "it",    "its",  "may",  "not",
      "of",   "on",   "or",    "our",   "than",  "that", "the",   "their", "then", "there",
      "these", "this", "to",   "using", "was",   "we",   "were",  "where", "which", "with"};
  return std::find(kWords.begin(), kWords.end(), w) != kWords.end();
}

bool starts_with_icase(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char c = s[pos + i];
    if (is_upper(c)) c = static_cast<char>(c - 'A' + 'a');
    if (c != prefix[i]) return false;
  }
  return true;
}

// Length of "scheme://" starting at pos, or 0.
std::size_t scheme_prefix_at(std::string_view text, std::size_t pos) {
  if (pos >= text.size() || !is_alpha(text[pos])) return 0;
  if (pos > 0 && is_scheme_char(text[pos - 1])) return 0;
  std::size_t j = pos;
  while (j < text.size() && is_scheme_char(text[j]) && j - pos <= kMaxSchemeLength) ++j;
  if (j - pos > kMaxSchemeLength) return 0;
  if (text.substr(j, 3) != "://") return 0;
  std::size_t host = j + 3;
  if (host >= text.size() || !is_uri_char(text[host]) || text[host] == '/') return 0;
  return host - pos;
}

bool www_prefix_at(std::string_view text, std::size_t pos) {
  if (!starts_with_icase(text, pos, "www.")) return false;
  if (pos > 0) {
    char p = text[pos - 1];
    if (is_alnum(p) || p == '.' || p == '/' || p == '@' || p == '-' || p == ':' || p == '_') return false;
  }
  return pos + 4 < text.size() && is_alnum(text[pos + 4]);
}

bool uri_starts_at(std::string_view text, std::size_t pos) {
  return scheme_prefix_at(text, pos) > 0 || www_prefix_at(text, pos);
}

// A footnote line: optional blanks, an optional marker (up to three digits,
// '*', U+2020 or U+2021), optional blanks, then a URI.
bool is_footnote_line_at(std::string_view text, std::size_t pos) {
  while (pos < text.size() && is_blank(text[pos])) ++pos;
  std::size_t digits = 0;
  while (pos < text.size() && is_digit(text[pos]) && digits < 4) ++pos, ++digits;
  if (digits > 3) return false;
  if (digits == 0) {
    if (pos < text.size() && text[pos] == '*') {
      ++pos;
    } else if (text.substr(pos, 3) == "\xE2\x80\xA0" || text.substr(pos, 3) == "\xE2\x80\xA1") {
      pos += 3;
    }
  }
  while (pos < text.size() && is_blank(text[pos])) ++pos;
  return uri_starts_at(text, pos);
}

// Length of the line break at pos ("\n" or "\r\n"), or 0.
std::size_t newline_at(std::string_view text, std::size_t pos) {
  if (pos < text.size() && text[pos] == '\n') return 1;
  if (pos + 1 < text.size() && text[pos] == '\r' && text[pos + 1] == '\n') return 2;
  return 0;
}

bool joinable_break(std::string_view text, std::size_t token_begin, std::size_t nl_pos, std::size_t nl_len) {
  if (nl_pos == token_begin) return false;
  char before = text[nl_pos - 1];
  if (!is_uri_char(before) || ends_clause(before)) return false;

  std::size_t next = nl_pos + nl_len;
  if (next >= text.size() || !is_tail_start(text[next])) return false;
  if (uri_starts_at(text, next) || is_footnote_line_at(text, next)) return false;

  std::size_t tok_end = next;
  while (tok_end < text.size() && is_uri_char(text[tok_end])) ++tok_end;
  std::string_view token = text.substr(next, tok_end - next);
  token = token.substr(0, trim_uri_tail(token));
  bool letters_only = !token.empty() && std::all_of(token.begin(), token.end(), is_alpha);
  return !(letters_only && is_function_word(token));
}

std::size_t scan_uri_body(std::string_view text, std::size_t token_begin, std::size_t pos) {
  while (pos < text.size()) {
    if (is_uri_char(text[pos])) {
      ++pos;
      continue;
    }
    std::size_t nl = newline_at(text, pos);
    if (nl > 0 && joinable_break(text, token_begin, pos, nl)) {
      pos += nl;
      continue;
    }
    break;
  }
  return pos;
}

std::string strip_newlines(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    if (c != '\n' && c != '\r') out.push_back(c);
  return out;
}

struct ByteSentence {
  std::size_t begin;
  std::size_t end;
};

bool in_protected(const std::vector<std::pair<std::size_t, std::size_t>>& regions, std::size_t pos) {
  auto it = std::upper_bound(regions.begin(), regions.end(), std::make_pair(pos, static_cast<std::size_t>(-1)));
  if (it == regions.begin()) return false;
  --it;
  return pos >= it->first && pos < it->second;
}

std::size_t skip_space(std::string_view text, std::size_t pos) {
  while (pos < text.size() && is_space(text[pos])) ++pos;
  return pos;
}

bool is_closing(std::string_view text, std::size_t pos, std::size_t& len) {
  char c = text[pos];
  if (c == '"' || c == '\'' || c == ')' || c == ']') {
    len = 1;
    return true;
  }
  // U+201D, U+2019
  if (text.substr(pos, 3) == "\xE2\x80\x9D" || text.substr(pos, 3) == "\xE2\x80\x99") {
    len = 3;
    return true;
  }
  return false;
}

bool opens_sentence(std::string_view text, std::size_t pos) {
  char c = text[pos];
  if (is_upper(c) || is_digit(c) || c == '"' || c == '\'') return true;
  // U+201C, U+2018
  return text.substr(pos, 3) == "\xE2\x80\x9C" || text.substr(pos, 3) == "\xE2\x80\x98";
}

std::vector<ByteSentence> segment_bytes(std::string_view text,
                                        const std::vector<UriCandidate>& candidates) {
  std::vector<ByteSentence> out;
  if (text.empty()) return out;

  std::vector<std::pair<std::size_t, std::size_t>> protected_regions;
  protected_regions.reserve(candidates.size());
  for (const auto& c : candidates) protected_regions.emplace_back(c.begin, c.trimmed_end);

  std::set<std::size_t> bounds{0};
  const std::size_t n = text.size();
  std::size_t line_start = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (line_start == i && !in_protected(protected_regions, i) && (i == 0 || text[i - 1] == '\n') &&
        is_footnote_line_at(text, i)) {
      bounds.insert(skip_space(text, i));
      std::size_t j = i;
      while (j < n && (text[j] != '\n' || in_protected(protected_regions, j))) ++j;
      if (j < n) {
        std::size_t k = skip_space(text, j);
        if (k < n) bounds.insert(k);
      }
    }

    char c = text[i];
    if (c == '\n') line_start = i + 1;
    if (in_protected(protected_regions, i)) continue;

    if (c == '.' || c == '!' || c == '?') {
      std::size_t j = i + 1;
      std::size_t len = 0;
      while (j < n && is_closing(text, j, len)) j += len;
      if (j < n && is_space(text[j])) {
        std::size_t k = skip_space(text, j);
        if (k < n && opens_sentence(text, k)) bounds.insert(k);
      }
    } else if (c == '\n') {
      std::size_t j = i + 1;
      while (j < n && (is_blank(text[j]) || text[j] == '\r')) ++j;
      if (j < n && text[j] == '\n') {
        std::size_t k = skip_space(text, j);
        if (k < n) bounds.insert(k);
      }
    }
  }

  std::vector<std::size_t> b(bounds.begin(), bounds.end());
  // A whitespace-only lead-in joins the following sentence.
  if (b.size() > 1 && skip_space(text, 0) >= b[1]) b.erase(b.begin() + 1);
  for (std::size_t k = 0; k < b.size(); ++k) out.push_back({b[k], k + 1 < b.size() ? b[k + 1] : n});
  return out;
}

std::string trimmed(std::string_view s) {
  std::size_t a = 0, e = s.size();
  while (a < e && is_space(s[a])) ++a;
  while (e > a && is_space(s[e - 1])) --e;
  return std::string(s.substr(a, e - a));
}

// Maps byte offsets to code point offsets for one text.
class OffsetIndex {
 public:
  explicit OffsetIndex(std::string_view text) : cp_(text.size() + 1) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      cp_[i] = count;
      if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) ++count;
    }
    cp_[text.size()] = count;
  }

  std::size_t operator()(std::size_t byte_pos) const { return cp_[byte_pos]; }

 private:
  std::vector<std::size_t> cp_;
};

}  // namespace

std::size_t code_point_offset(std::string_view text, std::size_t byte_pos) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < byte_pos && i < text.size(); ++i)
    if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) ++count;
  return count;
}

std::size_t byte_offset(std::string_view text, std::size_t code_point_pos) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
      if (count == code_point_pos) return i;
      ++count;
    }
  }
  return text.size();
}

std::size_t trim_uri_tail(std::string_view raw) {
  std::size_t len = raw.size();
  auto count = [&](char ch) { return std::count(raw.begin(), raw.begin() + len, ch); };
  while (len > 0) {
    char c = raw[len - 1];
    bool strip = false;
    switch (c) {
      case '.': case ',': case ';': case ':': case '\'': case '"':
        strip = true;
        break;
      case ')':
        strip = count('(') < count(')');
        break;
      case ']':
        strip = count('[') < count(']');
        break;
      case '}':
        strip = count('{') < count('}');
        break;
      default:
        break;
    }
    if (!strip) break;
    --len;
  }
  return len;
}

std::string uri_from_raw(std::string_view raw, bool implicit_scheme) {
  std::string joined = strip_newlines(raw);
  joined.resize(trim_uri_tail(joined));
  if (implicit_scheme) {
    if (joined.size() <= 4) return {};
    return "http://" + joined;
  }
  auto sep = joined.find("://");
  if (sep == std::string::npos || sep + 3 >= joined.size()) return {};
  return joined;
}

std::vector<UriCandidate> find_uri_candidates(std::string_view text) {
  std::vector<UriCandidate> out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t body = 0;
    bool implicit = false;
    if (std::size_t p = scheme_prefix_at(text, i); p > 0) {
      body = i + p;
    } else if (www_prefix_at(text, i)) {
      body = i + 4;
      implicit = true;
    } else {
      ++i;
      continue;
    }
    std::size_t end = scan_uri_body(text, i, body);
    std::size_t kept = trim_uri_tail(text.substr(i, end - i));
    if (i + kept > body && parse_uri(uri_from_raw(text.substr(i, end - i), implicit))) {
      out.push_back({i, end, i + kept, implicit});
      i = end;
    } else {
      ++i;
    }
  }
  return out;
}

std::string repair_linewrap(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  for (const auto& c : find_uri_candidates(text)) {
    out.append(text.substr(pos, c.begin - pos));
    out.append(strip_newlines(text.substr(c.begin, c.raw_end - c.begin)));
    pos = c.raw_end;
  }
  out.append(text.substr(pos));
  return out;
}

std::vector<Sentence> segment_sentences(std::string_view text) {
  OffsetIndex cp(text);
  std::vector<Sentence> out;
  for (const auto& s : segment_bytes(text, find_uri_candidates(text)))
    out.push_back({trimmed(text.substr(s.begin, s.end - s.begin)), {cp(s.begin), cp(s.end)}});
  return out;
}

std::vector<UriMention> extract_uri_mentions(const Document& doc) {
  std::string_view text = doc.text;
  auto candidates = find_uri_candidates(text);
  if (candidates.empty()) return {};

  OffsetIndex cp(text);
  auto sentences = segment_bytes(text, candidates);
  std::vector<UriMention> out;
  out.reserve(candidates.size());
  std::size_t s = 0;
  for (const auto& c : candidates) {
    std::string uri = uri_from_raw(text.substr(c.begin, c.raw_end - c.begin), c.implicit_scheme);
    if (uri.empty()) continue;
    while (s + 1 < sentences.size() && sentences[s].end <= c.begin) ++s;
    const auto& sent = sentences[s];
    out.push_back({doc.id, doc.month, std::move(uri), trimmed(text.substr(sent.begin, sent.end - sent.begin)),
                   {cp(c.begin), cp(c.raw_end)}, c.implicit_scheme});
  }
  return out;
}

std::vector<UriMention> dedup_per_document(const std::vector<UriMention>& mentions) {
  std::set<std::pair<DocumentId, std::string>> seen;
  std::vector<UriMention> out;
  for (const auto& m : mentions)
    if (seen.emplace(m.doc_id, m.uri).second) out.push_back(m);
  return out;
}

}  // namespace oadsmine
