#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "oadsmine/corpus.hpp"

namespace oadsmine {

// Half-open [start, end) in Unicode scalar values (code points) of the
// document text.
struct TextSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  bool contains(const TextSpan& o) const { return start <= o.start && o.end <= end; }
  bool operator==(const TextSpan&) const = default;
};

struct Sentence {
  std::string text;  // the span's text with surrounding whitespace removed
  TextSpan span;
};

struct UriMention {
  DocumentId doc_id;
  YearMonth month;
  std::string uri;      // trimmed, line-wrap repaired, scheme made explicit
  std::string context;  // the sentence containing the URI
  TextSpan span;        // raw match before trimming and repair
  bool implicit_scheme = false;  // detected from a bare "www." host

  bool operator==(const UriMention&) const = default;
};

// Raw URI candidate as found by the scanner, in byte offsets.
struct UriCandidate {
  std::size_t begin = 0;
  std::size_t raw_end = 0;      // end of the raw run, trailing punctuation included
  std::size_t trimmed_end = 0;  // end after trailing punctuation is removed
  bool implicit_scheme = false;
};

// Finds every URI candidate in document order. A candidate starts at
// `scheme://` or at a bare `www.` host on a word boundary and extends over
// URI characters, crossing line breaks that `repair_linewrap` would join.
std::vector<UriCandidate> find_uri_candidates(std::string_view text);

// Strips trailing `.,;:'"` and unbalanced `)`, `]`, `}` repeatedly. Returns
// the length of the kept prefix.
std::size_t trim_uri_tail(std::string_view raw);

// Canonical URI for a raw match: line breaks removed, tail trimmed and an
// explicit "http://" added for bare hosts. Empty when nothing but a scheme
// would remain.
std::string uri_from_raw(std::string_view raw, bool implicit_scheme);

// Rejoins URIs that PDF text extraction wrapped across lines. A break is
// joined when it sits inside a URI candidate, the character before it is a
// URI character that does not end a sentence, and the next line continues
// with a lowercase letter, digit, or path punctuation (and not with a new
// URI, a footnote, or a bare English function word). Every other newline is
// preserved, so "word-\nbreak" in prose is untouched.
std::string repair_linewrap(std::string_view text);

// Splits text into sentences whose spans partition the text in order.
// Boundaries follow `.`, `!` or `?` (plus closing quotes or brackets) when
// whitespace and then an uppercase letter, quote, or digit follow. Blank
// lines also end a sentence, and a line that starts with a footnote marker
// and a URI forms a sentence of its own. Nothing inside a detected URI ever
// splits.
std::vector<Sentence> segment_sentences(std::string_view text);

// One mention per URI occurrence, in document order, each paired with its
// containing sentence.
std::vector<UriMention> extract_uri_mentions(const Document& doc);

// Keeps the first mention of each URI within each document.
std::vector<UriMention> dedup_per_document(const std::vector<UriMention>& mentions);

// Code point count of the UTF-8 prefix text[0, byte_pos).
std::size_t code_point_offset(std::string_view text, std::size_t byte_pos);

// Inverse of code_point_offset; returns text.size() past the end.
std::size_t byte_offset(std::string_view text, std::size_t code_point_pos);

}  // namespace oadsmine
