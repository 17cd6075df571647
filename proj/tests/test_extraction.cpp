#include <doctest.h>

#include <random>

#include "oadsmine/extraction.hpp"
#include "oadsmine/uri.hpp"

using namespace oadsmine;

namespace {

Document doc(std::string text) { return {{"d", 1}, {2015, 6}, std::move(text)}; }

std::vector<std::string> uris(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& m : extract_uri_mentions(doc(text))) out.push_back(m.uri);
  return out;
}

std::vector<std::string> sentence_texts(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& s : segment_sentences(text)) out.push_back(s.text);
  return out;
}

// Substring by code point span.
std::string cp_slice(std::string_view text, TextSpan span) {
  std::size_t a = byte_offset(text, span.start);
  std::size_t b = byte_offset(text, span.end);
  return std::string(text.substr(a, b - a));
}

}  // namespace

TEST_CASE("segment_sentences examples") {
  CHECK(sentence_texts("A. B.") == std::vector<std::string>{"A.", "B."});
  CHECK(sentence_texts("See http://x.y/a.b for data. Next.") ==
        std::vector<std::string>{"See http://x.y/a.b for data.", "Next."});
  CHECK(segment_sentences("").empty());
}

TEST_CASE("segment_sentences boundary rules") {
  CHECK(sentence_texts("One! Two? Three.") == std::vector<std::string>{"One!", "Two?", "Three."});
  CHECK(sentence_texts("e.g. this stays together.") == std::vector<std::string>{"e.g. this stays together."});
  CHECK(sentence_texts("It ended.\" Then more.") == std::vector<std::string>{"It ended.\"", "Then more."});
  CHECK(sentence_texts("Values rose. 2021 was high.") == std::vector<std::string>{"Values rose.", "2021 was high."});
  CHECK(sentence_texts("Title line\n\nBody text here.") == std::vector<std::string>{"Title line", "Body text here."});
  CHECK(sentence_texts("Version 1.5 works.") == std::vector<std::string>{"Version 1.5 works."});
  // A URI ending in "." followed by a capital does not split inside the URI.
  CHECK(sentence_texts("Get http://a.org/X. Then go.") ==
        std::vector<std::string>{"Get http://a.org/X.", "Then go."});
}

TEST_CASE("segment_sentences footnote lines form their own sentences") {
  std::string text = "Catalogues are public.1\n1 https://a.org/x\n2 http://b.org/y\nMore text follows.";
  CHECK(sentence_texts(text) ==
        std::vector<std::string>{"Catalogues are public.1", "1 https://a.org/x", "2 http://b.org/y",
                                 "More text follows."});
}

TEST_CASE("segment_sentences spans partition the text") {
  std::string text = "  Leading space. Caf\xC3\xA9 is open. See https://x.org/a.b.\n\nDone";
  auto s = segment_sentences(text);
  REQUIRE_FALSE(s.empty());
  CHECK(s.front().span.start == 0);
  CHECK(s.back().span.end == code_point_offset(text, text.size()));
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i - 1].span.end == s[i].span.start);
  CHECK(s[0].text == "Leading space.");
}

TEST_CASE("extract_uri_mentions examples") {
  auto m = extract_uri_mentions(doc("The dataset is available at http://ibm.biz/multishapeinsertion."));
  REQUIRE(m.size() == 1);
  CHECK(m[0].uri == "http://ibm.biz/multishapeinsertion");
  CHECK(m[0].context == "The dataset is available at http://ibm.biz/multishapeinsertion.");
  CHECK(m[0].span == TextSpan{28, 63});
  CHECK_FALSE(m[0].implicit_scheme);

  CHECK(extract_uri_mentions(doc("")).empty());
  CHECK(uris("(see https://example.org/tool).") == std::vector<std::string>{"https://example.org/tool"});
}

TEST_CASE("trailing punctuation trimming") {
  CHECK(trim_uri_tail("https://a.org/x.") == 15);
  CHECK(trim_uri_tail("https://a.org/x).,;:'\"") == 15);
  CHECK(trim_uri_tail("https://en.wikipedia.org/wiki/Foo_(bar)") == 39);
  CHECK(trim_uri_tail("https://en.wikipedia.org/wiki/Foo_(bar)).") == 39);
  CHECK(trim_uri_tail("https://a.org/[x]]") == 17);
  CHECK(trim_uri_tail("https://a.org/{x}}") == 17);
  CHECK(trim_uri_tail("...") == 0);

  CHECK(uris("Data [https://a.org/d].") == std::vector<std::string>{"https://a.org/d"});
  CHECK(uris("See https://en.wikipedia.org/wiki/Foo_(bar).") ==
        std::vector<std::string>{"https://en.wikipedia.org/wiki/Foo_(bar)"});
  CHECK(uris("Link: 'https://a.org/q?x=1&y=2'") == std::vector<std::string>{"https://a.org/q?x=1&y=2"});
}

TEST_CASE("scheme and www detection") {
  CHECK(uris("ftp://mirror.example.org/data and git+ssh://host/repo") ==
        std::vector<std::string>{"ftp://mirror.example.org/data", "git+ssh://host/repo"});
  auto m = extract_uri_mentions(doc("Visit www.example.com/page today."));
  REQUIRE(m.size() == 1);
  CHECK(m[0].uri == "http://www.example.com/page");
  CHECK(m[0].implicit_scheme);
  CHECK(uris("mail user@www.example.com now").empty());
  CHECK(uris("http:// nothing here").empty());
  CHECK(uris("file:///etc/passwd").empty());
  CHECK(uris("WWW.EXAMPLE.ORG") == std::vector<std::string>{"http://WWW.EXAMPLE.ORG"});
  CHECK(uris("a https://x.org/1 b https://x.org/1 c") ==
        std::vector<std::string>{"https://x.org/1", "https://x.org/1"});
}

TEST_CASE("repair_linewrap") {
  CHECK(repair_linewrap("https://example.org/long\npath") == "https://example.org/longpath");
  CHECK(repair_linewrap("https://example.org/long-\npath") == "https://example.org/long-path");
  CHECK(repair_linewrap("no newlines at all") == "no newlines at all");
  CHECK(repair_linewrap("word-\nbreak") == "word-\nbreak");
  CHECK(repair_linewrap("https://github.com/cosmo-sim/\nworkflow-engine here") ==
        "https://github.com/cosmo-sim/workflow-engine here");
  CHECK(repair_linewrap("https://a.org/x\r\nyz") == "https://a.org/xyz");
  // Guards: clause punctuation before the break, capitalised continuation,
  // function words, new URIs and footnote lines.
  CHECK(repair_linewrap("https://a.org/x.\nnext") == "https://a.org/x.\nnext");
  CHECK(repair_linewrap("https://a.org/x\nThe end") == "https://a.org/x\nThe end");
  CHECK(repair_linewrap("https://a.org/x\nand more") == "https://a.org/x\nand more");
  CHECK(repair_linewrap("https://a.org/x\nhttps://b.org") == "https://a.org/x\nhttps://b.org");
  CHECK(repair_linewrap("https://a.org/x\n2 https://b.org") == "https://a.org/x\n2 https://b.org");
  CHECK(repair_linewrap("https://a.org/x \npath") == "https://a.org/x \npath");
}

TEST_CASE("line-wrapped mentions keep the raw span and a repaired uri") {
  std::string text = "Code at https://example.org/long\npath now.";
  auto m = extract_uri_mentions(doc(text));
  REQUIRE(m.size() == 1);
  CHECK(m[0].uri == "https://example.org/longpath");
  CHECK(cp_slice(text, m[0].span) == "https://example.org/long\npath");
  CHECK(m[0].context == text);
}

TEST_CASE("spans count code points") {
  std::string text = "\xC3\xA9t\xC3\xA9 \xE2\x82\xAC https://a.org/\xC3\xA9 x";
  auto m = extract_uri_mentions(doc(text));
  REQUIRE(m.size() == 1);
  CHECK(m[0].span.start == 6);
  CHECK(m[0].uri == "https://a.org/");
  CHECK(m[0].span.end == 20);
}

TEST_CASE("footnote mentions take the footnote line as context") {
  std::string text = "We used public catalogues.1\n1 https://www.cosmos.esa.int/web/gaia/dr2\n";
  auto m = extract_uri_mentions(doc(text));
  REQUIRE(m.size() == 1);
  CHECK(m[0].context == "1 https://www.cosmos.esa.int/web/gaia/dr2");
}

TEST_CASE("multiple URIs in one sentence share its context") {
  auto m = extract_uri_mentions(doc("Mirrors: https://a.org/x and https://b.org/y. Next one."));
  REQUIRE(m.size() == 2);
  CHECK(m[0].context == "Mirrors: https://a.org/x and https://b.org/y.");
  CHECK(m[1].context == m[0].context);
}

TEST_CASE("dedup_per_document keeps the first occurrence per document") {
  Document a = doc("x https://a.org y https://a.org z https://b.org");
  Document b = doc("https://a.org");
  b.id = {"e", 1};
  auto ma = extract_uri_mentions(a);
  auto mb = extract_uri_mentions(b);
  ma.insert(ma.end(), mb.begin(), mb.end());
  auto d = dedup_per_document(ma);
  REQUIRE(d.size() == 3);
  CHECK(d[0].span.start == 2);
  CHECK(d[1].uri == "https://b.org");
  CHECK(d[2].doc_id == DocumentId{"e", 1});
}

TEST_CASE("code point offsets") {
  std::string t = "a\xC3\xA9\xE2\x82\xAC" "b";
  CHECK(code_point_offset(t, 0) == 0);
  CHECK(code_point_offset(t, 3) == 2);
  CHECK(code_point_offset(t, t.size()) == 4);
  CHECK(byte_offset(t, 2) == 3);
  CHECK(byte_offset(t, 3) == 6);
  CHECK(byte_offset(t, 4) == t.size());
}

TEST_CASE("extraction properties on random text") {
  std::mt19937 rng(99);
  const std::vector<std::string> pieces = {
      "The", "data", "is", "at", "see", ".", ". ", ", ", "(", ")", "\n", "\n\n", " ", " ", " ", "1 ", "Next",
      "https://github.com/u/r", "http://a.org/x.y", "www.site.org/p", "ftp://f.net/d", "https://x.org/a_(b)",
      "https://e.org/long", "path", "-", "/", "\xC3\xA9t\xC3\xA9", "\xE2\x80\x9Cq\xE2\x80\x9D", "?", "!", "\"",
      "v2", "S", "http://h/", "[", "]", "'", "and", "https://t.org/q?a=1&b=2#f", "www.", "://"};
  for (int trial = 0; trial < 3000; ++trial) {
    std::string text;
    int n = static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) text += pieces[rng() % pieces.size()];

    auto sentences = segment_sentences(text);
    std::size_t total = code_point_offset(text, text.size());
    if (text.empty()) {
      CHECK(sentences.empty());
    } else {
      REQUIRE_FALSE(sentences.empty());
      CHECK(sentences.front().span.start == 0);
      CHECK(sentences.back().span.end == total);
      for (std::size_t i = 1; i < sentences.size(); ++i) {
        CHECK(sentences[i - 1].span.end == sentences[i].span.start);
        CHECK(sentences[i - 1].span.start < sentences[i - 1].span.end);
      }
    }

    auto mentions = extract_uri_mentions(doc(text));
    CHECK(mentions == extract_uri_mentions(doc(text)));
    for (std::size_t i = 0; i < mentions.size(); ++i) {
      const auto& m = mentions[i];
      std::string raw = cp_slice(text, m.span);
      CHECK_MESSAGE(uri_from_raw(raw, m.implicit_scheme) == m.uri, text);
      CHECK_MESSAGE(parse_uri(m.uri).has_value(), m.uri);
      CHECK_FALSE(m.context.empty());
      if (i > 0) CHECK(mentions[i - 1].span.start < m.span.start);

      const Sentence* containing = nullptr;
      for (const auto& s : sentences)
        if (s.span.contains(m.span)) containing = &s;
      REQUIRE_MESSAGE(containing != nullptr, text);
      CHECK(containing->text == m.context);
      CHECK(m.context.find(raw.substr(0, raw.find_first_of("\r\n"))) != std::string::npos);
    }
  }
}
