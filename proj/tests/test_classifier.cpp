#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "oadsmine/classifier.hpp"
#include "oadsmine/error.hpp"
#include "oadsmine/features.hpp"
#include "oadsmine/model.hpp"

using namespace oadsmine;

namespace {

UriMention mention(std::string uri, std::string context = "") {
  UriMention m;
  m.doc_id = {"d", 1};
  m.month = {2015, 1};
  m.uri = std::move(uri);
  m.context = std::move(context);
  return m;
}

std::vector<LabeledExample> labeled_fixture() {
  return load_labeled_examples(fixtures::repo_data("labeled_examples.tsv"));
}

// The six sample sentences are the last rows of the fixture file.
constexpr std::size_t kSampleRows = 6;

std::vector<LabeledExample> sample_rows() {
  auto all = labeled_fixture();
  return {all.end() - kSampleRows, all.end()};
}

std::vector<LabeledExample> without_sample_rows() {
  auto all = labeled_fixture();
  all.resize(all.size() - kSampleRows);
  return all;
}

TrainedModel random_model(std::mt19937_64& rng, std::vector<std::string> vocab) {
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
  std::normal_distribution<double> w(0.0, 1.0);
  TrainedModel m;
  m.vocabulary = vocab;
  m.weights.resize(vocab.size() + kUriFeatureCount);
  for (auto& x : m.weights) x = w(rng);
  m.bias = w(rng);
  return m;
}

}  // namespace

TEST_CASE("featurize tokenises the context and masks the URI") {
  auto fv = featurize("The dataset is available at http://ibm.biz/multishapeinsertion.",
                      "http://ibm.biz/multishapeinsertion", {});
  std::map<std::string, double> expected = {
      {"the", 1}, {"dataset", 1}, {"is", 1}, {"available", 1}, {"at", 1}, {"__uri__", 1},
      {"host:ibm.biz", 1}, {"tld:biz", 1}};
  CHECK(fv.named == expected);
  CHECK(fv.uri_slots[kSlotHttps] == 0.0);
  CHECK(fv.uri_slots[kSlotRootPath] == 0.0);
}

TEST_CASE("featurize URI features") {
  auto fv = featurize("", "https://a.b/c", {});
  CHECK(fv.named == std::map<std::string, double>{{"host:a.b", 1}, {"tld:b", 1}});
  CHECK(fv.uri_slots[kSlotHttps] == 1.0);

  auto root = featurize("", "https://Example.ORG/", {});
  CHECK(root.named.count("host:example.org") == 1);
  CHECK(root.uri_slots[kSlotRootPath] == 1.0);

  auto kw = featurize("", "http://x.org/Datasets/tools/src-release/codes?q=data", {});
  auto slot = [&](std::string_view k) {
    auto it = std::find(kPathKeywords.begin(), kPathKeywords.end(), k);
    return kw.uri_slots[kSlotFirstKeyword + static_cast<std::size_t>(it - kPathKeywords.begin())];
  };
  CHECK(slot("dataset") == 1.0);
  CHECK(slot("tool") == 1.0);
  CHECK(slot("src") == 1.0);
  CHECK(slot("release") == 1.0);
  CHECK(slot("code") == 1.0);
  CHECK(slot("data") == 0.0);
  CHECK(slot("software") == 0.0);

  auto ip = featurize("", "http://10.1.2.3/x", {});
  CHECK(ip.named == std::map<std::string, double>{{"host:10.1.2.3", 1}});

  auto bad = featurize("Some words", "not-a-uri", {});
  CHECK(bad.named == std::map<std::string, double>{{"some", 1}, {"words", 1}});

  FeaturizerConfig off;
  off.host_token = off.tld_token = off.path_flags = off.scheme_flag = off.context_tokens = false;
  auto none = featurize("Data here", "https://x.org/data", off);
  CHECK(none.named.empty());
  CHECK(none.uri_slots == std::array<double, kUriFeatureCount>{});
}

TEST_CASE("featurize counts repeats and is deterministic") {
  auto a = featurize("Code, code and CODE at www.x.org; see https://y.org.", "https://y.org", {});
  CHECK(a.named.at("code") == 3);
  CHECK(a.named.at("__uri__") == 2);
  CHECK(a == featurize("Code, code and CODE at www.x.org; see https://y.org.", "https://y.org", {}));
  CHECK(uri_slot_name(kSlotHttps) == "scheme:https");
  CHECK(uri_slot_name(kSlotFirstKeyword) == "path:code");
}

TEST_CASE("heuristic classifier examples") {
  auto d = PublisherDenylist::defaults();
  auto springer = classify_heuristic("https://link.springer.com/article/x", d);
  REQUIRE(springer);
  CHECK(*springer == Classification{Label::NonOADS, Provenance::HeuristicPublisher, 0.0});

  auto pdf = classify_heuristic("https://example.org/paper.PDF", d);
  REQUIRE(pdf);
  CHECK(*pdf == Classification{Label::NonOADS, Provenance::HeuristicPdf, 0.0});

  CHECK_FALSE(classify_heuristic("https://github.com/user/repo", d));
}

TEST_CASE("heuristic rule details") {
  auto d = PublisherDenylist::defaults();
  CHECK(has_pdf_path("https://a.org/x.pdf"));
  CHECK(has_pdf_path("https://a.org/x.Pdf?download=1"));
  CHECK(has_pdf_path("https://a.org/x.pdf#page=2"));
  CHECK_FALSE(has_pdf_path("https://a.org/x.pdf/view"));
  CHECK_FALSE(has_pdf_path("https://a.org/view?file=x.pdf"));
  CHECK_FALSE(has_pdf_path("https://a.org/pdf"));
  CHECK(has_pdf_path("not a uri.pdf"));

  CHECK(d.matches("onlinelibrary.wiley.com"));
  CHECK(d.matches("journals.sagepub.com"));
  CHECK(d.matches("springer.com"));
  CHECK_FALSE(d.matches("notspringer.com"));
  CHECK_FALSE(d.matches("springer.com.example.org"));

  // Publisher rule wins over the pdf rule.
  auto both = classify_heuristic("https://link.springer.com/content/pdf/x.pdf", d);
  REQUIRE(both);
  CHECK(both->provenance == Provenance::HeuristicPublisher);

  auto loaded = PublisherDenylist::load(fixtures::repo_data("publishers.txt"));
  CHECK(loaded.domains() == d.domains());
  CHECK_THROWS_AS(PublisherDenylist::load("/nonexistent/publishers.txt"), ConfigError);

  PublisherDenylist custom({" .Example.COM", "example.com", ""});
  CHECK(custom.domains() == std::vector<std::string>{"example.com"});
}

TEST_CASE("hybrid classifier never consults the model for heuristic verdicts") {
  auto d = PublisherDenylist::defaults();
  int calls = 0;
  LearnedClassifier learned = [&](const UriMention&) {
    ++calls;
    return Classification{Label::OADS, Provenance::Learned, 0.9};
  };
  for (const char* uri : {"https://www.sciencedirect.com/science/article/x.pdf", "https://link.springer.com/a",
                          "http://onlinelibrary.wiley.com/doi/1", "https://x.org/a.PDF?x=1"}) {
    auto c = classify_hybrid(mention(uri, "Data at the link."), learned, d);
    CHECK(c.label == Label::NonOADS);
    CHECK(c.provenance != Provenance::Learned);
  }
  CHECK(calls == 0);

  auto c = classify_hybrid(mention("https://github.com/u/r"), learned, d);
  CHECK(calls == 1);
  CHECK(c.provenance == Provenance::Learned);
}

TEST_CASE("hybrid short-circuit is independent of model weights") {
  std::mt19937_64 rng(3);
  auto d = PublisherDenylist::defaults();
  auto m = mention("https://link.springer.com/x", "Code and data are available at https://link.springer.com/x");
  auto expected = classify_hybrid(m, TrainedModel{}, d);
  for (int i = 0; i < 200; ++i) {
    auto model = random_model(rng, {"code", "data", "available", "host:link.springer.com"});
    CHECK(classify_hybrid(m, model, d) == expected);
  }
}

TEST_CASE("train on a separable pair") {
  std::vector<LabeledExample> ex = {{"Our code is at https://github.com/a/b", "https://github.com/a/b", Label::OADS},
                                    {"Watch the video https://youtu.be/x", "https://youtu.be/x", Label::NonOADS}};
  auto m = train(ex, {});
  CHECK(predict(m, ex[0].context, ex[0].uri).label == Label::OADS);
  CHECK(predict(m, ex[1].context, ex[1].uri).label == Label::NonOADS);
  CHECK(m.weights.size() == m.vocabulary.size() + kUriFeatureCount);
  CHECK(std::is_sorted(m.vocabulary.begin(), m.vocabulary.end()));
}

TEST_CASE("train errors") {
  CHECK_THROWS_AS(train({}, {}), DataError);
  std::vector<LabeledExample> one = {{"a", "https://a.org", Label::OADS}, {"b", "https://b.org", Label::OADS}};
  CHECK_THROWS_AS(train(one, {}), DataError);
}

TEST_CASE("training on the six sample rows separates them") {
  auto rows = sample_rows();
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].uri == "http://ibm.biz/multishapeinsertion");
  auto m = train(rows, {});
  for (const auto& r : rows) CHECK_MESSAGE(predict(m, r.context, r.uri).label == r.label, r.uri);
}

TEST_CASE("model trained without the sample rows labels them correctly") {
  auto m = train(without_sample_rows(), {});
  for (const auto& r : sample_rows()) {
    UriMention um = mention(r.uri, r.context);
    auto c = classify_hybrid(um, m, PublisherDenylist::defaults());
    CHECK_MESSAGE(c.label == r.label, r.uri);
    CHECK(c.provenance == Provenance::Learned);
  }
}

TEST_CASE("training is deterministic and serialization is exact") {
  auto ex = labeled_fixture();
  auto a = train(ex, {});
  auto b = train(ex, {});
  CHECK(a.serialize() == b.serialize());

  auto text = a.serialize();
  auto back = TrainedModel::deserialize(text);
  CHECK(back == a);
  CHECK(back.serialize() == text);
  for (const auto& e : ex) CHECK(predict(back, e.context, e.uri) == predict(a, e.context, e.uri));

  fixtures::TempDir dir("model");
  a.save(dir.path / "m.json");
  CHECK(TrainedModel::load(dir.path / "m.json") == a);
  CHECK(fixtures::slurp(dir.path / "m.json") == text);
}

TEST_CASE("serialization round-trips random models bit for bit") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 100; ++i) {
    auto m = random_model(rng, {"a", "b", "host:x.org", "tld:org", "\xC3\xA9t\xC3\xA9", "q\"uote"});
    m.weights[0] = u(rng) * 1e-300;
    m.weights[1] = std::nextafter(1.0, 2.0);
    m.bias = -0.0;
    m.threshold = std::uniform_real_distribution<double>(0.01, 0.99)(rng);
    auto back = TrainedModel::deserialize(m.serialize());
    REQUIRE(back.weights.size() == m.weights.size());
    for (std::size_t k = 0; k < m.weights.size(); ++k)
      CHECK(std::memcmp(&back.weights[k], &m.weights[k], sizeof(double)) == 0);
    CHECK(std::signbit(back.bias));
    CHECK(back.threshold == m.threshold);
  }
}

TEST_CASE("deserialize rejects malformed models") {
  auto good = nlohmann::json::parse(train(sample_rows(), {}).serialize());
  auto broken = [&](auto mutate) {
    auto j = good;
    mutate(j);
    return j.dump();
  };
  CHECK_NOTHROW(TrainedModel::deserialize(good.dump()));
  CHECK_THROWS_AS(TrainedModel::deserialize("not json"), DataError);
  CHECK_THROWS_AS(TrainedModel::deserialize(broken([](auto& j) { j["format_version"] = 99; })), DataError);
  CHECK_THROWS_AS(TrainedModel::deserialize(broken([](auto& j) { j["weights"].erase(0); })), DataError);
  CHECK_THROWS_AS(TrainedModel::deserialize(broken([](auto& j) { j["threshold"] = 1.0; })), DataError);
  CHECK_THROWS_AS(TrainedModel::deserialize(broken([](auto& j) { j["threshold"] = 0.0; })), DataError);
  CHECK_THROWS_AS(TrainedModel::deserialize(broken([](auto& j) {
                    std::swap(j["vocabulary"][0], j["vocabulary"][1]);
                  })),
                  DataError);
  CHECK_THROWS_AS(TrainedModel::deserialize(broken([](auto& j) { j.erase("bias"); })), DataError);
  CHECK_THROWS_AS(TrainedModel::load("/nonexistent/model.json"), ConfigError);
}

TEST_CASE("prediction semantics") {
  TrainedModel empty;
  empty.weights.assign(kUriFeatureCount, 0.0);
  empty.bias = 0.7;
  CHECK(empty.score("anything at all", "https://x.org/") == doctest::Approx(sigmoid(0.7)));

  auto m = train(labeled_fixture(), {});
  auto um = mention("https://github.com/hawkrobe/pragmatics_of_perspective_taking",
                    "Code and materials for reproducing the experiment as well as all data and analysis scripts "
                    "are open and available at https://github.com/hawkrobe/pragmatics_of_perspective_taking.");
  auto c = predict(m, um);
  CHECK(c.label == Label::OADS);
  CHECK(c.provenance == Provenance::Learned);
  CHECK(c == predict(m, um));

  auto video = predict(m, mention("https://youtu.be/RcWHXL2vJPc",
                                  "All these scenes can be seen in our video at https://youtu.be/RcWHXL2vJPc."));
  CHECK(video.label == Label::NonOADS);

  auto bare = classify_hybrid(mention("https://zenodo.org/record/1"), m, PublisherDenylist::defaults());
  CHECK(bare.provenance == Provenance::Learned);
  CHECK(bare.score == doctest::Approx(m.score("", "https://zenodo.org/record/1")));
}

TEST_CASE("label flips exactly at the threshold") {
  auto m = train(sample_rows(), {});
  const std::string ctx = "The dataset is available at http://ibm.biz/multishapeinsertion.";
  const std::string uri = "http://ibm.biz/multishapeinsertion";
  double s = m.score(ctx, uri);
  m.threshold = s;
  CHECK(predict(m, ctx, uri).label == Label::OADS);
  m.threshold = std::nextafter(s, 1.0);
  CHECK(predict(m, ctx, uri).label == Label::NonOADS);
  m.threshold = std::nextafter(s, 0.0);
  CHECK(predict(m, ctx, uri).label == Label::OADS);
}

TEST_CASE("score is monotone in positively weighted token counts") {
  std::mt19937_64 rng(23);
  const std::vector<std::string> words = {"code", "data", "video", "available", "at", "the"};
  for (int trial = 0; trial < 300; ++trial) {
    auto m = random_model(rng, words);
    std::string base = "the at";
    for (const auto& w : words) {
      std::size_t i = m.index_of(w);
      REQUIRE(i < m.vocabulary.size());
      double prev = m.score(base, "https://x.org/");
      std::string ctx = base;
      for (int k = 0; k < 5; ++k) {
        ctx += " " + w;
        double next = m.score(ctx, "https://x.org/");
        if (m.weights[i] > 0) CHECK(next >= prev);
        if (m.weights[i] < 0) CHECK(next <= prev);
        prev = next;
      }
    }
  }
}

TEST_CASE("sigmoid is stable") {
  CHECK(sigmoid(0) == 0.5);
  CHECK(sigmoid(1000) == 1.0);
  CHECK(sigmoid(-1000) == 0.0);
  CHECK_FALSE(std::isnan(sigmoid(-1e308)));
  CHECK(sigmoid(-3) == doctest::Approx(1 - sigmoid(3)));
}

TEST_CASE("metrics") {
  using L = Label;
  auto perfect = score_predictions({L::OADS, L::NonOADS}, {L::OADS, L::NonOADS});
  CHECK(perfect.accuracy() == 1.0);
  auto wrong = score_predictions({L::OADS, L::NonOADS}, {L::NonOADS, L::OADS});
  CHECK(wrong.accuracy() == 0.0);

  auto m = score_predictions({L::OADS, L::OADS, L::NonOADS, L::NonOADS}, {L::OADS, L::NonOADS, L::NonOADS, L::NonOADS});
  CHECK(m.accuracy() == 0.75);
  CHECK(m.total() == 4);
  CHECK(m.true_positive == 1);
  CHECK(m.false_negative == 1);
  CHECK(m.true_negative == 2);
  CHECK(m.false_positive == 0);
  CHECK(m.oads().precision == 1.0);
  CHECK(m.oads().recall == 0.5);
  CHECK(m.oads().f1 == doctest::Approx(2.0 / 3.0));
  CHECK(m.non_oads().precision == doctest::Approx(2.0 / 3.0));
  CHECK(m.non_oads().recall == 1.0);

  CHECK_THROWS_AS(score_predictions({L::OADS}, {}), DataError);
  CHECK(score_predictions({}, {}).accuracy() == 0.0);
}

TEST_CASE("evaluate agrees with per-example predictions") {
  auto ex = labeled_fixture();
  auto m = train(ex, {});
  auto metrics = evaluate(m, ex);
  std::uint64_t correct = 0;
  for (const auto& e : ex) correct += predict(m, e.context, e.uri).label == e.label;
  CHECK(metrics.total() == ex.size());
  CHECK(metrics.accuracy() == doctest::Approx(static_cast<double>(correct) / static_cast<double>(ex.size())));

  std::vector<LabeledExample> pubs = {{"x", "https://link.springer.com/a", Label::NonOADS},
                                      {"x", "https://a.org/a.pdf", Label::NonOADS}};
  CHECK(evaluate(m, PublisherDenylist::defaults(), pubs).accuracy() == 1.0);
}

TEST_CASE("cross-validation on the labeled fixture") {
  auto ex = labeled_fixture();
  REQUIRE(ex.size() == 200);
  auto cv = cross_validate(ex, {}, 5);
  CHECK(cv.fold_accuracy.size() == 5);
  CHECK(cv.pooled.total() == 200);
  CHECK(cv.mean_accuracy >= 0.85);
  auto again = cross_validate(ex, {}, 5);
  CHECK(again.fold_accuracy == cv.fold_accuracy);
  CHECK_THROWS_AS(cross_validate(ex, {}, 1), DataError);
  CHECK_THROWS_AS(cross_validate(ex, {}, 201), DataError);
}

TEST_CASE("labeled example parsing") {
  std::istringstream in("# c\nOADS\thttps://a.org\tData at https://a.org\n\nnon-oads\thttps://b.org\t\r\n");
  auto ex = parse_labeled_examples(in, "t");
  REQUIRE(ex.size() == 2);
  CHECK(ex[0].label == Label::OADS);
  CHECK(ex[1].label == Label::NonOADS);
  CHECK(ex[1].context.empty());

  auto line_of = [](const std::string& text) {
    std::istringstream s(text);
    try {
      parse_labeled_examples(s, "t");
    } catch (const ParseError& e) {
      return static_cast<int>(e.line());
    }
    return -1;
  };
  CHECK(line_of("OADS\tx\n") == 1);
  CHECK(line_of("OADS\tx\tc\nmaybe\tx\tc\n") == 2);
  CHECK(line_of("OADS\t\tc\n") == 1);
  CHECK_THROWS_AS(load_labeled_examples("/nonexistent.tsv"), ConfigError);
  CHECK(parse_label("NONOADS") == Label::NonOADS);
  CHECK_FALSE(parse_label("yes"));
}
