#include "oadsmine/classifier.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>

#include "oadsmine/error.hpp"
#include "oadsmine/uri.hpp"

namespace oadsmine {
namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

LabelMetrics label_metrics(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) {
  LabelMetrics m;
  m.precision = ratio(tp, tp + fp);
  m.recall = ratio(tp, tp + fn);
  m.f1 = (m.precision + m.recall) > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  return m;
}

void accumulate(Metrics& into, const Metrics& m) {
  into.true_positive += m.true_positive;
  into.false_positive += m.false_positive;
  into.true_negative += m.true_negative;
  into.false_negative += m.false_negative;
}

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::HeuristicPublisher: return "HeuristicPublisher";
    case Provenance::HeuristicPdf: return "HeuristicPdf";
    case Provenance::Learned: return "Learned";
  }
  return "?";
}

PublisherDenylist::PublisherDenylist(std::vector<std::string> domains) {
  for (auto& d : domains) {
    d = ascii_lower(d);
    while (!d.empty() && (d.back() == ' ' || d.back() == '\t' || d.back() == '.')) d.pop_back();
    while (!d.empty() && (d.front() == ' ' || d.front() == '\t' || d.front() == '.')) d.erase(d.begin());
    if (!d.empty()) domains_.push_back(std::move(d));
  }
  std::sort(domains_.begin(), domains_.end());
  domains_.erase(std::unique(domains_.begin(), domains_.end()), domains_.end());
}

PublisherDenylist PublisherDenylist::defaults() {
  return PublisherDenylist({"springer.com", "springerlink.com", "wiley.com", "sagepub.com"});
}

PublisherDenylist PublisherDenylist::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open publisher denylist " + path.string());
  std::vector<std::string> domains;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    domains.push_back(line.substr(a, e - a + 1));
  }
  return PublisherDenylist(std::move(domains));
}

bool PublisherDenylist::matches(std::string_view host) const {
  return std::any_of(domains_.begin(), domains_.end(),
                     [&](const std::string& d) { return host_matches_domain(host, d); });
}

bool has_pdf_path(std::string_view uri) {
  if (auto parsed = parse_uri(uri)) return ascii_lower(parsed->path).ends_with(".pdf");
  return ascii_lower(uri.substr(0, uri.find_first_of("?#"))).ends_with(".pdf");
}

std::optional<Classification> classify_heuristic(std::string_view uri, const PublisherDenylist& denylist) {
  if (parse_uri(uri) && denylist.matches(host_of(uri)))
    return Classification{Label::NonOADS, Provenance::HeuristicPublisher, 0.0};
  if (has_pdf_path(uri)) return Classification{Label::NonOADS, Provenance::HeuristicPdf, 0.0};
  return std::nullopt;
}

std::optional<Classification> classify_heuristic(const UriMention& mention, const PublisherDenylist& denylist) {
  return classify_heuristic(mention.uri, denylist);
}

Classification predict(const TrainedModel& model, std::string_view context, std::string_view uri) {
  double s = model.score(context, uri);
  return {s >= model.threshold ? Label::OADS : Label::NonOADS, Provenance::Learned, s};
}

Classification predict(const TrainedModel& model, const UriMention& mention) {
  return predict(model, mention.context, mention.uri);
}

Classification classify_hybrid(const UriMention& mention, const LearnedClassifier& learned,
                               const PublisherDenylist& denylist) {
  if (auto h = classify_heuristic(mention, denylist)) return *h;
  return learned(mention);
}

Classification classify_hybrid(const UriMention& mention, const TrainedModel& model,
                               const PublisherDenylist& denylist) {
  return classify_hybrid(mention, [&](const UriMention& m) { return predict(model, m); }, denylist);
}

double Metrics::accuracy() const { return ratio(true_positive + true_negative, total()); }

LabelMetrics Metrics::oads() const { return label_metrics(true_positive, false_positive, false_negative); }

LabelMetrics Metrics::non_oads() const { return label_metrics(true_negative, false_negative, false_positive); }

Metrics score_predictions(const std::vector<Label>& truth, const std::vector<Label>& predicted) {
  if (truth.size() != predicted.size()) throw DataError("score_predictions: length mismatch");
  Metrics m;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    bool actual = truth[i] == Label::OADS;
    bool guess = predicted[i] == Label::OADS;
    if (actual && guess) ++m.true_positive;
    else if (!actual && guess) ++m.false_positive;
    else if (!actual) ++m.true_negative;
    else ++m.false_negative;
  }
  return m;
}

Metrics evaluate(const TrainedModel& model, const std::vector<LabeledExample>& examples) {
  std::vector<Label> truth, predicted;
  for (const auto& e : examples) {
    truth.push_back(e.label);
    predicted.push_back(predict(model, e.context, e.uri).label);
  }
  return score_predictions(truth, predicted);
}

Metrics evaluate(const TrainedModel& model, const PublisherDenylist& denylist,
                 const std::vector<LabeledExample>& examples) {
  std::vector<Label> truth, predicted;
  for (const auto& e : examples) {
    UriMention m;
    m.uri = e.uri;
    m.context = e.context;
    truth.push_back(e.label);
    predicted.push_back(classify_hybrid(m, model, denylist).label);
  }
  return score_predictions(truth, predicted);
}

CrossValidation cross_validate(const std::vector<LabeledExample>& examples, const TrainingConfig& config,
                               std::size_t folds, const FeaturizerConfig& featurizer) {
  if (folds < 2 || folds > examples.size()) throw DataError("cross-validation needs 2 <= folds <= examples");

  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  // mt19937_64 output is fixed by the standard; std::shuffle is not.
  std::mt19937_64 rng(config.seed);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);

  CrossValidation cv;
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<LabeledExample> train_set, test_set;
    for (std::size_t i = 0; i < order.size(); ++i)
      (i % folds == f ? test_set : train_set).push_back(examples[order[i]]);
    auto model = train(train_set, config, featurizer);
    auto m = evaluate(model, test_set);
    cv.fold_accuracy.push_back(m.accuracy());
    accumulate(cv.pooled, m);
  }
  cv.mean_accuracy = std::accumulate(cv.fold_accuracy.begin(), cv.fold_accuracy.end(), 0.0) /
                     static_cast<double>(folds);
  return cv;
}

}  // namespace oadsmine
