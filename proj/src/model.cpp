#include "oadsmine/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oadsmine/error.hpp"
#include "oadsmine/uri.hpp"

namespace oadsmine {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kFormatName = "oadsmine-linear-model";

struct SparseRow {
  std::vector<std::pair<std::size_t, double>> entries;
  double target = 0.0;
};

}  // namespace

std::string_view to_string(Label l) { return l == Label::OADS ? "OADS" : "NonOADS"; }

std::optional<Label> parse_label(std::string_view s) {
  std::string l = ascii_lower(s);
  if (l == "oads") return Label::OADS;
  if (l == "nonoads" || l == "non-oads" || l == "non_oads") return Label::NonOADS;
  return std::nullopt;
}

std::vector<LabeledExample> parse_labeled_examples(std::istream& in, const std::string& source_name) {
  std::vector<LabeledExample> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) throw ParseError(source_name, lineno, "expected label<TAB>uri<TAB>context");
    auto label = parse_label(std::string_view(line).substr(0, t1));
    if (!label) throw ParseError(source_name, lineno, "unknown label '" + line.substr(0, t1) + "'");
    std::string uri = line.substr(t1 + 1, t2 - t1 - 1);
    if (uri.empty()) throw ParseError(source_name, lineno, "empty uri");
    out.push_back({line.substr(t2 + 1), std::move(uri), *label});
  }
  return out;
}

std::vector<LabeledExample> load_labeled_examples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open labeled examples " + path.string());
  return parse_labeled_examples(in, path.string());
}

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

std::size_t TrainedModel::index_of(std::string_view token) const {
  auto it = std::lower_bound(vocabulary.begin(), vocabulary.end(), token);
  if (it == vocabulary.end() || *it != token) return vocabulary.size();
  return static_cast<std::size_t>(it - vocabulary.begin());
}

double TrainedModel::decision_value(const FeatureVector& fv) const {
  double z = bias;
  for (const auto& [token, value] : fv.named) {
    std::size_t i = index_of(token);
    if (i < vocabulary.size()) z += weights[i] * value;
  }
  for (std::size_t s = 0; s < kUriFeatureCount; ++s) z += weights[vocabulary.size() + s] * fv.uri_slots[s];
  return z;
}

double TrainedModel::score(const FeatureVector& fv) const { return sigmoid(decision_value(fv)); }

double TrainedModel::score(std::string_view context, std::string_view uri) const {
  return score(featurize(context, uri, featurizer));
}

std::string TrainedModel::serialize() const {
  ordered_json j;
  j["format"] = kFormatName;
  j["format_version"] = format_version;
  j["featurizer"] = {{"context_tokens", featurizer.context_tokens},
                     {"host_token", featurizer.host_token},
                     {"tld_token", featurizer.tld_token},
                     {"path_flags", featurizer.path_flags},
                     {"scheme_flag", featurizer.scheme_flag},
                     {"uri_placeholder", featurizer.uri_placeholder}};
  j["training"] = {{"learning_rate", training.learning_rate},
                   {"iterations", training.iterations},
                   {"l2", training.l2},
                   {"seed", training.seed},
                   {"threshold", training.threshold}};
  j["threshold"] = threshold;
  j["bias"] = bias;
  ordered_json slots = ordered_json::array();
  for (std::size_t s = 0; s < kUriFeatureCount; ++s) slots.push_back(uri_slot_name(s));
  j["uri_features"] = slots;
  j["vocabulary"] = vocabulary;
  j["weights"] = weights;
  return j.dump(1) + "\n";
}

TrainedModel TrainedModel::deserialize(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("model file: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kFormatName) throw DataError("model file: unknown format");
    TrainedModel m;
    m.format_version = j.at("format_version").get<int>();
    if (m.format_version != kModelFormatVersion)
      throw DataError("model file: unsupported format_version " + std::to_string(m.format_version));

    const auto& f = j.at("featurizer");
    m.featurizer.context_tokens = f.at("context_tokens").get<bool>();
    m.featurizer.host_token = f.at("host_token").get<bool>();
    m.featurizer.tld_token = f.at("tld_token").get<bool>();
    m.featurizer.path_flags = f.at("path_flags").get<bool>();
    m.featurizer.scheme_flag = f.at("scheme_flag").get<bool>();
    m.featurizer.uri_placeholder = f.at("uri_placeholder").get<std::string>();

    const auto& t = j.at("training");
    m.training.learning_rate = t.at("learning_rate").get<double>();
    m.training.iterations = t.at("iterations").get<int>();
    m.training.l2 = t.at("l2").get<double>();
    m.training.seed = t.at("seed").get<std::uint64_t>();
    m.training.threshold = t.at("threshold").get<double>();

    m.threshold = j.at("threshold").get<double>();
    m.bias = j.at("bias").get<double>();
    m.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
    m.weights = j.at("weights").get<std::vector<double>>();

    auto slots = j.at("uri_features").get<std::vector<std::string>>();
    if (slots.size() != kUriFeatureCount) throw DataError("model file: URI feature layout mismatch");
    for (std::size_t s = 0; s < kUriFeatureCount; ++s)
      if (slots[s] != uri_slot_name(s)) throw DataError("model file: URI feature layout mismatch at " + slots[s]);
    if (m.weights.size() != m.vocabulary.size() + kUriFeatureCount)
      throw DataError("model file: weights length does not match vocabulary plus URI features");
    if (std::adjacent_find(m.vocabulary.begin(), m.vocabulary.end(),
                           [](const auto& a, const auto& b) { return !(a < b); }) != m.vocabulary.end())
      throw DataError("model file: vocabulary must be sorted and unique");
    if (!(m.threshold > 0.0 && m.threshold < 1.0)) throw DataError("model file: threshold outside (0,1)");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("model file: ") + e.what());
  }
}

void TrainedModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write model " + path.string());
  out << serialize();
  if (!out) throw ConfigError("write failed for model " + path.string());
}

TrainedModel TrainedModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open model " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return deserialize(ss.str());
}

TrainedModel train(const std::vector<LabeledExample>& examples, const TrainingConfig& config,
                   const FeaturizerConfig& featurizer) {
  if (examples.empty()) throw DataError("training set is empty");
  bool has_pos = std::any_of(examples.begin(), examples.end(), [](const auto& e) { return e.label == Label::OADS; });
  bool has_neg = std::any_of(examples.begin(), examples.end(), [](const auto& e) { return e.label == Label::NonOADS; });
  if (!has_pos || !has_neg) throw DataError("training set needs at least one OADS and one NonOADS example");
  if (!(config.threshold > 0.0 && config.threshold < 1.0)) throw DataError("threshold must lie in (0,1)");
  if (config.iterations < 0) throw DataError("iteration count must be non-negative");

  std::vector<FeatureVector> features;
  features.reserve(examples.size());
  std::map<std::string, std::size_t> vocab;
  for (const auto& e : examples) {
    features.push_back(featurize(e.context, e.uri, featurizer));
    for (const auto& [token, value] : features.back().named) vocab.emplace(token, 0);
  }

  TrainedModel m;
  m.featurizer = featurizer;
  m.training = config;
  m.threshold = config.threshold;
  m.vocabulary.reserve(vocab.size());
  for (auto& [token, index] : vocab) {
    index = m.vocabulary.size();
    m.vocabulary.push_back(token);
  }
  const std::size_t dim = m.vocabulary.size() + kUriFeatureCount;
  m.weights.assign(dim, 0.0);

  std::vector<SparseRow> rows(examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    for (const auto& [token, value] : features[i].named) rows[i].entries.emplace_back(vocab.at(token), value);
    for (std::size_t s = 0; s < kUriFeatureCount; ++s)
      if (features[i].uri_slots[s] != 0.0) rows[i].entries.emplace_back(m.vocabulary.size() + s, features[i].uri_slots[s]);
    rows[i].target = examples[i].label == Label::OADS ? 1.0 : 0.0;
  }

  const double inv_n = 1.0 / static_cast<double>(rows.size());
  std::vector<double> grad(dim);
  for (int it = 0; it < config.iterations; ++it) {
    for (std::size_t k = 0; k < dim; ++k) grad[k] = config.l2 * m.weights[k];
    double grad_bias = 0.0;
    for (const auto& row : rows) {
      double z = m.bias;
      for (const auto& [k, v] : row.entries) z += m.weights[k] * v;
      double err = (sigmoid(z) - row.target) * inv_n;
      for (const auto& [k, v] : row.entries) grad[k] += err * v;
      grad_bias += err;
    }
    for (std::size_t k = 0; k < dim; ++k) m.weights[k] -= config.learning_rate * grad[k];
    m.bias -= config.learning_rate * grad_bias;
  }
  return m;
}

}  // namespace oadsmine
