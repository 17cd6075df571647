#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oadsmine/features.hpp"

namespace oadsmine {

enum class Label { OADS, NonOADS };

std::string_view to_string(Label l);

// Accepts "OADS" and "NonOADS"/"non-OADS", case-insensitively.
std::optional<Label> parse_label(std::string_view s);

struct LabeledExample {
  std::string context;
  std::string uri;
  Label label = Label::NonOADS;
};

// Reads `label<TAB>uri<TAB>context` records; '#' lines and blank lines are
// skipped. Throws ParseError with the line number.
std::vector<LabeledExample> parse_labeled_examples(std::istream& in, const std::string& source_name);
std::vector<LabeledExample> load_labeled_examples(const std::filesystem::path& path);

struct TrainingConfig {
  double learning_rate = 0.1;
  int iterations = 500;
  double l2 = 1e-3;
  std::uint64_t seed = 42;  // drives cross-validation fold assignment
  double threshold = 0.5;

  bool operator==(const TrainingConfig&) const = default;
};

inline constexpr int kModelFormatVersion = 1;

// L2-regularised logistic regression over a vocabulary of named features and
// the fixed URI slots. Weights are laid out as [vocabulary..., uri slots...].
class TrainedModel {
 public:
  int format_version = kModelFormatVersion;
  FeaturizerConfig featurizer;
  TrainingConfig training;
  std::vector<std::string> vocabulary;  // sorted; position is the weight index
  std::vector<double> weights;
  double bias = 0.0;
  double threshold = 0.5;

  // Logit of the OADS probability; features outside the vocabulary are ignored.
  double decision_value(const FeatureVector& fv) const;
  double score(const FeatureVector& fv) const;
  double score(std::string_view context, std::string_view uri) const;

  std::size_t index_of(std::string_view token) const;  // vocabulary.size() when absent

  // Structured-text (JSON) container. serialize() is deterministic and
  // deserialize(serialize(m)) reproduces every double bit for bit.
  std::string serialize() const;
  static TrainedModel deserialize(std::string_view text);

  void save(const std::filesystem::path& path) const;
  static TrainedModel load(const std::filesystem::path& path);

  bool operator==(const TrainedModel&) const = default;
};

double sigmoid(double x);

// Full-batch gradient descent on mean logistic loss plus (l2/2)|w|^2, from
// zero weights, accumulating in example order. Throws DataError for empty or
// single-class input.
TrainedModel train(const std::vector<LabeledExample>& examples, const TrainingConfig& config,
                   const FeaturizerConfig& featurizer = {});

}  // namespace oadsmine
