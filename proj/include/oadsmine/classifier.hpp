#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oadsmine/extraction.hpp"
#include "oadsmine/model.hpp"

namespace oadsmine {

enum class Provenance { HeuristicPublisher, HeuristicPdf, Learned };

inline constexpr std::array<Provenance, 3> kAllProvenances = {Provenance::HeuristicPublisher,
                                                               Provenance::HeuristicPdf, Provenance::Learned};

std::string_view to_string(Provenance p);

struct Classification {
  Label label = Label::NonOADS;
  Provenance provenance = Provenance::Learned;
  double score = 0.0;  // OADS probability; 0 for heuristic verdicts

  bool operator==(const Classification&) const = default;
};

// Publisher hosts whose URIs are never data or software. Entries match the
// host or any subdomain of it.
class PublisherDenylist {
 public:
  PublisherDenylist() = default;
  explicit PublisherDenylist(std::vector<std::string> domains);

  // Springer, Wiley and SAGE domains.
  static PublisherDenylist defaults();

  // One domain per line; '#' starts a comment.
  static PublisherDenylist load(const std::filesystem::path& path);

  bool matches(std::string_view host) const;
  const std::vector<std::string>& domains() const { return domains_; }

 private:
  std::vector<std::string> domains_;
};

// True when the URI path (query and fragment excluded) ends in ".pdf",
// case-insensitively.
bool has_pdf_path(std::string_view uri);

// Publisher rule first, then the ".pdf" rule. nullopt defers to the model.
std::optional<Classification> classify_heuristic(std::string_view uri, const PublisherDenylist& denylist);
std::optional<Classification> classify_heuristic(const UriMention& mention, const PublisherDenylist& denylist);

Classification predict(const TrainedModel& model, std::string_view context, std::string_view uri);
Classification predict(const TrainedModel& model, const UriMention& mention);

using LearnedClassifier = std::function<Classification(const UriMention&)>;

// Heuristic verdict when one applies, otherwise the learned one. The learned
// classifier is not called for heuristic-decided mentions.
Classification classify_hybrid(const UriMention& mention, const LearnedClassifier& learned,
                               const PublisherDenylist& denylist);
Classification classify_hybrid(const UriMention& mention, const TrainedModel& model,
                               const PublisherDenylist& denylist);

struct LabelMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Confusion counts with OADS as the positive class.
struct Metrics {
  std::uint64_t true_positive = 0;
  std::uint64_t false_positive = 0;
  std::uint64_t true_negative = 0;
  std::uint64_t false_negative = 0;

  std::uint64_t total() const { return true_positive + false_positive + true_negative + false_negative; }
  double accuracy() const;
  LabelMetrics oads() const;
  LabelMetrics non_oads() const;
};

Metrics score_predictions(const std::vector<Label>& truth, const std::vector<Label>& predicted);

// Learned model alone.
Metrics evaluate(const TrainedModel& model, const std::vector<LabeledExample>& examples);
// Hybrid classifier.
Metrics evaluate(const TrainedModel& model, const PublisherDenylist& denylist,
                 const std::vector<LabeledExample>& examples);

struct CrossValidation {
  std::vector<double> fold_accuracy;
  double mean_accuracy = 0.0;
  Metrics pooled;
};

// Stratification-free k-fold split from a seeded shuffle of example indices.
CrossValidation cross_validate(const std::vector<LabeledExample>& examples, const TrainingConfig& config,
                               std::size_t folds, const FeaturizerConfig& featurizer = {});

}  // namespace oadsmine
