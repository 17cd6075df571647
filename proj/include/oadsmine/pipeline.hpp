#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oadsmine/analytics.hpp"
#include "oadsmine/classifier.hpp"
#include "oadsmine/corpus.hpp"
#include "oadsmine/extraction.hpp"
#include "oadsmine/ghp.hpp"
#include "oadsmine/model.hpp"
#include "oadsmine/scope.hpp"

namespace oadsmine {

// Everything a CLI run needs. Empty config-file paths mean built-in defaults.
struct RunConfig {
  std::filesystem::path manifest;
  std::filesystem::path output_dir = "out";
  std::filesystem::path policy_file;
  std::filesystem::path denylist_file;
  std::filesystem::path model_file;
  std::filesystem::path pattern_file;
  std::filesystem::path mentions_file;   // report input
  std::filesystem::path documents_file;  // report input; defaults next to mentions_file
  std::filesystem::path labeled_file;    // train/evaluate input
  CategoryPolicy category_policy = CategoryPolicy::GhpForcesOads;
  bool dedup_per_doc = false;
  std::uint64_t bin_width = 50;
  std::size_t top_n = 15;
  std::uint64_t seed = 42;
  std::size_t threads = 1;
  MonthWindow window;
  TrainingConfig training;
  std::size_t cv_folds = 0;  // 0 disables cross-validation in train
};

struct ExtractSummary {
  std::size_t manifest_entries = 0;
  std::size_t superseded_versions = 0;
  std::size_t out_of_window = 0;
  std::size_t documents_read = 0;
  std::size_t skipped = 0;
  std::size_t mentions = 0;
  std::vector<std::string> skipped_ids;
};

struct Extraction {
  std::vector<DocumentRecord> documents;
  std::vector<UriMention> mentions;
  ExtractSummary summary;
};

// Latest-version selection, windowing, reading and mention extraction.
// Unreadable documents are skipped and counted. Output order follows the
// manifest regardless of `threads`.
Extraction extract_corpus(const CorpusManifest& manifest, const MonthWindow& window, std::size_t threads,
                          std::ostream* log = nullptr);

struct Resources {
  ScopePolicy policy = ScopePolicy::defaults();
  PublisherDenylist denylist = PublisherDenylist::defaults();
  GhpPatternSet patterns = GhpPatternSet::defaults();
  TrainedModel model;

  // Throws ConfigError when the model file is unset or missing.
  static Resources load(const RunConfig& config);
};

struct ClassifiedMention {
  UriMention mention;
  Classification classification;
  ScopeVerdict scope;
  std::optional<Category> category;  // set only for in-scope mentions
};

// Classify first, then scope, then categorise in-scope mentions.
std::vector<ClassifiedMention> classify_mentions(const std::vector<UriMention>& mentions, const Resources& resources,
                                                 CategoryPolicy policy, std::size_t threads);

struct RunTotals {
  std::size_t mentions = 0;
  std::size_t in_scope = 0;
  std::map<Provenance, std::size_t> provenance;
  std::map<ScopeReason, std::size_t> scope;
  std::map<Category, std::size_t> category;
};

struct Analysis {
  std::vector<ClassifiedMention> classified;
  CorpusStats stats;
  RunTotals totals;
};

Analysis analyze(const std::vector<DocumentRecord>& documents, const std::vector<UriMention>& mentions,
                 const Resources& resources, const RunConfig& config);

// Writes mentions.tsv, documents.tsv and extract.json into output_dir.
ExtractSummary run_extract(const RunConfig& config, std::ostream& log);

// Writes the CSV reports, classified.tsv and run.json into output_dir.
Analysis run_report(const RunConfig& config, std::ostream& log);

// extract followed by report without intermediate reloads; writes the
// outputs of both stages.
Analysis run_pipeline(const RunConfig& config, std::ostream& log);

struct TrainOutcome {
  TrainedModel model;
  Metrics training_metrics;
  std::optional<CrossValidation> cross_validation;
};

// Trains on labeled_file and writes model_file. Training metrics and
// optional cross-validation are printed to `out`.
TrainOutcome run_train(const RunConfig& config, std::ostream& out);

// Hybrid-classifier metrics of model_file on labeled_file, printed to `out`.
Metrics run_evaluate(const RunConfig& config, std::ostream& out);

void print_metrics(std::ostream& out, const Metrics& m);

}  // namespace oadsmine
