#include "oadsmine/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "oadsmine/error.hpp"
#include "oadsmine/records.hpp"
#include "oadsmine/report.hpp"

namespace oadsmine {
namespace {

using ordered_json = nlohmann::ordered_json;

// Runs f(begin, end) over contiguous chunks of [0, n) on up to `threads`
// threads (0 = hardware concurrency). The first exception is rethrown.
template <typename F>
void parallel_chunks(std::size_t n, std::size_t threads, F&& f) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    f(std::size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      std::size_t begin = t * chunk, end = std::min(n, begin + chunk);
      pool.emplace_back([&, t, begin, end] {
        try {
          f(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

ordered_json config_echo(const RunConfig& c) {
  return {{"manifest", c.manifest.string()},
          {"output_dir", c.output_dir.string()},
          {"policy_file", c.policy_file.string()},
          {"denylist_file", c.denylist_file.string()},
          {"model_file", c.model_file.string()},
          {"pattern_file", c.pattern_file.string()},
          {"mentions_file", c.mentions_file.string()},
          {"documents_file", c.documents_file.string()},
          {"labeled_file", c.labeled_file.string()},
          {"category_policy", std::string(to_string(c.category_policy))},
          {"dedup_per_doc", c.dedup_per_doc},
          {"bin_width", c.bin_width},
          {"top_n", c.top_n},
          {"seed", c.seed},
          {"window", {{"first", c.window.first.to_string()}, {"last", c.window.last.to_string()}}}};
}

ordered_json extract_json(const ExtractSummary& s) {
  return {{"manifest_entries", s.manifest_entries},
          {"superseded_versions", s.superseded_versions},
          {"out_of_window", s.out_of_window},
          {"documents_read", s.documents_read},
          {"skipped", s.skipped},
          {"skipped_ids", s.skipped_ids},
          {"mentions", s.mentions}};
}

ordered_json totals_json(const Analysis& a) {
  ordered_json provenance, scope, category;
  for (auto p : kAllProvenances) provenance[std::string(to_string(p))] = a.totals.provenance.count(p) ? a.totals.provenance.at(p) : 0;
  for (auto r : kAllScopeReasons) scope[std::string(to_string(r))] = a.totals.scope.count(r) ? a.totals.scope.at(r) : 0;
  for (auto c : kAllCategories) category[std::string(to_string(c))] = a.totals.category.count(c) ? a.totals.category.at(c) : 0;

  auto t = a.stats.totals();
  ordered_json j = {{"mentions", a.totals.mentions},
                    {"in_scope", a.totals.in_scope},
                    {"provenance", provenance},
                    {"scope", scope},
                    {"category", category},
                    {"corpus", {{"publications", t.publications},
                                {"uri_total", t.uri_total},
                                {"oads", t.oads},
                                {"non_oads", t.non_oads},
                                {"ghp", t.ghp},
                                {"non_ghp_oads", t.non_ghp_oads}}},
                    {"distinct_hostnames", a.stats.hostnames().counts.size()}};
  auto share = ghp_share_of_oads(t);
  j["ghp_share_of_oads_pct"] = share ? ordered_json(round_percent(*share)) : ordered_json(nullptr);
  if (auto d = dispersion_metrics(a.stats.hostnames())) {
    j["dispersion"] = {{"singleton_uri_share", d->singleton_uri_share},
                       {"gt5_uri_share", d->gt5_uri_share},
                       {"hostnames_over_1000", d->hostnames_over_1000}};
  } else {
    j["dispersion"] = nullptr;
  }
  return j;
}

std::string classified_tsv(const std::vector<ClassifiedMention>& classified) {
  std::string out = "# doc_id\tmonth\turi\tlabel\tprovenance\tscore\tscope\tcategory\n";
  for (const auto& c : classified) {
    out += c.mention.doc_id.to_string() + "\t" + c.mention.month.to_string() + "\t" + c.mention.uri + "\t" +
           std::string(to_string(c.classification.label)) + "\t" + std::string(to_string(c.classification.provenance)) +
           "\t" + fixed6(c.classification.score) + "\t" + std::string(to_string(c.scope.reason)) + "\t" +
           (c.category ? std::string(to_string(*c.category)) : std::string("-")) + "\n";
  }
  return out;
}

void write_extract_outputs(const RunConfig& config, const Extraction& ex) {
  std::filesystem::create_directories(config.output_dir);
  std::ostringstream mentions, documents;
  write_mentions(mentions, ex.mentions);
  write_documents(documents, ex.documents);
  write_file_atomic(config.output_dir / "mentions.tsv", mentions.str());
  write_file_atomic(config.output_dir / "documents.tsv", documents.str());
  ordered_json meta = {{"command", "extract"}, {"config", config_echo(config)}, {"extract", extract_json(ex.summary)}};
  write_file_atomic(config.output_dir / "extract.json", meta.dump(2) + "\n");
}

void write_report_outputs(const RunConfig& config, const Analysis& a, const std::string& command,
                          const ExtractSummary* extract) {
  write_reports(config.output_dir, a.stats, config.top_n);
  write_file_atomic(config.output_dir / "classified.tsv", classified_tsv(a.classified));
  ordered_json meta = {{"command", command}, {"config", config_echo(config)}};
  if (extract) meta["extract"] = extract_json(*extract);
  meta["report"] = totals_json(a);
  write_file_atomic(config.output_dir / "run.json", meta.dump(2) + "\n");
}

void log_totals(std::ostream& log, const Analysis& a) {
  log << "classify: " << a.totals.mentions << " mentions";
  for (const auto& [p, n] : a.totals.provenance) log << ", " << to_string(p) << "=" << n;
  log << "\nscope: " << a.totals.in_scope << " in scope";
  for (const auto& [r, n] : a.totals.scope) log << ", " << to_string(r) << "=" << n;
  log << "\ncategorize:";
  for (const auto& [c, n] : a.totals.category) log << " " << to_string(c) << "=" << n;
  log << "\n";
}

}  // namespace

Extraction extract_corpus(const CorpusManifest& manifest, const MonthWindow& window, std::size_t threads,
                          std::ostream* log) {
  Extraction ex;
  ex.summary.manifest_entries = manifest.entries.size();
  auto latest = select_latest_versions(manifest);
  ex.summary.superseded_versions = manifest.entries.size() - latest.entries.size();
  auto split = filter_window(latest, window);
  ex.summary.out_of_window = split.rejected;
  if (log && split.rejected > 0)
    *log << "warning: " << split.rejected << " document(s) outside " << window.first.to_string() << ".."
         << window.last.to_string() << " rejected\n";

  const auto& entries = split.kept.entries;
  std::vector<std::vector<UriMention>> per_doc(entries.size());
  std::vector<std::string> errors(entries.size());
  std::vector<char> ok(entries.size(), 0);
  parallel_chunks(entries.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        per_doc[i] = extract_uri_mentions(read_document(entries[i]));
        ok[i] = 1;
      } catch (const DataError& e) {
        errors[i] = e.what();
      }
    }
  });

  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!ok[i]) {
      ++ex.summary.skipped;
      ex.summary.skipped_ids.push_back(entries[i].id.to_string());
      if (log) *log << "warning: skipped " << errors[i] << "\n";
      continue;
    }
    ex.documents.push_back({entries[i].id, entries[i].month});
    for (auto& m : per_doc[i]) ex.mentions.push_back(std::move(m));
  }
  ex.summary.documents_read = ex.documents.size();
  ex.summary.mentions = ex.mentions.size();
  if (log)
    *log << "extract: " << ex.summary.manifest_entries << " manifest entries, " << ex.summary.documents_read
         << " documents read, " << ex.summary.skipped << " skipped, " << ex.summary.mentions << " mentions\n";
  return ex;
}

Resources Resources::load(const RunConfig& config) {
  Resources r;
  if (!config.policy_file.empty()) r.policy = ScopePolicy::load(config.policy_file);
  if (!config.denylist_file.empty()) r.denylist = PublisherDenylist::load(config.denylist_file);
  if (!config.pattern_file.empty()) r.patterns = GhpPatternSet::load(config.pattern_file);
  if (config.model_file.empty()) throw ConfigError("a model file is required (--model)");
  if (!std::filesystem::exists(config.model_file))
    throw ConfigError("model file not found: " + config.model_file.string());
  r.model = TrainedModel::load(config.model_file);
  return r;
}

std::vector<ClassifiedMention> classify_mentions(const std::vector<UriMention>& mentions, const Resources& resources,
                                                 CategoryPolicy policy, std::size_t threads) {
  std::vector<ClassifiedMention> out(mentions.size());
  parallel_chunks(mentions.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto& c = out[i];
      c.mention = mentions[i];
      c.classification = classify_hybrid(c.mention, resources.model, resources.denylist);
      c.scope = is_in_scope(c.mention.uri, resources.policy);
      if (c.scope.in_scope) c.category = categorize(c.mention.uri, c.classification, resources.patterns, policy);
    }
  });
  return out;
}

Analysis analyze(const std::vector<DocumentRecord>& documents, const std::vector<UriMention>& mentions,
                 const Resources& resources, const RunConfig& config) {
  Analysis a;
  a.classified = classify_mentions(config.dedup_per_doc ? dedup_per_document(mentions) : mentions, resources,
                                   config.category_policy, config.threads);

  std::vector<CategorizedMention> in_scope;
  for (const auto& c : a.classified) {
    ++a.totals.mentions;
    ++a.totals.provenance[c.classification.provenance];
    ++a.totals.scope[c.scope.reason];
    if (!c.category) continue;
    ++a.totals.in_scope;
    ++a.totals.category[*c.category];
    in_scope.push_back({c.mention.doc_id, c.mention.month, c.mention.uri, *c.category});
  }
  a.stats = build_stats(documents, in_scope, config.window, {config.bin_width, config.category_policy});
  return a;
}

ExtractSummary run_extract(const RunConfig& config, std::ostream& log) {
  if (config.manifest.empty()) throw ConfigError("a manifest is required (--manifest)");
  auto ex = extract_corpus(load_manifest(config.manifest), config.window, config.threads, &log);
  write_extract_outputs(config, ex);
  return ex.summary;
}

Analysis run_report(const RunConfig& config, std::ostream& log) {
  if (config.mentions_file.empty()) throw ConfigError("a mentions file is required (--mentions)");
  auto resources = Resources::load(config);
  auto mentions = load_mentions(config.mentions_file);

  auto documents_file = config.documents_file;
  if (documents_file.empty()) documents_file = config.mentions_file.parent_path() / "documents.tsv";
  std::vector<DocumentRecord> documents;
  if (std::filesystem::exists(documents_file)) {
    documents = load_documents(documents_file);
  } else {
    log << "warning: " << documents_file.string()
        << " not found; publication counts cover only documents with mentions\n";
    std::set<DocumentId> seen;
    for (const auto& m : mentions)
      if (seen.insert(m.doc_id).second) documents.push_back({m.doc_id, m.month});
  }

  auto a = analyze(documents, mentions, resources, config);
  log_totals(log, a);
  write_report_outputs(config, a, "report", nullptr);
  return a;
}

Analysis run_pipeline(const RunConfig& config, std::ostream& log) {
  if (config.manifest.empty()) throw ConfigError("a manifest is required (--manifest)");
  auto resources = Resources::load(config);
  auto ex = extract_corpus(load_manifest(config.manifest), config.window, config.threads, &log);
  write_extract_outputs(config, ex);
  auto a = analyze(ex.documents, ex.mentions, resources, config);
  log_totals(log, a);
  write_report_outputs(config, a, "pipeline", &ex.summary);
  return a;
}

void print_metrics(std::ostream& out, const Metrics& m) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "examples %llu  accuracy %.4f\n", static_cast<unsigned long long>(m.total()),
                m.accuracy());
  out << buf;
  auto pos = m.oads(), neg = m.non_oads();
  std::snprintf(buf, sizeof buf, "OADS     precision %.4f  recall %.4f  f1 %.4f\n", pos.precision, pos.recall, pos.f1);
  out << buf;
  std::snprintf(buf, sizeof buf, "NonOADS  precision %.4f  recall %.4f  f1 %.4f\n", neg.precision, neg.recall, neg.f1);
  out << buf;
  out << "confusion (actual x predicted): OADS->OADS " << m.true_positive << ", OADS->NonOADS " << m.false_negative
      << ", NonOADS->OADS " << m.false_positive << ", NonOADS->NonOADS " << m.true_negative << "\n";
}

TrainOutcome run_train(const RunConfig& config, std::ostream& out) {
  if (config.labeled_file.empty()) throw ConfigError("a labeled example file is required (--labeled)");
  if (config.model_file.empty()) throw ConfigError("an output model path is required (--model)");
  auto examples = load_labeled_examples(config.labeled_file);
  TrainingConfig tc = config.training;
  tc.seed = config.seed;

  TrainOutcome outcome{train(examples, tc), {}, std::nullopt};
  outcome.training_metrics = evaluate(outcome.model, examples);
  if (config.cv_folds > 0) outcome.cross_validation = cross_validate(examples, tc, config.cv_folds);

  if (!config.model_file.parent_path().empty()) std::filesystem::create_directories(config.model_file.parent_path());
  write_file_atomic(config.model_file, outcome.model.serialize());

  out << "trained on " << examples.size() << " examples, vocabulary " << outcome.model.vocabulary.size() << "\n";
  out << "training-set evaluation:\n";
  print_metrics(out, outcome.training_metrics);
  if (outcome.cross_validation) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu-fold cross-validation accuracy %.4f\n", config.cv_folds,
                  outcome.cross_validation->mean_accuracy);
    out << buf;
  }
  return outcome;
}

Metrics run_evaluate(const RunConfig& config, std::ostream& out) {
  if (config.labeled_file.empty()) throw ConfigError("a labeled example file is required (--labeled)");
  auto resources = Resources::load(config);
  auto examples = load_labeled_examples(config.labeled_file);
  auto m = evaluate(resources.model, resources.denylist, examples);
  print_metrics(out, m);
  return m;
}

}  // namespace oadsmine
