// oadsmine: mine scholarly article text for links to open-access data and
// software, classify them, and report their distribution over time and hosts.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "oadsmine/error.hpp"
#include "oadsmine/pipeline.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

oadsmine::YearMonth month_option(const std::string& text, const char* flag) {
  auto m = oadsmine::YearMonth::parse(text);
  if (!m) throw oadsmine::ConfigError(std::string(flag) + " expects YYYY-MM, got '" + text + "'");
  return *m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extract, classify and analyse URIs to open-access data and software in article text"};
  app.set_config("--config", "", "Read option values from an INI/TOML file; command-line flags win");
  app.require_subcommand(1);
  app.fallthrough();

  oadsmine::RunConfig cfg;
  std::string policy = "ghp-forces-oads";
  std::string window_start = cfg.window.first.to_string();
  std::string window_end = cfg.window.last.to_string();

  auto env = [](const char* name) { return std::string("OADSMINE_") + name; };
  app.add_option("--manifest", cfg.manifest, "Corpus manifest (id, version, YYYY-MM, path)")->envname(env("MANIFEST"));
  app.add_option("-o,--out", cfg.output_dir, "Output directory")->envname(env("OUT"))->capture_default_str();
  app.add_option("--policy", cfg.policy_file, "Scope policy JSON")->envname(env("POLICY"));
  app.add_option("--denylist", cfg.denylist_file, "Publisher denylist, one domain per line")->envname(env("DENYLIST"));
  app.add_option("--model", cfg.model_file, "Model file (read by report/evaluate/pipeline, written by train)")
      ->envname(env("MODEL"));
  app.add_option("--patterns", cfg.pattern_file, "GHP host pattern JSON")->envname(env("PATTERNS"));
  app.add_option("--mentions", cfg.mentions_file, "Mentions file produced by extract")->envname(env("MENTIONS"));
  app.add_option("--documents", cfg.documents_file, "Documents file (default: next to --mentions)")
      ->envname(env("DOCUMENTS"));
  app.add_option("--labeled", cfg.labeled_file, "Labeled examples: label<TAB>uri<TAB>context")->envname(env("LABELED"));
  app.add_option("--category-policy", policy, "ghp-forces-oads or classifier-decides")
      ->check(CLI::IsMember({"ghp-forces-oads", "classifier-decides"}))
      ->envname(env("CATEGORY_POLICY"))
      ->capture_default_str();
  app.add_flag("--dedup-per-doc", cfg.dedup_per_doc, "Count each URI once per document")->envname(env("DEDUP_PER_DOC"));
  app.add_option("--bin-width", cfg.bin_width, "Hostname-frequency histogram bin width")
      ->check(CLI::PositiveNumber)
      ->envname(env("BIN_WIDTH"))
      ->capture_default_str();
  app.add_option("--top-n", cfg.top_n, "Rows in top_hostnames.csv")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed recorded with runs and used for cross-validation folds")
      ->envname(env("SEED"))
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->envname(env("THREADS"))->capture_default_str();
  app.add_option("--window-start", window_start, "First corpus month")->capture_default_str();
  app.add_option("--window-end", window_end, "Last corpus month")->capture_default_str();
  app.add_option("--learning-rate", cfg.training.learning_rate)->capture_default_str();
  app.add_option("--iterations", cfg.training.iterations)->check(CLI::NonNegativeNumber)->capture_default_str();
  app.add_option("--l2", cfg.training.l2)->check(CLI::NonNegativeNumber)->capture_default_str();
  app.add_option("--threshold", cfg.training.threshold, "Decision threshold stored in the model")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--cv-folds", cfg.cv_folds, "Cross-validation folds reported by train (0 = off)")
      ->capture_default_str();

  auto* extract = app.add_subcommand("extract", "Extract URI mentions from the corpus");
  auto* train = app.add_subcommand("train", "Train the learned classifier on labeled examples");
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate the hybrid classifier on labeled examples");
  auto* report = app.add_subcommand("report", "Classify, scope and aggregate a mentions file into CSV reports");
  auto* pipeline = app.add_subcommand("pipeline", "extract followed by report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    cfg.category_policy = *oadsmine::parse_category_policy(policy);
    cfg.window = {month_option(window_start, "--window-start"), month_option(window_end, "--window-end")};
    if (cfg.window.last < cfg.window.first) throw oadsmine::ConfigError("--window-end precedes --window-start");

    if (*extract) {
      oadsmine::run_extract(cfg, std::cerr);
    } else if (*train) {
      oadsmine::run_train(cfg, std::cout);
    } else if (*evaluate) {
      oadsmine::run_evaluate(cfg, std::cout);
    } else if (*report) {
      oadsmine::run_report(cfg, std::cerr);
    } else if (*pipeline) {
      oadsmine::run_pipeline(cfg, std::cerr);
    }
  } catch (const oadsmine::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const oadsmine::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
