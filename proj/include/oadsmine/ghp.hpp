#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oadsmine/classifier.hpp"

namespace oadsmine {

enum class Platform { GitHub, GitLab, SourceForge, Bitbucket };

inline constexpr std::array<Platform, 4> kAllPlatforms = {Platform::GitHub, Platform::GitLab,
                                                          Platform::SourceForge, Platform::Bitbucket};

std::string_view to_string(Platform p);

// One host rule. All three kinds compare whole dot-separated labels.
struct HostRule {
  enum class Kind { Exact, Suffix, FirstLabel };
  Kind kind = Kind::Exact;
  std::string value;

  // exact: host == value; suffix: host == value or ends in "." + value;
  // first-label: the host's leftmost label == value.
  bool matches(std::string_view host) const;

  // "exact:github.com", "suffix:github.io", "first-label:gitlab"
  static HostRule parse(std::string_view text);
  std::string to_string() const;
};

class GhpPatternSet {
 public:
  // github.com and its subdomains, *.github.io; gitlab.com and any host whose
  // first label is "gitlab"; sourceforge.net and subdomains; bitbucket.org
  // and subdomains.
  static GhpPatternSet defaults();

  // JSON object mapping platform names to arrays of rule strings. Platforms
  // left out keep no rules. Throws ConfigError.
  static GhpPatternSet from_json_text(std::string_view json);
  static GhpPatternSet load(const std::filesystem::path& path);

  std::vector<HostRule>& rules(Platform p) { return rules_[static_cast<std::size_t>(p)]; }
  const std::vector<HostRule>& rules(Platform p) const { return rules_[static_cast<std::size_t>(p)]; }

 private:
  std::array<std::vector<HostRule>, 4> rules_;
};

// First platform, in GitHub, GitLab, SourceForge, Bitbucket order, with a
// rule matching the URI's host. nullopt for non-matching or unparseable URIs.
std::optional<Platform> detect_ghp(std::string_view uri, const GhpPatternSet& patterns);

enum class Category { GHP, NonGhpOADS, NonOADS };

inline constexpr std::array<Category, 3> kAllCategories = {Category::GHP, Category::NonGhpOADS, Category::NonOADS};

std::string_view to_string(Category c);

enum class CategoryPolicy {
  GhpForcesOads,      // any GHP match is GHP, whatever the classifier said
  ClassifierDecides,  // GHP only when the classifier also said OADS
};

std::string_view to_string(CategoryPolicy p);
std::optional<CategoryPolicy> parse_category_policy(std::string_view s);

Category categorize(std::string_view uri, const Classification& classification, const GhpPatternSet& patterns,
                    CategoryPolicy policy = CategoryPolicy::GhpForcesOads);

}  // namespace oadsmine
