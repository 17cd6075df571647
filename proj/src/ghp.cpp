#include "oadsmine/ghp.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oadsmine/error.hpp"
#include "oadsmine/uri.hpp"

namespace oadsmine {

std::string_view to_string(Platform p) {
  switch (p) {
    case Platform::GitHub: return "GitHub";
    case Platform::GitLab: return "GitLab";
    case Platform::SourceForge: return "SourceForge";
    case Platform::Bitbucket: return "Bitbucket";
  }
  return "?";
}

std::string_view to_string(Category c) {
  switch (c) {
    case Category::GHP: return "GHP";
    case Category::NonGhpOADS: return "NonGhpOADS";
    case Category::NonOADS: return "NonOADS";
  }
  return "?";
}

std::string_view to_string(CategoryPolicy p) {
  return p == CategoryPolicy::GhpForcesOads ? "ghp-forces-oads" : "classifier-decides";
}

std::optional<CategoryPolicy> parse_category_policy(std::string_view s) {
  if (s == "ghp-forces-oads") return CategoryPolicy::GhpForcesOads;
  if (s == "classifier-decides") return CategoryPolicy::ClassifierDecides;
  return std::nullopt;
}

bool HostRule::matches(std::string_view host) const {
  switch (kind) {
    case Kind::Exact: return host == value;
    case Kind::Suffix: return host_matches_domain(host, value);
    case Kind::FirstLabel: return host.substr(0, host.find('.')) == value && host.find('.') != std::string_view::npos;
  }
  return false;
}

HostRule HostRule::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ConfigError("host rule needs kind:value, got '" + std::string(text) + "'");
  auto kind = text.substr(0, colon);
  std::string value = ascii_lower(text.substr(colon + 1));
  while (!value.empty() && value.front() == '.') value.erase(value.begin());
  if (value.empty()) throw ConfigError("host rule has an empty value: '" + std::string(text) + "'");
  if (kind == "exact") return {Kind::Exact, value};
  if (kind == "suffix") return {Kind::Suffix, value};
  if (kind == "first-label") {
    if (value.find('.') != std::string::npos) throw ConfigError("first-label rule must be a single label");
    return {Kind::FirstLabel, value};
  }
  throw ConfigError("unknown host rule kind '" + std::string(kind) + "'");
}

std::string HostRule::to_string() const {
  switch (kind) {
    case Kind::Exact: return "exact:" + value;
    case Kind::Suffix: return "suffix:" + value;
    case Kind::FirstLabel: return "first-label:" + value;
  }
  return value;
}

GhpPatternSet GhpPatternSet::defaults() {
  GhpPatternSet s;
  s.rules(Platform::GitHub) = {HostRule::parse("suffix:github.com"), HostRule::parse("suffix:github.io")};
  s.rules(Platform::GitLab) = {HostRule::parse("exact:gitlab.com"), HostRule::parse("first-label:gitlab")};
  s.rules(Platform::SourceForge) = {HostRule::parse("suffix:sourceforge.net")};
  s.rules(Platform::Bitbucket) = {HostRule::parse("suffix:bitbucket.org")};
  return s;
}

GhpPatternSet GhpPatternSet::from_json_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("GHP patterns: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("GHP patterns must be a JSON object");
  GhpPatternSet s;
  for (const auto& [name, rules] : j.items()) {
    std::optional<Platform> platform;
    for (auto p : kAllPlatforms)
      if (ascii_lower(to_string(p)) == ascii_lower(name)) platform = p;
    if (!platform) throw ConfigError("GHP patterns: unknown platform '" + name + "'");
    if (!rules.is_array()) throw ConfigError("GHP patterns: rules for " + name + " must be an array");
    for (const auto& r : rules) {
      if (!r.is_string()) throw ConfigError("GHP patterns: rules must be strings");
      s.rules(*platform).push_back(HostRule::parse(r.get<std::string>()));
    }
  }
  return s;
}

GhpPatternSet GhpPatternSet::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open GHP patterns " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::optional<Platform> detect_ghp(std::string_view uri, const GhpPatternSet& patterns) {
  if (!parse_uri(uri)) return std::nullopt;
  std::string host = host_of(uri);
  for (auto p : kAllPlatforms)
    for (const auto& rule : patterns.rules(p))
      if (rule.matches(host)) return p;
  return std::nullopt;
}

Category categorize(std::string_view uri, const Classification& classification, const GhpPatternSet& patterns,
                    CategoryPolicy policy) {
  bool oads = classification.label == Label::OADS;
  if (detect_ghp(uri, patterns) && (policy == CategoryPolicy::GhpForcesOads || oads)) return Category::GHP;
  return oads ? Category::NonGhpOADS : Category::NonOADS;
}

}  // namespace oadsmine
