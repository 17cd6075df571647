#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>

namespace oadsmine {

// Path words that hint at a data or software resource. A path token matches
// a keyword exactly or with a plural "s".
inline constexpr std::array<std::string_view, 10> kPathKeywords = {
    "code", "data", "dataset", "software", "download", "tool", "src", "release", "files", "archive"};

// Fixed URI feature slots: scheme flag, empty-path flag, one flag per keyword.
inline constexpr std::size_t kSlotHttps = 0;
inline constexpr std::size_t kSlotRootPath = 1;
inline constexpr std::size_t kSlotFirstKeyword = 2;
inline constexpr std::size_t kUriFeatureCount = kSlotFirstKeyword + kPathKeywords.size();

std::string uri_slot_name(std::size_t slot);

struct FeaturizerConfig {
  bool context_tokens = true;
  bool host_token = true;
  bool tld_token = true;
  bool path_flags = true;
  bool scheme_flag = true;
  std::string uri_placeholder = "__uri__";

  bool operator==(const FeaturizerConfig&) const = default;
};

// Sparse features for one (context, URI) pair. Named features are looked up
// in a model's vocabulary: context words as-is, plus "host:<host>" and
// "tld:<tld>". URI slots are dense and always present.
struct FeatureVector {
  std::map<std::string, double> named;
  std::array<double, kUriFeatureCount> uri_slots{};

  bool operator==(const FeatureVector&) const = default;
};

// Lowercased word counts from the context with every URI in it replaced by
// the placeholder token, plus lexical features of `uri`.
FeatureVector featurize(std::string_view context, std::string_view uri, const FeaturizerConfig& config);

}  // namespace oadsmine
