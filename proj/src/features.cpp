#include "oadsmine/features.hpp"

#include "oadsmine/extraction.hpp"
#include "oadsmine/scope.hpp"
#include "oadsmine/uri.hpp"

namespace oadsmine {
namespace {

bool is_token_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}

template <typename F>
void for_each_token(std::string_view text, F&& f) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_token_char(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_token_char(text[j])) ++j;
    f(ascii_lower(text.substr(i, j - i)));
    i = j;
  }
}

std::string mask_uris(std::string_view context, const std::string& placeholder) {
  std::string out;
  std::size_t pos = 0;
  for (const auto& c : find_uri_candidates(context)) {
    out.append(context.substr(pos, c.begin - pos));
    out.append(" ").append(placeholder).append(" ");
    pos = c.trimmed_end;
  }
  out.append(context.substr(pos));
  return out;
}

}  // namespace

std::string uri_slot_name(std::size_t slot) {
  if (slot == kSlotHttps) return "scheme:https";
  if (slot == kSlotRootPath) return "path:root";
  return "path:" + std::string(kPathKeywords.at(slot - kSlotFirstKeyword));
}

FeatureVector featurize(std::string_view context, std::string_view uri, const FeaturizerConfig& config) {
  FeatureVector fv;
  if (config.context_tokens)
    for_each_token(mask_uris(context, config.uri_placeholder), [&](std::string tok) { fv.named[tok] += 1.0; });

  auto parsed = parse_uri(uri);
  if (!parsed) return fv;

  std::string host = host_of(uri);
  bool is_ip = parsed->host_is_ip_literal() || parse_ip(host).has_value();
  if (config.host_token) fv.named["host:" + host] += 1.0;
  if (config.tld_token && !is_ip) {
    auto dot = host.rfind('.');
    if (dot != std::string::npos && dot + 1 < host.size()) fv.named["tld:" + host.substr(dot + 1)] += 1.0;
  }

  if (config.scheme_flag && parsed->scheme == "https") fv.uri_slots[kSlotHttps] = 1.0;
  if (config.path_flags) {
    std::string path = percent_decode(parsed->path);
    if (path.empty() || path == "/") fv.uri_slots[kSlotRootPath] = 1.0;
    for_each_token(path, [&](const std::string& tok) {
      for (std::size_t k = 0; k < kPathKeywords.size(); ++k) {
        std::string_view kw = kPathKeywords[k];
        if (tok == kw || (tok.size() == kw.size() + 1 && tok.starts_with(kw) && tok.back() == 's'))
          fv.uri_slots[kSlotFirstKeyword + k] = 1.0;
      }
    });
  }
  return fv;
}

}  // namespace oadsmine
