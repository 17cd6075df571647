#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace oadsmine {

enum class ScopeReason {
  SchemeExcluded,
  LocalOrPrivateHost,
  PublicationLink,
  DoiExcluded,
  DoiAllowlisted,
  Accepted,
};

inline constexpr std::array<ScopeReason, 6> kAllScopeReasons = {
    ScopeReason::SchemeExcluded, ScopeReason::LocalOrPrivateHost, ScopeReason::PublicationLink,
    ScopeReason::DoiExcluded,    ScopeReason::DoiAllowlisted,     ScopeReason::Accepted};

std::string_view to_string(ScopeReason r);

struct ScopeVerdict {
  bool in_scope = false;
  ScopeReason reason = ScopeReason::SchemeExcluded;

  bool operator==(const ScopeVerdict&) const = default;
};

// IPv4 or IPv6 network in CIDR form. IPv4 networks are stored as
// IPv4-mapped IPv6 (::ffff:a.b.c.d) so one matcher covers both families.
class IpRange {
 public:
  // "10.0.0.0/8", "fe80::/10"; throws ConfigError on bad input.
  static IpRange parse(std::string_view cidr);

  bool contains(const std::array<std::uint8_t, 16>& addr) const;
  const std::string& text() const { return text_; }

 private:
  std::array<std::uint8_t, 16> network_{};
  int prefix_ = 0;
  std::string text_;
};

// Parses a dotted-quad, an IPv6 address, or a bracketed IPv6 literal.
std::optional<std::array<std::uint8_t, 16>> parse_ip(std::string_view host);

struct ScopePolicy {
  std::vector<std::string> allowed_schemes;
  std::vector<std::string> publication_hosts;   // matched on whole host labels
  std::vector<std::string> doi_allow_prefixes;  // DOI registrant prefixes, e.g. "10.5281"
  std::vector<IpRange> private_ranges;
  std::vector<std::string> doi_hosts;           // hosts whose paths are DOIs

  // http/https; arXiv, Elsevier RefHub, Crossref Crossmark; Zenodo, Dryad,
  // figshare and OSF DOI prefixes; loopback, link-local and private ranges.
  static ScopePolicy defaults();

  // JSON object with any of the keys allowed_schemes, publication_hosts,
  // doi_allow_prefixes, private_ranges, doi_hosts. Missing keys keep their
  // defaults. Throws ConfigError.
  static ScopePolicy load(const std::filesystem::path& path);
  static ScopePolicy from_json_text(std::string_view json);
};

// True for localhost names and for any address in the policy's private ranges.
bool is_private_or_local(std::string_view host, const ScopePolicy& policy);
bool is_private_or_local(std::string_view host);

// First matching rule, in order: scheme, local/private host, publication
// host, DOI policy, accepted. Unparseable URIs are SchemeExcluded.
ScopeVerdict is_in_scope(std::string_view uri, const ScopePolicy& policy);

}  // namespace oadsmine
