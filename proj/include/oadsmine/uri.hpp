#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace oadsmine {

// Components of a hierarchical URI (`scheme://authority/path?query#fragment`).
// Component text is kept as written except the scheme, which is lowercased.
struct ParsedUri {
  std::string scheme;
  std::string userinfo;
  std::string host;  // IPv6 literals keep their brackets
  std::string port;  // digits only; empty when absent
  std::string path;
  std::string query;
  std::string fragment;

  bool host_is_ip_literal() const { return !host.empty() && host.front() == '['; }
};

// Returns nullopt for anything that is not `scheme://` followed by a
// well-formed authority with a non-empty host.
std::optional<ParsedUri> parse_uri(std::string_view uri);

// Lowercased host with the port removed. IPv6 literals are returned as
// written, brackets included. Throws DataError if the authority is unparseable.
std::string host_of(std::string_view uri);

std::string ascii_lower(std::string_view s);

// True when `host` equals `domain` or ends with "." + domain.
bool host_matches_domain(std::string_view host, std::string_view domain);

// Decodes %XX escapes; malformed escapes are copied through.
std::string percent_decode(std::string_view s);

}  // namespace oadsmine
