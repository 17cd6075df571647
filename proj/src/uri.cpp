#include "oadsmine/uri.hpp"

#include <algorithm>

#include "oadsmine/error.hpp"

namespace oadsmine {
namespace {

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_reg_name_char(char c) {
  if (is_alpha(c) || is_digit(c) || static_cast<unsigned char>(c) >= 0x80) return true;
  switch (c) {
    case '-': case '.': case '_': case '~': case '%':
    case '!': case '$': case '&': case '\'': case '(': case ')':
    case '*': case '+': case ',': case ';': case '=':
      return true;
    default:
      return false;
  }
}

int hex_value(char c) {
  if (is_digit(c)) return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

bool host_matches_domain(std::string_view host, std::string_view domain) {
  if (domain.empty()) return false;
  if (host == domain) return true;
  return host.size() > domain.size() && host.ends_with(domain) &&
         host[host.size() - domain.size() - 1] == '.';
}

std::string percent_decode(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size()) {
      int hi = hex_value(s[i + 1]), lo = hex_value(s[i + 2]);
      if (hi >= 0 && lo >= 0) {
        out.push_back(static_cast<char>(hi * 16 + lo));
        i += 2;
        continue;
      }
    }
    out.push_back(s[i]);
  }
  return out;
}

std::optional<ParsedUri> parse_uri(std::string_view uri) {
  auto colon = uri.find("://");
  if (colon == std::string_view::npos || colon == 0) return std::nullopt;
  std::string_view scheme = uri.substr(0, colon);
  if (!is_alpha(scheme.front())) return std::nullopt;
  for (char c : scheme)
    if (!(is_alpha(c) || is_digit(c) || c == '+' || c == '-' || c == '.')) return std::nullopt;

  ParsedUri out;
  out.scheme = ascii_lower(scheme);

  std::string_view rest = uri.substr(colon + 3);
  auto auth_end = rest.find_first_of("/?#");
  std::string_view authority = rest.substr(0, auth_end);
  std::string_view tail = auth_end == std::string_view::npos ? std::string_view{} : rest.substr(auth_end);

  if (auto at = authority.rfind('@'); at != std::string_view::npos) {
    out.userinfo = std::string(authority.substr(0, at));
    authority = authority.substr(at + 1);
  }

  std::string_view port;
  if (!authority.empty() && authority.front() == '[') {
    auto close = authority.find(']');
    if (close == std::string_view::npos || close == 1) return std::nullopt;
    for (char c : authority.substr(1, close - 1))
      if (!(hex_value(c) >= 0 || c == ':' || c == '.' || c == '%' || is_alpha(c))) return std::nullopt;
    out.host = std::string(authority.substr(0, close + 1));
    auto after = authority.substr(close + 1);
    if (!after.empty()) {
      if (after.front() != ':') return std::nullopt;
      port = after.substr(1);
    }
  } else {
    auto pc = authority.rfind(':');
    std::string_view host = authority.substr(0, pc);
    if (pc != std::string_view::npos) port = authority.substr(pc + 1);
    if (host.empty()) return std::nullopt;
    if (!std::all_of(host.begin(), host.end(), is_reg_name_char)) return std::nullopt;
    out.host = std::string(host);
  }
  if (!std::all_of(port.begin(), port.end(), is_digit)) return std::nullopt;
  out.port = std::string(port);

  auto q = tail.find('?');
  auto h = tail.find('#');
  if (q != std::string_view::npos && h != std::string_view::npos && h < q) q = std::string_view::npos;
  auto path_end = std::min(q, h);
  out.path = std::string(tail.substr(0, path_end));
  if (q != std::string_view::npos) out.query = std::string(tail.substr(q + 1, h == std::string_view::npos ? std::string_view::npos : h - q - 1));
  if (h != std::string_view::npos) out.fragment = std::string(tail.substr(h + 1));
  return out;
}

std::string host_of(std::string_view uri) {
  auto parsed = parse_uri(uri);
  if (!parsed) throw DataError("unparseable URI authority: " + std::string(uri));
  if (parsed->host_is_ip_literal()) return parsed->host;
  std::string host = ascii_lower(parsed->host);
  // FQDN form "example.org." names the same host
  if (host.size() > 1 && host.back() == '.') host.pop_back();
  return host;
}

}  // namespace oadsmine
