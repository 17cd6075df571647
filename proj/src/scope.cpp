#include "oadsmine/scope.hpp"

#include <arpa/inet.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oadsmine/error.hpp"
#include "oadsmine/uri.hpp"

namespace oadsmine {
namespace {

using Address = std::array<std::uint8_t, 16>;

std::vector<std::string> string_list(const nlohmann::json& j, const char* key) {
  if (!j.at(key).is_array()) throw ConfigError(std::string("scope policy: '") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_string()) throw ConfigError(std::string("scope policy: '") + key + "' entries must be strings");
    out.push_back(ascii_lower(v.get<std::string>()));
  }
  return out;
}

bool contains(const std::vector<std::string>& v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

std::string_view to_string(ScopeReason r) {
  switch (r) {
    case ScopeReason::SchemeExcluded: return "SchemeExcluded";
    case ScopeReason::LocalOrPrivateHost: return "LocalOrPrivateHost";
    case ScopeReason::PublicationLink: return "PublicationLink";
    case ScopeReason::DoiExcluded: return "DoiExcluded";
    case ScopeReason::DoiAllowlisted: return "DoiAllowlisted";
    case ScopeReason::Accepted: return "Accepted";
  }
  return "?";
}

std::optional<Address> parse_ip(std::string_view host) {
  if (host.size() >= 2 && host.front() == '[' && host.back() == ']') host = host.substr(1, host.size() - 2);
  // Zone identifiers ("fe80::1%eth0") do not change the range.
  if (auto pct = host.find('%'); pct != std::string_view::npos) host = host.substr(0, pct);
  std::string h(host);
  Address addr{};
  in_addr v4{};
  if (inet_pton(AF_INET, h.c_str(), &v4) == 1) {
    addr[10] = 0xff;
    addr[11] = 0xff;
    const auto* b = reinterpret_cast<const std::uint8_t*>(&v4.s_addr);
    std::copy(b, b + 4, addr.begin() + 12);
    return addr;
  }
  in6_addr v6{};
  if (inet_pton(AF_INET6, h.c_str(), &v6) == 1) {
    std::copy(v6.s6_addr, v6.s6_addr + 16, addr.begin());
    return addr;
  }
  return std::nullopt;
}

IpRange IpRange::parse(std::string_view cidr) {
  auto slash = cidr.find('/');
  if (slash == std::string_view::npos) throw ConfigError("IP range lacks a prefix length: " + std::string(cidr));
  auto addr_text = cidr.substr(0, slash);
  auto len_text = cidr.substr(slash + 1);
  auto addr = parse_ip(addr_text);
  if (!addr || len_text.empty() || len_text.size() > 3 ||
      !std::all_of(len_text.begin(), len_text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ConfigError("bad IP range: " + std::string(cidr));
  int len = std::stoi(std::string(len_text));
  bool v4 = addr_text.find(':') == std::string_view::npos;
  if (len > (v4 ? 32 : 128)) throw ConfigError("bad prefix length in IP range: " + std::string(cidr));

  IpRange r;
  r.network_ = *addr;
  r.prefix_ = v4 ? len + 96 : len;
  r.text_ = std::string(cidr);
  return r;
}

bool IpRange::contains(const Address& addr) const {
  int bits = prefix_;
  for (std::size_t i = 0; i < 16 && bits > 0; ++i, bits -= 8) {
    std::uint8_t mask = bits >= 8 ? 0xff : static_cast<std::uint8_t>(0xff << (8 - bits));
    if ((addr[i] & mask) != (network_[i] & mask)) return false;
  }
  return true;
}

ScopePolicy ScopePolicy::defaults() {
  ScopePolicy p;
  p.allowed_schemes = {"http", "https"};
  p.publication_hosts = {"arxiv.org", "refhub.elsevier.com", "crossmark.crossref.org"};
  // Zenodo, Dryad, figshare, Open Science Framework
  p.doi_allow_prefixes = {"10.5281", "10.5061", "10.6084", "10.17605"};
  for (const char* r : {"127.0.0.0/8", "169.254.0.0/16", "10.0.0.0/8", "172.16.0.0/12", "192.168.0.0/16",
                        "::1/128", "fe80::/10", "fc00::/7"})
    p.private_ranges.push_back(IpRange::parse(r));
  p.doi_hosts = {"doi.org", "dx.doi.org"};
  return p;
}

ScopePolicy ScopePolicy::from_json_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("scope policy: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("scope policy must be a JSON object");

  ScopePolicy p = defaults();
  if (j.contains("allowed_schemes")) p.allowed_schemes = string_list(j, "allowed_schemes");
  if (j.contains("publication_hosts")) p.publication_hosts = string_list(j, "publication_hosts");
  if (j.contains("doi_allow_prefixes")) p.doi_allow_prefixes = string_list(j, "doi_allow_prefixes");
  if (j.contains("doi_hosts")) p.doi_hosts = string_list(j, "doi_hosts");
  if (j.contains("private_ranges")) {
    p.private_ranges.clear();
    for (const auto& r : string_list(j, "private_ranges")) p.private_ranges.push_back(IpRange::parse(r));
  }
  return p;
}

ScopePolicy ScopePolicy::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scope policy " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

bool is_private_or_local(std::string_view host, const ScopePolicy& policy) {
  std::string h = ascii_lower(host);
  if (!h.empty() && h.back() == '.') h.pop_back();
  if (h == "localhost" || h == "localhost.localdomain" || h.ends_with(".localhost")) return true;
  auto addr = parse_ip(h);
  if (!addr) return false;
  return std::any_of(policy.private_ranges.begin(), policy.private_ranges.end(),
                     [&](const IpRange& r) { return r.contains(*addr); });
}

bool is_private_or_local(std::string_view host) {
  static const ScopePolicy kDefaults = ScopePolicy::defaults();
  return is_private_or_local(host, kDefaults);
}

ScopeVerdict is_in_scope(std::string_view uri, const ScopePolicy& policy) {
  auto parsed = parse_uri(uri);
  if (!parsed || !contains(policy.allowed_schemes, parsed->scheme)) return {false, ScopeReason::SchemeExcluded};

  std::string host = host_of(uri);
  if (is_private_or_local(host, policy)) return {false, ScopeReason::LocalOrPrivateHost};

  for (const auto& pub : policy.publication_hosts)
    if (host_matches_domain(host, pub)) return {false, ScopeReason::PublicationLink};

  for (const auto& doi_host : policy.doi_hosts) {
    if (!host_matches_domain(host, doi_host)) continue;
    std::string doi = ascii_lower(percent_decode(parsed->path));
    while (!doi.empty() && doi.front() == '/') doi.erase(doi.begin());
    for (const auto& prefix : policy.doi_allow_prefixes)
      if (doi.starts_with(prefix + "/")) return {true, ScopeReason::DoiAllowlisted};
    return {false, ScopeReason::DoiExcluded};
  }
  return {true, ScopeReason::Accepted};
}

}  // namespace oadsmine
