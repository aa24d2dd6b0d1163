// Copyright 2026 the apnft authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Identifier grammars. Everything that crosses a module boundary is keyed
// by one of these, so the constructors validate eagerly and the string
// forms are canonical (addresses lowercased, token ids shortest decimal).

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "apnft/errors.hpp"

namespace apnft {

namespace detail {

inline bool is_lower_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

inline bool is_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

inline bool is_hex_digit(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

}  // namespace detail

// Chain id: lower-case namespace, ':', reference of [-_a-zA-Z0-9]+.
// Examples: "eip155:1", "sim:alpha".
inline void validate_chain_id(std::string_view s) {
  auto colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == s.size())
    throw error(errc::malformed_identifier, "chain id: " + std::string(s));
  for (char c : s.substr(0, colon))
    if (!detail::is_lower_alnum(c))
      throw error(errc::malformed_identifier, "chain id namespace: " + std::string(s));
  for (char c : s.substr(colon + 1))
    if (!(detail::is_alnum(c) || c == '-' || c == '_'))
      throw error(errc::malformed_identifier, "chain id reference: " + std::string(s));
}

// Contract address: 0x + 40 hex digits, canonically lower case.
inline std::string canonical_address(std::string_view s) {
  if (s.size() != 42 || s[0] != '0' || s[1] != 'x')
    throw error(errc::malformed_identifier, "contract address: " + std::string(s));
  std::string out(s);
  for (std::size_t i = 2; i < out.size(); ++i) {
    if (!detail::is_hex_digit(out[i]))
      throw error(errc::malformed_identifier, "contract address: " + std::string(s));
    if (out[i] >= 'A' && out[i] <= 'F') out[i] = static_cast<char>(out[i] - 'A' + 'a');
  }
  return out;
}

// Token id: non-negative decimal integer of unbounded width, no leading
// zeros ("0" itself is fine).
inline void validate_token_id(std::string_view s) {
  if (s.empty()) throw error(errc::malformed_identifier, "empty token id");
  if (s.size() > 1 && s[0] == '0')
    throw error(errc::malformed_identifier, "token id has leading zero: " + std::string(s));
  for (char c : s)
    if (c < '0' || c > '9')
      throw error(errc::malformed_identifier, "token id: " + std::string(s));
}

// Asset id: namespace ':' serial, both of [A-Za-z0-9._-]+.
// Examples: "gallery:human-one", "passport:P-1042".
inline void validate_asset_id(std::string_view s) {
  auto colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == s.size())
    throw error(errc::malformed_identifier, "asset id: " + std::string(s));
  auto ok = [](std::string_view part) {
    for (char c : part)
      if (!(detail::is_alnum(c) || c == '.' || c == '_' || c == '-')) return false;
    return true;
  };
  if (!ok(s.substr(0, colon)) || !ok(s.substr(colon + 1)))
    throw error(errc::malformed_identifier, "asset id: " + std::string(s));
}

inline std::string asset_namespace(std::string_view asset_id) {
  return std::string(asset_id.substr(0, asset_id.find(':')));
}

// Globally unique NFT reference: chain / contract / token.
struct nft_id {
  std::string chain_id;
  std::string contract_addr;
  std::string token_id;

  nft_id() = default;
  nft_id(std::string_view chain, std::string_view contract, std::string_view token)
      : chain_id(chain), contract_addr(canonical_address(contract)), token_id(token) {
    validate_chain_id(chain_id);
    validate_token_id(token_id);
  }

  std::string str() const { return chain_id + "/" + contract_addr + "/" + token_id; }

  friend auto operator<=>(const nft_id&, const nft_id&) = default;
};

// Parses "chain/0xaddr/token". The chain id grammar has no '/', so the
// first and last separators are unambiguous.
inline nft_id parse_nft_id(std::string_view s) {
  auto first = s.find('/');
  auto last = s.rfind('/');
  if (first == std::string_view::npos || first == last)
    throw error(errc::malformed_identifier, "nft id: " + std::string(s));
  return nft_id(s.substr(0, first), s.substr(first + 1, last - first - 1), s.substr(last + 1));
}

}  // namespace apnft
