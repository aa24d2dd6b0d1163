// Copyright 2026 the apnft authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace apnft {

enum class errc {
  malformed_identifier,
  invalid_utf8,
  duplicate_key,
  unsupported_value,
  duplicate_chain,
  unknown_chain,
  unknown_contract,
  cursor_out_of_range,
  corrupt_snapshot,
  not_authorized,
  token_exists,
  unknown_token,
  policy_violation,
  not_owner,
  token_locked,
  token_burned,
  already_burned,
  wrong_status,
  binding_conflict,
  not_found,
  access_denied,
  unknown_credential,
  duplicate_asset,
  not_under_custody,
  already_delivered,
  wrong_recipient,
  not_burned,
  asset_already_bound,
  order_violation,
  session_open,
  token_not_active,
  unknown_asset,
  journal_corrupt,
  bad_scenario,
  invalid_argument,
};

constexpr std::string_view to_string(errc c) {
  switch (c) {
    case errc::malformed_identifier: return "malformed_identifier";
    case errc::invalid_utf8: return "invalid_utf8";
    case errc::duplicate_key: return "duplicate_key";
    case errc::unsupported_value: return "unsupported_value";
    case errc::duplicate_chain: return "duplicate_chain";
    case errc::unknown_chain: return "unknown_chain";
    case errc::unknown_contract: return "unknown_contract";
    case errc::cursor_out_of_range: return "cursor_out_of_range";
    case errc::corrupt_snapshot: return "corrupt_snapshot";
    case errc::not_authorized: return "not_authorized";
    case errc::token_exists: return "token_exists";
    case errc::unknown_token: return "unknown_token";
    case errc::policy_violation: return "policy_violation";
    case errc::not_owner: return "not_owner";
    case errc::token_locked: return "token_locked";
    case errc::token_burned: return "token_burned";
    case errc::already_burned: return "already_burned";
    case errc::wrong_status: return "wrong_status";
    case errc::binding_conflict: return "binding_conflict";
    case errc::not_found: return "not_found";
    case errc::access_denied: return "access_denied";
    case errc::unknown_credential: return "unknown_credential";
    case errc::duplicate_asset: return "duplicate_asset";
    case errc::not_under_custody: return "not_under_custody";
    case errc::already_delivered: return "already_delivered";
    case errc::wrong_recipient: return "wrong_recipient";
    case errc::not_burned: return "not_burned";
    case errc::asset_already_bound: return "asset_already_bound";
    case errc::order_violation: return "order_violation";
    case errc::session_open: return "session_open";
    case errc::token_not_active: return "token_not_active";
    case errc::unknown_asset: return "unknown_asset";
    case errc::journal_corrupt: return "journal_corrupt";
    case errc::bad_scenario: return "bad_scenario";
    case errc::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

inline errc errc_from_string(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(errc::invalid_argument); ++i) {
    auto c = static_cast<errc>(i);
    if (to_string(c) == s) return c;
  }
  throw std::invalid_argument("unknown error code: " + std::string(s));
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

// Thrown at an armed crash point to simulate process death. Deliberately not
// derived from apnft::error so recovery-path catch blocks never swallow it.
struct crash_injected : std::exception {
  explicit crash_injected(std::string p) : point(std::move(p)) {}
  const char* what() const noexcept override { return point.c_str(); }
  std::string point;
};

}  // namespace apnft
