// Copyright 2026 the apnft authors
// SPDX-License-Identifier: Apache-2.0
//
// Replays every fixture case against a real contract and reports
// disagreements. Shared by the unit suite and the acceptance gate.

#pragma once

#include <string>
#include <vector>

#include "apnft/ledger.hpp"

namespace testutil {

inline apnft::contract_policy policy_from(const apnft::json& flags) {
  return {flags.at("tradeable").get<bool>(), flags.at("transferable").get<bool>(),
          flags.at("hidden_metadata").get<bool>(), flags.at("cross_chain").get<bool>()};
}

// Returns one line per mismatch; empty means the contract agrees with the
// fixture on all cases.
inline std::vector<std::string> check_policy_matrix(const apnft::json& fixture) {
  using apnft::json;
  constexpr const char* kAuthority = "sync-authority";
  constexpr const char* kHolder = "holder";
  constexpr const char* kAddr = "0xabababababababababababababababababababab";

  std::vector<std::string> mismatches;

  for (const auto& [name, flags] : fixture.at("presets").items()) {
    if (apnft::policy_preset(name) != policy_from(flags))
      mismatches.push_back("preset " + name + " flags disagree with the fixture");
  }

  for (const auto& c : fixture.at("cases")) {
    auto preset = c.at("preset").get<std::string>();
    auto op = c.at("op").get<std::string>();
    auto sender_role = c.at("sender").get<std::string>();
    auto status = c.at("status").get<std::string>();
    auto expect = c.at("expect").get<std::string>();

    apnft::seq_clock clock;
    apnft::chain ch("sim:alpha");
    ch.submit(kAuthority, "", "deploy",
              json{{"policy", fixture.at("presets").at(preset)},
                   {"contract_addr", kAddr},
                   {"endpoint", "https://assets.example"}},
              clock);
    ch.submit(kAuthority, kAddr, "mint",
              json{{"token_id", "7"},
                   {"owner", kHolder},
                   {"status", status == "pending" ? "pending" : "active"}},
              clock);
    if (status == "locked") ch.submit(kAuthority, kAddr, "lock", json{{"token_id", "7"}}, clock);
    if (status == "burned") ch.submit(kAuthority, kAddr, "burn", json{{"token_id", "7"}}, clock);

    std::string sender = sender_role == "owner"      ? kHolder
                         : sender_role == "stranger" ? "mallory"
                                                     : kAuthority;
    json payload{{"token_id", "7"}};
    if (op == "trade" || op == "transfer") payload["to"] = "buyer";
    if (op == "trade") payload["payment"] = "100";
    if (op == "set_attribute") {
      payload["key"] = "note";
      payload["value"] = "x";
    }

    auto res = ch.submit(sender, kAddr, op, payload, clock);
    std::string got = res.accepted() ? "ok" : res.tx->reject_code;
    if (got != expect)
      mismatches.push_back(preset + "/" + op + "/" + sender_role + "/" + status + ": expected " +
                           expect + ", got " + got);
  }
  return mismatches;
}

}  // namespace testutil
