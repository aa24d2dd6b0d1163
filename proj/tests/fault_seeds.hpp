// Copyright 2026 the apnft authors
// SPDX-License-Identifier: Apache-2.0
//
// Nine deliberately corrupted snapshots, one per audit check. Each seed
// is crafted to trip its own check and nothing else, which pins both the
// sensitivity and the independence of the checks. Shared by the unit
// suite and the acceptance gate.

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "apnft/auditor.hpp"
#include "apnft/world.hpp"

namespace testutil {

using apnft::contract_policy;
using apnft::json;
using apnft::nft_id;
using apnft::world;

inline std::unique_ptr<world> audit_world() {
  auto w = std::make_unique<world>();
  w->chains().create_chain("sim:alpha");
  w->chains().create_chain("sim:beta");
  w->initialize_services();
  return w;
}

inline nft_id audit_deploy(world& w, const contract_policy& policy, const std::string& asset_id) {
  if (!w.engine().has_fleet("sim:alpha", policy))
    w.engine().deploy_pattern_contract("sim:alpha", policy, "https://meta.alpha/x");
  w.custody().place("creator", asset_id, "warehouse");
  return w.engine().deploy_asset("creator", asset_id, "sim:alpha", policy,
                                 json{{"name", "Piece"}});
}

inline json& chain_json(json& snapshot, const std::string& chain_id) {
  for (auto& c : snapshot.at("chains"))
    if (c.at("chain_id") == chain_id) return c;
  throw std::runtime_error("no such chain in snapshot: " + chain_id);
}

inline json& token_json(json& snapshot, const nft_id& id) {
  return chain_json(snapshot, id.chain_id)
      .at("contracts")
      .at(id.contract_addr)
      .at("tokens")
      .at(id.token_id);
}

struct seeded_fault {
  std::string check;         // the check that must flag it, e.g. "C1"
  std::string what;          // what was corrupted
  json snapshot;             // the corrupted world
  std::string must_mention;  // substring the violation must contain, when set
};

inline std::vector<seeded_fault> make_fault_seeds() {
  using apnft::kPolicyCrossChain;
  using apnft::kPolicyHidden;
  using apnft::kPolicyTradeOnly;
  using apnft::kPolicyZeroValue;
  using apnft::metadata_hash;
  using apnft::record_from_json;

  std::vector<seeded_fault> seeds;

  {
    auto w = audit_world();
    auto id = audit_deploy(*w, kPolicyHidden, "vault:doc");
    json s = w->snapshot_json();
    json clone = token_json(s, id);
    clone["token_id"] = "99";
    chain_json(s, "sim:alpha").at("contracts").at(id.contract_addr).at("tokens")["99"] = clone;
    s["repo"]["bindings"][nft_id(id.chain_id, id.contract_addr, "99").str()] = "vault:doc";
    seeds.push_back({"C1", "second live proxy for one asset", std::move(s), "vault:doc"});
  }

  {
    auto w = audit_world();
    auto id = audit_deploy(*w, kPolicyTradeOnly, "gallery:piece");
    json s = w->snapshot_json();
    token_json(s, id)["attributes"]["token_uri"] = "https://meta.alpha/x/999";
    seeds.push_back({"C2", "token_uri pointing past its record", std::move(s), id.str()});
  }

  {
    auto w = audit_world();
    auto id = audit_deploy(*w, kPolicyHidden, "vault:doc");
    json s = w->snapshot_json();
    std::string digest = token_json(s, id)["attributes"]["metadata_hash"];
    digest[0] = digest[0] == '0' ? '1' : '0';
    token_json(s, id)["attributes"]["metadata_hash"] = digest;
    seeds.push_back({"C3", "tampered on-chain hash anchor", std::move(s), ""});
  }

  {
    auto w = audit_world();
    audit_deploy(*w, kPolicyCrossChain, "gallery:piece");
    w->engine().deploy_pattern_contract("sim:beta", kPolicyCrossChain, "https://meta.beta/x");
    w->engine().cross_chain_transfer("creator", "gallery:piece", "sim:beta");
    json s = w->snapshot_json();
    json& asset = s["repo"]["assets"]["gallery:piece"];
    json& latest = asset["versions"][asset["versions"].size() - 1];
    latest["nft_history"].erase(latest["nft_history"].size() - 1);
    // Re-stamp the digest so only the missing history entry is wrong.
    asset["stored_digests"][asset["stored_digests"].size() - 1] =
        metadata_hash(record_from_json(latest));
    seeds.push_back({"C4", "forwarding burn missing from the asset history", std::move(s), ""});
  }

  {
    auto w = audit_world();
    auto id = audit_deploy(*w, kPolicyZeroValue, "registry:cred-1");
    json s = w->snapshot_json();
    json& events = chain_json(s, "sim:alpha")["events"];
    events.push_back(json{{"chain_id", "sim:alpha"},
                          {"contract_addr", id.contract_addr},
                          {"token_id", id.token_id},
                          {"kind", "Transferred"},
                          {"detail", json{{"from", "creator"}, {"to", "thief"}}},
                          {"seq", events.size()},
                          {"global_seq", 999999}});
    seeds.push_back({"C5", "fabricated transfer under a no-transfer policy", std::move(s), ""});
  }

  {
    auto w = audit_world();
    auto id = audit_deploy(*w, kPolicyTradeOnly, "gallery:piece");
    w->chains().at("sim:alpha").submit("creator", id.contract_addr, "burn",
                                       json{{"token_id", id.token_id}}, w->clock());
    w->engine().pump();
    json s = w->snapshot_json();
    s["custody"]["assets"]["gallery:piece"]["delivered_to"] = "mallory";
    seeds.push_back(
        {"C6", "delivery to an account that burned nothing", std::move(s), "mallory"});
  }

  {
    auto w = audit_world();
    auto id = audit_deploy(*w, kPolicyTradeOnly, "gallery:piece");
    json s = w->snapshot_json();
    s["engine"]["correlations"]["gallery:piece"] =
        nft_id(id.chain_id, id.contract_addr, "777").str();
    seeds.push_back(
        {"C7", "correlation pointing at a proxy the registry never bound", std::move(s), ""});
  }

  {
    auto w = audit_world();
    auto id = audit_deploy(*w, kPolicyTradeOnly, "gallery:piece");
    w->chains().at("sim:alpha").submit(w->engine().authority(), id.contract_addr,
                                       "set_resolution",
                                       json{{"endpoint", "https://meta2.alpha/x"}}, w->clock());
    json s = w->snapshot_json();
    chain_json(s, "sim:alpha")
        .at("contracts")
        .at(id.contract_addr)["resolution"]["reconfig_log"][0]["authorizer"] = "";
    seeds.push_back({"C8", "reconfig entry with the authorizer blanked out", std::move(s), ""});
  }

  {
    auto w = audit_world();
    audit_deploy(*w, kPolicyCrossChain, "gallery:piece");
    w->engine().deploy_pattern_contract("sim:beta", kPolicyCrossChain, "https://meta.beta/x");
    w->engine().cross_chain_transfer("creator", "gallery:piece", "sim:beta");
    json s = w->snapshot_json();
    json& entries = s["engine"]["journal"];
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i]["kind"] == "xfer.source_burned") {
        entries.erase(i);
        break;
      }
    }
    seeds.push_back({"C9", "journal with a phase entry cut out", std::move(s), ""});
  }

  return seeds;
}

}  // namespace testutil
