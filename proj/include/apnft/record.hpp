// Copyright 2026 the apnft authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Off-chain metadata record. The canonical serialization of the whole
// record (envelope included, not just content) is the hashing pre-image,
// so ownership and proxy-history changes are tamper-evident too.

#include <cstdint>
#include <string>
#include <vector>

#include "apnft/canonical.hpp"
#include "apnft/ids.hpp"
#include "apnft/sha256.hpp"

namespace apnft {

inline constexpr std::string_view kVisibilityPublic = "public";
inline constexpr std::string_view kVisibilityHidden = "hidden";

// Why the asset's proxy set changed at a given point in time.
inline constexpr std::string_view kHistoryDeployed = "deployed";
inline constexpr std::string_view kHistoryCrossChainMoved = "cross_chain_moved";
inline constexpr std::string_view kHistoryBurned = "burned";

struct history_entry {
  std::string nft_id;
  std::string reason;
  std::uint64_t seq = 0;

  friend bool operator==(const history_entry&, const history_entry&) = default;
};

struct metadata_record {
  std::string asset_id;
  std::string nft_id;  // current proxy; keeps its last value after a burn
  std::string owner;
  std::uint64_t version = 0;
  std::string visibility;
  json content = json::object();
  std::vector<history_entry> nft_history;

  friend bool operator==(const metadata_record&, const metadata_record&) = default;
};

inline json record_to_json(const metadata_record& r) {
  json history = json::array();
  for (const auto& h : r.nft_history)
    history.push_back({{"nft_id", h.nft_id}, {"reason", h.reason}, {"seq", h.seq}});
  return json{{"asset_id", r.asset_id}, {"content", r.content},
              {"nft_history", std::move(history)}, {"nft_id", r.nft_id},
              {"owner", r.owner},         {"version", r.version},
              {"visibility", r.visibility}};
}

inline metadata_record record_from_json(const json& v) {
  metadata_record r;
  r.asset_id = v.at("asset_id").get<std::string>();
  r.nft_id = v.at("nft_id").get<std::string>();
  r.owner = v.at("owner").get<std::string>();
  r.version = v.at("version").get<std::uint64_t>();
  r.visibility = v.at("visibility").get<std::string>();
  r.content = v.at("content");
  for (const auto& h : v.at("nft_history"))
    r.nft_history.push_back({h.at("nft_id").get<std::string>(),
                             h.at("reason").get<std::string>(),
                             h.at("seq").get<std::uint64_t>()});
  return r;
}

inline std::string canonical_serialize(const metadata_record& r) {
  return canonical_dump(record_to_json(r));
}

inline std::string metadata_hash(const metadata_record& r) {
  return sha256_hex(canonical_serialize(r));
}

}  // namespace apnft
