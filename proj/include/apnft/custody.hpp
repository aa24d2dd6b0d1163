// Copyright 2026 the apnft authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Custody of the physical assets that NFTs stand in for. State changes are
// journaled per asset and queued as durable notifications for the sync
// engine. Release of the physical item (delivery) is gated on proof that
// the bound NFT was burned by the recipient.

#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "apnft/canonical.hpp"
#include "apnft/clock.hpp"
#include "apnft/ids.hpp"

namespace apnft {

inline constexpr std::string_view kCustodyInitialState = "under custody";
inline constexpr std::string_view kCustodyDeliveredState = "delivered";

struct custody_log_entry {
  std::uint64_t seq = 0;  // 1-based per asset
  std::uint64_t global_seq = 0;
  std::string state;

  friend bool operator==(const custody_log_entry&, const custody_log_entry&) = default;
};

struct custody_asset {
  std::string asset_id;
  std::string creator;
  std::string custodian;
  std::string state;
  bool due_diligence_ok = true;  // vetting is simulated as always passing
  std::string delivered_to;
  std::vector<custody_log_entry> log;
};

struct custody_notification {
  std::string asset_id;
  std::string new_state;
  std::uint64_t seq = 0;  // per-asset log seq, used for exactly-once apply
  std::uint64_t global_seq = 0;
};

// Verifies a physical-claim request against on-chain state. Wired by the
// world so custody needs no compile-time view of the ledger.
class delivery_guard {
 public:
  virtual ~delivery_guard() = default;
  // Throws unless the NFT bound to `asset_id` is burned and was burned by
  // `recipient`.
  virtual void verify_claim(const std::string& asset_id, const std::string& recipient) const = 0;
};

class custody_service {
 public:
  explicit custody_service(seq_clock& clock) : clock_(&clock) {}

  void set_sync_authority(std::string account) { sync_authority_ = std::move(account); }
  void set_delivery_guard(const delivery_guard* guard) { guard_ = guard; }

  bool has_asset(const std::string& asset_id) const { return assets_.count(asset_id) != 0; }

  const custody_asset& record(const std::string& asset_id) const {
    auto it = assets_.find(asset_id);
    if (it == assets_.end()) throw error(errc::unknown_asset, asset_id);
    return it->second;
  }

  bool in_custody(const std::string& asset_id) const {
    auto it = assets_.find(asset_id);
    return it != assets_.end() && it->second.delivered_to.empty();
  }

  void place(const std::string& caller, const std::string& asset_id,
             const std::string& custodian) {
    validate_asset_id(asset_id);
    if (assets_.count(asset_id)) throw error(errc::duplicate_asset, asset_id);
    custody_asset a;
    a.asset_id = asset_id;
    a.creator = caller;
    a.custodian = custodian;
    a.state = std::string(kCustodyInitialState);
    a.log.push_back({1, clock_->next(), a.state});
    assets_.emplace(asset_id, std::move(a));
  }

  // Custodian reports a change in the physical asset's condition. Queued
  // for the sync engine so the off-chain record follows.
  const custody_log_entry& update_state(const std::string& caller, const std::string& asset_id,
                                        const std::string& new_state) {
    auto it = assets_.find(asset_id);
    if (it == assets_.end()) throw error(errc::unknown_asset, asset_id);
    auto& a = it->second;
    if (caller != a.custodian)
      throw error(errc::not_authorized, caller + " is not the custodian of " + asset_id);
    if (!a.delivered_to.empty()) throw error(errc::already_delivered, asset_id);
    if (new_state.empty() || new_state == kCustodyDeliveredState)
      throw error(errc::invalid_argument, "state: " + new_state);
    a.state = new_state;
    a.log.push_back({a.log.back().seq + 1, clock_->next(), new_state});
    queue_.push_back({asset_id, new_state, a.log.back().seq, a.log.back().global_seq});
    return a.log.back();
  }

  // Releases the physical asset to whoever burned the bound NFT. At most
  // one delivery can ever happen per asset.
  const custody_asset& deliver(const std::string& caller, const std::string& asset_id,
                               const std::string& recipient) {
    if (caller != sync_authority_ || sync_authority_.empty())
      throw error(errc::not_authorized, caller + " is not the sync authority");
    auto it = assets_.find(asset_id);
    if (it == assets_.end()) throw error(errc::unknown_asset, asset_id);
    auto& a = it->second;
    if (!a.delivered_to.empty()) throw error(errc::already_delivered, asset_id);
    if (guard_ == nullptr) throw error(errc::not_burned, "no delivery guard wired");
    guard_->verify_claim(asset_id, recipient);
    a.delivered_to = recipient;
    a.state = std::string(kCustodyDeliveredState);
    a.log.push_back({a.log.back().seq + 1, clock_->next(), a.state});
    queue_.push_back({asset_id, a.state, a.log.back().seq, a.log.back().global_seq});
    return a;
  }

  bool has_notification() const { return !queue_.empty(); }
  const custody_notification& front_notification() const {
    if (queue_.empty()) throw error(errc::not_found, "notification queue is empty");
    return queue_.front();
  }
  void pop_notification() {
    if (queue_.empty()) throw error(errc::not_found, "notification queue is empty");
    queue_.pop_front();
  }
  const std::deque<custody_notification>& notifications() const { return queue_; }

  std::vector<std::string> asset_ids() const {
    std::vector<std::string> out;
    for (const auto& [id, _] : assets_) out.push_back(id);
    return out;
  }

  json to_json() const {
    json assets = json::object();
    for (const auto& [id, a] : assets_) {
      json log = json::array();
      for (const auto& e : a.log)
        log.push_back({{"seq", e.seq}, {"global_seq", e.global_seq}, {"state", e.state}});
      assets[id] = json{{"asset_id", a.asset_id},
                        {"creator", a.creator},
                        {"custodian", a.custodian},
                        {"state", a.state},
                        {"due_diligence_ok", a.due_diligence_ok},
                        {"delivered_to", a.delivered_to},
                        {"log", std::move(log)}};
    }
    json queue = json::array();
    for (const auto& n : queue_)
      queue.push_back({{"asset_id", n.asset_id},
                       {"new_state", n.new_state},
                       {"seq", n.seq},
                       {"global_seq", n.global_seq}});
    return json{{"sync_authority", sync_authority_},
                {"assets", std::move(assets)},
                {"queue", std::move(queue)}};
  }

  static custody_service from_json(seq_clock& clock, const json& v) {
    custody_service svc(clock);
    svc.sync_authority_ = v.at("sync_authority").get<std::string>();
    for (const auto& [id, aj] : v.at("assets").items()) {
      custody_asset a;
      a.asset_id = aj.at("asset_id").get<std::string>();
      a.creator = aj.at("creator").get<std::string>();
      a.custodian = aj.at("custodian").get<std::string>();
      a.state = aj.at("state").get<std::string>();
      a.due_diligence_ok = aj.at("due_diligence_ok").get<bool>();
      a.delivered_to = aj.at("delivered_to").get<std::string>();
      for (const auto& ej : aj.at("log"))
        a.log.push_back({ej.at("seq").get<std::uint64_t>(),
                         ej.at("global_seq").get<std::uint64_t>(),
                         ej.at("state").get<std::string>()});
      if (a.log.empty()) throw error(errc::corrupt_snapshot, "custody asset " + id);
      svc.assets_.emplace(id, std::move(a));
    }
    for (const auto& nj : v.at("queue"))
      svc.queue_.push_back({nj.at("asset_id").get<std::string>(),
                            nj.at("new_state").get<std::string>(),
                            nj.at("seq").get<std::uint64_t>(),
                            nj.at("global_seq").get<std::uint64_t>()});
    return svc;
  }

 private:
  seq_clock* clock_;
  std::string sync_authority_;
  const delivery_guard* guard_ = nullptr;
  std::map<std::string, custody_asset> assets_;
  std::deque<custody_notification> queue_;
};

}  // namespace apnft
