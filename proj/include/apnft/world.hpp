// Copyright 2026 the apnft authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Owns every module plus the shared tick clock and wires them together.
// A world snapshot is one canonical JSON document; restoring it and
// snapshotting again reproduces the bytes exactly.

#include <memory>
#include <string>

#include "apnft/custody.hpp"
#include "apnft/ledger.hpp"
#include "apnft/metadata_repo.hpp"
#include "apnft/sync_engine.hpp"

namespace apnft {

inline constexpr std::uint64_t kSnapshotFormatVersion = 1;

struct world_config {
  std::string authority = "sync-authority";
  std::string custody_endpoint = "https://custody.example";
};

class world {
 public:
  explicit world(world_config cfg = {})
      : custody_(clock_),
        repo_(clock_, cfg.custody_endpoint),
        engine_(clock_, ledger_, custody_, repo_, cfg.authority),
        guard_(this) {
    custody_.set_delivery_guard(&guard_);
  }

  world(const world&) = delete;
  world& operator=(const world&) = delete;

  seq_clock& clock() { return clock_; }
  const seq_clock& clock() const { return clock_; }
  ledger& chains() { return ledger_; }
  const ledger& chains() const { return ledger_; }
  custody_service& custody() { return custody_; }
  const custody_service& custody() const { return custody_; }
  metadata_repo& repo() { return repo_; }
  const metadata_repo& repo() const { return repo_; }
  sync_engine& engine() { return engine_; }
  const sync_engine& engine() const { return engine_; }

  // Binds authorities across modules. Everything except chain creation is
  // an order violation before this runs.
  void initialize_services() { engine_.bind_services(); }

  json snapshot_json() const {
    return json{{"format_version", kSnapshotFormatVersion},
                {"global_seq", clock_.current()},
                {"chains", ledger_.to_json()},
                {"custody", custody_.to_json()},
                {"repo", repo_.to_json()},
                {"engine", engine_.to_json()}};
  }

  std::string snapshot() const { return canonical_dump(snapshot_json()); }

  // Structure is validated strictly; semantic faults are deliberately let
  // through so damaged snapshots can still be loaded for auditing.
  static std::unique_ptr<world> restore(const std::string& bytes) {
    json v = parse_json(bytes);
    return restore(v);
  }

  static std::unique_ptr<world> restore(const json& v) {
    if (!v.is_object() || !v.contains("format_version") ||
        v.at("format_version") != kSnapshotFormatVersion)
      throw error(errc::corrupt_snapshot, "unsupported snapshot format");
    auto w = std::make_unique<world>();
    try {
      w->clock_.reset(v.at("global_seq").get<std::uint64_t>());
      w->ledger_ = ledger::from_json(v.at("chains"));
      w->custody_ = custody_service::from_json(w->clock_, v.at("custody"));
      w->repo_ = metadata_repo::from_json(w->clock_, v.at("repo"));
      w->engine_ = sync_engine::from_json(w->clock_, w->ledger_, w->custody_, w->repo_,
                                          v.at("engine"));
    } catch (const error&) {
      throw;
    } catch (const std::exception& e) {
      throw error(errc::corrupt_snapshot, e.what());
    }
    w->custody_.set_delivery_guard(&w->guard_);
    return w;
  }

 private:
  // Proof-of-burn check for physical delivery: the asset's current proxy
  // must be burned, by the claimed recipient.
  class guard_impl : public delivery_guard {
   public:
    explicit guard_impl(world* w) : w_(w) {}
    void verify_claim(const std::string& asset_id, const std::string& recipient) const override {
      if (!w_->repo_.has_asset(asset_id))
        throw error(errc::not_burned, "no proxy record for " + asset_id);
      nft_id id = parse_nft_id(w_->repo_.latest(asset_id).nft_id);
      const auto& ch = w_->ledger_.at(id.chain_id);
      const auto& tok = ch.contract(id.contract_addr).token(id.token_id);
      if (tok.status != token_status::burned)
        throw error(errc::not_burned, id.str() + " is " + std::string(to_string(tok.status)));
      std::string burner;
      for (const auto& ev : ch.events())
        if (ev.kind == event_kind::burned && ev.contract_addr == id.contract_addr &&
            ev.token_id == id.token_id)
          burner = ev.detail.at("burner");
      if (burner.empty()) throw error(errc::not_burned, "no burn event for " + id.str());
      if (burner != recipient)
        throw error(errc::wrong_recipient,
                    recipient + " did not burn " + id.str() + " (" + burner + " did)");
    }

   private:
    world* w_;
  };

  seq_clock clock_;
  ledger ledger_;
  custody_service custody_;
  metadata_repo repo_;
  sync_engine engine_;
  guard_impl guard_;
};

}  // namespace apnft
