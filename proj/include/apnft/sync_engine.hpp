// Copyright 2026 the apnft authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Middleware that keeps chains, the metadata repository and custody in
// lock-step. All multi-step work is write-ahead journaled: an intent entry
// goes in before each side effect, and terminal markers (committed,
// reverted) go in only after all effects, so recovery can always decide
// whether to roll a half-done operation forward or compensate it away.
//
// The cross-chain transfer saga runs
//   started -> source_locked -> dest_pending -> source_burned
//           -> dest_activated -> committed
// with the source burn as the commit point: any crash before the burn is
// compensated (dest pre-mint removed, source unlocked, reverted), any
// crash at or after it is driven forward to committed.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "apnft/custody.hpp"
#include "apnft/ledger.hpp"
#include "apnft/metadata_repo.hpp"

namespace apnft {

struct journal_entry {
  std::uint64_t seq = 0;  // world tick at append time
  std::string kind;
  json data = json::object();
};

// Saga phases, in order. Journal entries use the dotted kinds below.
inline constexpr std::string_view kXferStarted = "xfer.started";
inline constexpr std::string_view kXferSourceLocked = "xfer.source_locked";
inline constexpr std::string_view kXferDestPending = "xfer.dest_pending";
inline constexpr std::string_view kXferSourceBurned = "xfer.source_burned";
inline constexpr std::string_view kXferDestActivated = "xfer.dest_activated";
inline constexpr std::string_view kXferCommitted = "xfer.committed";
inline constexpr std::string_view kXferReverted = "xfer.reverted";

// Every cooperative crash point the engine honors. The .pre variants fire
// after the intent is journaled but before the action runs; the bare names
// fire after the action but before the next journal entry.
inline constexpr std::string_view kCrashPoints[] = {
    "deploy.started",        "deploy.record_put",
    "deploy.minted",         "xfer.started",
    "xfer.source_locked.pre", "xfer.source_locked",
    "xfer.dest_pending.pre", "xfer.dest_pending",
    "xfer.source_burned.pre", "xfer.source_burned",
    "xfer.dest_activated.pre", "xfer.dest_activated",
    "xfer.history_appended", "custody.record_put",
    "custody.applied",       "chain.event_applied",
};

struct xfer_session {
  std::string id;
  std::string asset_id;
  std::string source;      // nft id string
  std::string dest_chain;
  std::string dest_contract;
  std::string dest;        // nft id string, known from dest_pending on
  std::string last_phase;  // most recent journal kind
  bool committed = false;
  bool reverted = false;

  bool terminal() const { return committed || reverted; }
};

class sync_engine {
 public:
  sync_engine(seq_clock& clock, ledger& led, custody_service& custody, metadata_repo& repo,
              std::string authority)
      : clock_(&clock),
        ledger_(&led),
        custody_(&custody),
        repo_(&repo),
        authority_(std::move(authority)) {}

  const std::string& authority() const { return authority_; }
  bool ready() const { return ready_; }
  const std::vector<journal_entry>& journal() const { return journal_; }
  const std::map<std::string, std::string>& correlations() const { return correlations_; }
  const std::map<std::string, xfer_session>& sessions() const { return sessions_; }

  // Arms a one-shot crash point. The next time execution passes it, the
  // process "dies" via crash_injected, leaving module state exactly as a
  // real crash there would.
  void arm_crash(const std::string& point) { armed_.insert(point); }

  // Clears crash points that never fired, so a stale arm cannot go off in
  // an unrelated later operation.
  void disarm_crashes() { armed_.clear(); }

  // Must run before any other operation; later service bindings would
  // otherwise race the operations that depend on them.
  void bind_services() {
    custody_->set_sync_authority(authority_);
    repo_->set_sync_authority(authority_);
    ready_ = true;
  }

  // Deploys one pattern contract per (chain, policy) pair; assets deployed
  // to that pair share it.
  std::string deploy_pattern_contract(const std::string& chain_id, const contract_policy& policy,
                                      const std::string& endpoint,
                                      const std::string& explicit_addr = "") {
    require_ready();
    auto& ch = ledger_->at(chain_id);
    json payload{{"policy",
                  {{"tradeable", policy.tradeable},
                   {"transferable", policy.transferable},
                   {"hidden_metadata", policy.hidden_metadata},
                   {"cross_chain", policy.cross_chain}}},
                 {"endpoint", endpoint}};
    if (!explicit_addr.empty()) payload["contract_addr"] = explicit_addr;
    auto res = ch.submit(authority_, "", "deploy", std::move(payload), *clock_);
    if (!res.accepted()) throw error(res.reject_code(), res.tx->reject_detail);
    std::string addr;
    for (const auto& [a, c] : ch.contracts())
      if (c.authority() == authority_ && c.policy() == policy) addr = a;
    fleet_[fleet_key(chain_id, policy)] = addr;
    journal_append("fleet.deployed", json{{"chain_id", chain_id},
                                          {"policy", std::string(policy_preset_name(policy))},
                                          {"tag", policy.tag()},
                                          {"addr", addr}});
    return addr;
  }

  bool has_fleet(const std::string& chain_id, const contract_policy& policy) const {
    return fleet_.count(fleet_key(chain_id, policy)) != 0;
  }

  std::string fleet_contract(const std::string& chain_id, const contract_policy& policy) const {
    auto it = fleet_.find(fleet_key(chain_id, policy));
    if (it == fleet_.end())
      throw error(errc::order_violation,
                  "no pattern contract on " + chain_id + " for policy " + policy.tag());
    return it->second;
  }

  // Mints the on-chain proxy for an asset already under custody and writes
  // the first metadata record. Visibility follows the contract policy.
  nft_id deploy_asset(const std::string& caller, const std::string& asset_id,
                      const std::string& chain_id, const contract_policy& policy,
                      const json& content, const std::string& explicit_token_id = "") {
    require_ready();
    if (!custody_->has_asset(asset_id) || !custody_->in_custody(asset_id))
      throw error(errc::not_under_custody, asset_id);
    const auto& held = custody_->record(asset_id);
    if (!held.due_diligence_ok) throw error(errc::not_under_custody, "vetting failed: " + asset_id);
    if (caller != held.creator)
      throw error(errc::not_authorized, caller + " did not place " + asset_id);
    if (repo_->has_asset(asset_id) || correlations_.count(asset_id))
      throw error(errc::asset_already_bound, asset_id);
    auto contract_addr = fleet_contract(chain_id, policy);
    const auto& contract = ledger_->at(chain_id).contract(contract_addr);

    std::string token_id = explicit_token_id.empty() ? contract.peek_next_id() : explicit_token_id;
    validate_token_id(token_id);
    if (contract.has_token(token_id) || contract.retired().count(token_id))
      throw error(errc::token_exists, token_id);

    const std::string visibility(policy.hidden_metadata ? kVisibilityHidden : kVisibilityPublic);
    journal_append("deploy.started", json{{"asset_id", asset_id},
                                          {"chain_id", chain_id},
                                          {"contract_addr", contract_addr},
                                          {"token_id", token_id},
                                          {"owner", caller},
                                          {"visibility", visibility},
                                          {"content", content}});
    maybe_crash("deploy.started");
    run_deploy(journal_.back().data);
    return nft_id(chain_id, contract_addr, token_id);
  }

  // Caller-facing state sync: drains custody notifications and chain
  // events until nothing moves. Deterministic order: chains in id order
  // first, then the custody queue, repeated to a fixed point.
  void pump() {
    require_ready();
    bool progress = true;
    while (progress) {
      progress = false;
      progress |= pump_chains();
      progress |= pump_custody();
    }
  }

  // Moves an asset's proxy to another chain atomically. Returns the
  // session id; the new proxy is session.dest once committed.
  std::string cross_chain_transfer(const std::string& caller, const std::string& asset_id,
                                   const std::string& dest_chain) {
    require_ready();
    auto cit = correlations_.find(asset_id);
    if (cit == correlations_.end()) throw error(errc::unknown_asset, asset_id);
    nft_id source = parse_nft_id(cit->second);
    auto& src_chain = ledger_->at(source.chain_id);
    const auto& src_contract = src_chain.contract(source.contract_addr);
    const auto& tok = src_contract.token(source.token_id);
    const auto policy = src_contract.policy();

    if (!policy.cross_chain)
      throw error(errc::policy_violation, "policy forbids cross-chain moves: " + cit->second);
    for (const auto& [sid, s] : sessions_)
      if (s.asset_id == asset_id && !s.terminal())
        throw error(errc::session_open, sid + " is still moving " + asset_id);
    if (tok.status != token_status::active)
      throw error(errc::token_not_active, cit->second + " is " + std::string(to_string(tok.status)));
    if (caller != tok.owner) throw error(errc::not_owner, caller + " does not own " + cit->second);
    if (dest_chain == source.chain_id)
      throw error(errc::invalid_argument, "asset is already on " + dest_chain);
    ledger_->at(dest_chain);                           // unknown_chain check
    auto dest_contract = fleet_contract(dest_chain, policy);  // order_violation check

    auto session_id = "xfer-" + std::to_string(++session_counter_);
    journal_append(std::string(kXferStarted), json{{"session", session_id},
                                                   {"asset_id", asset_id},
                                                   {"source", source.str()},
                                                   {"dest_chain", dest_chain},
                                                   {"dest_contract", dest_contract}});
    sessions_from_journal();
    maybe_crash("xfer.started");

    try {
      run_xfer(sessions_.at(session_id));
    } catch (const crash_injected&) {
      throw;  // recovery after restart owns the cleanup
    } catch (const error&) {
      // Live failure mid-saga: compensate (or complete, past the burn)
      // right here, then surface the original fault.
      resolve_session(sessions_.at(session_id));
      throw;
    }
    return session_id;
  }

  // Brings every half-done operation in the journal to a terminal state.
  // Idempotent; safe to call at every process start. Returns the ids of
  // operations it had to finish.
  std::vector<std::string> recover() {
    require_ready();
    std::vector<std::string> resolved;
    // Deploys first: a deploy interrupted anywhere rolls forward.
    std::set<std::string> committed_deploys;
    for (const auto& e : journal_)
      if (e.kind == "deploy.committed")
        committed_deploys.insert(e.data.at("asset_id").get<std::string>());
    std::vector<json> pending;
    for (const auto& e : journal_)
      if (e.kind == "deploy.started" &&
          !committed_deploys.count(e.data.at("asset_id").get<std::string>()))
        pending.push_back(e.data);
    for (const auto& d : pending) {
      run_deploy(d);
      resolved.push_back("deploy:" + d.at("asset_id").get<std::string>());
    }

    sessions_from_journal();
    std::vector<std::string> open;
    for (const auto& [id, s] : sessions_)
      if (!s.terminal()) open.push_back(id);
    for (const auto& id : open) {
      resolve_session(sessions_.at(id));
      resolved.push_back(id);
    }
    return resolved;
  }

  json to_json() const {
    json entries = json::array();
    for (const auto& e : journal_)
      entries.push_back({{"seq", e.seq}, {"kind", e.kind}, {"data", e.data}});
    json applied = json::array();
    for (auto g : applied_chain_events_) applied.push_back(g);
    return json{{"authority", authority_},
                {"ready", ready_},
                {"session_counter", session_counter_},
                {"journal", std::move(entries)},
                {"chain_cursors", json(chain_cursors_)},
                {"applied_custody", json(applied_custody_)},
                {"applied_chain_events", std::move(applied)},
                {"fleet", json(fleet_)},
                {"correlations", json(correlations_)}};
  }

  static sync_engine from_json(seq_clock& clock, ledger& led, custody_service& custody,
                               metadata_repo& repo, const json& v) {
    sync_engine e(clock, led, custody, repo, v.at("authority").get<std::string>());
    e.ready_ = v.at("ready").get<bool>();
    e.session_counter_ = v.at("session_counter").get<std::uint64_t>();
    for (const auto& ej : v.at("journal"))
      e.journal_.push_back(
          {ej.at("seq").get<std::uint64_t>(), ej.at("kind").get<std::string>(), ej.at("data")});
    for (const auto& [id, cur] : v.at("chain_cursors").items())
      e.chain_cursors_[id] = cur.get<std::uint64_t>();
    for (const auto& [id, seq] : v.at("applied_custody").items())
      e.applied_custody_[id] = seq.get<std::uint64_t>();
    for (const auto& g : v.at("applied_chain_events"))
      e.applied_chain_events_.insert(g.get<std::uint64_t>());
    for (const auto& [k, addr] : v.at("fleet").items()) e.fleet_[k] = addr.get<std::string>();
    for (const auto& [a, n] : v.at("correlations").items())
      e.correlations_[a] = n.get<std::string>();
    e.sessions_from_journal();
    return e;
  }

 private:
  static std::string fleet_key(const std::string& chain_id, const contract_policy& p) {
    return chain_id + "|" + p.tag();
  }

  void require_ready() const {
    if (!ready_) throw error(errc::order_violation, "services are not bound yet");
  }

  void journal_append(const std::string& kind, json data) {
    journal_.push_back({clock_->next(), kind, std::move(data)});
  }

  void maybe_crash(const std::string& point) {
    auto it = armed_.find(point);
    if (it == armed_.end()) return;
    armed_.erase(it);
    throw crash_injected(point);
  }

  const std::string& provider_of(const std::string& asset_id) const {
    return repo_->providers().at(asset_namespace(asset_id));
  }

  tx_result submit(const nft_id& id, const std::string& op, json payload) {
    return ledger_->at(id.chain_id).submit(authority_, id.contract_addr, op, std::move(payload),
                                           *clock_);
  }

  void must_accept(const tx_result& res, const char* what) {
    if (!res.accepted())
      throw error(res.reject_code(), std::string(what) + ": " + res.tx->reject_detail);
  }

  // Executes (or re-executes) a journaled deploy. Every step is guarded so
  // a partially-done deploy continues where it stopped.
  void run_deploy(const json& d) {
    const auto asset_id = d.at("asset_id").get<std::string>();
    const nft_id id(d.at("chain_id").get<std::string>(), d.at("contract_addr").get<std::string>(),
                    d.at("token_id").get<std::string>());
    const auto owner = d.at("owner").get<std::string>();
    const auto visibility = d.at("visibility").get<std::string>();

    if (!repo_->has_asset(asset_id))
      repo_->put_record(owner, asset_id, id.str(), owner, visibility, d.at("content"));
    maybe_crash("deploy.record_put");

    const auto& contract = ledger_->at(id.chain_id).contract(id.contract_addr);
    if (!contract.has_token(id.token_id)) {
      json attributes = json::object();
      if (contract.policy().hidden_metadata)
        attributes["metadata_hash"] = repo_->stored_digest(asset_id, repo_->version_count(asset_id));
      else
        attributes["token_uri"] = contract.token_uri(id.token_id);
      must_accept(submit(id, "mint", json{{"token_id", id.token_id},
                                          {"owner", owner},
                                          {"status", "active"},
                                          {"attributes", std::move(attributes)}}),
                  "deploy mint");
    }
    maybe_crash("deploy.minted");

    correlations_[asset_id] = id.str();
    journal_append("deploy.committed", json{{"asset_id", asset_id}});
  }

  // ---- chain event intake ----------------------------------------------

  bool pump_chains() {
    // Merge unseen events across chains into world order before applying.
    std::vector<chain_event> batch;
    for (const auto& [cid, ch] : ledger_->chains()) {
      auto evs = ch.events_since(chain_cursors_[cid]);
      batch.insert(batch.end(), evs.begin(), evs.end());
    }
    std::stable_sort(batch.begin(), batch.end(),
                     [](const chain_event& a, const chain_event& b) {
                       return a.global_seq < b.global_seq;
                     });
    for (const auto& ev : batch) {
      apply_chain_event(ev);
      chain_cursors_[ev.chain_id] += 1;
    }
    return !batch.empty();
  }

  void apply_chain_event(const chain_event& ev) {
    if (applied_chain_events_.count(ev.global_seq)) return;

    // Events caused by this engine's own transactions are echoes, except
    // an authority burn without a forward_ref: that is a revocation done
    // with the engine's keys and must still reach the record history.
    auto by = ev.detail.find("by");
    if (by != ev.detail.end() && by->second == authority_) return;
    auto burner = ev.detail.find("burner");
    const bool authority_burn = ev.kind == event_kind::burned && burner != ev.detail.end() &&
                                burner->second == authority_;
    if (authority_burn && ev.detail.count("forward_ref")) return;  // saga burn

    const auto nft = nft_id(ev.chain_id, ev.contract_addr, ev.token_id).str();
    if (!repo_->has_binding(nft)) return;  // token outside the proxy system
    const auto& asset_id = repo_->binding_of(nft);

    if (ev.kind == event_kind::transferred) {
      repo_->update_owner(authority_, asset_id, ev.detail.at("to"));
      refresh_hidden_hash(asset_id);
    } else if (ev.kind == event_kind::burned) {
      // The proxy is gone: record it, and when a holder did the burning,
      // release the physical asset to them. Both effects tolerate
      // re-execution.
      const auto& latest = repo_->latest(asset_id);
      bool recorded = false;
      for (const auto& h : latest.nft_history)
        recorded |= (h.nft_id == nft && h.reason == kHistoryBurned);
      if (!recorded) repo_->append_history(authority_, asset_id, nft, std::string(kHistoryBurned));
      if (!authority_burn) {
        try {
          custody_->deliver(authority_, asset_id, burner->second);
        } catch (const error& e) {
          if (e.code() != errc::already_delivered) throw;
        }
      }
    } else {
      return;  // other kinds carry no off-chain effect
    }

    journal_append("chain_event_applied", json{{"global_seq", ev.global_seq}});
    applied_chain_events_.insert(ev.global_seq);
    maybe_crash("chain.event_applied");
  }

  // ---- custody intake ----------------------------------------------------

  bool pump_custody() {
    bool progress = false;
    while (custody_->has_notification()) {
      const auto n = custody_->front_notification();
      auto applied = applied_custody_.find(n.asset_id);
      if (applied == applied_custody_.end() || applied->second < n.seq) {
        if (repo_->has_asset(n.asset_id)) {
          apply_custody_change(n);
        } else {
          ++dropped_notifications_;  // custody-only asset, nothing to sync
        }
        applied_custody_[n.asset_id] = n.seq;
        journal_append("custody_applied", json{{"asset_id", n.asset_id}, {"seq", n.seq}});
        maybe_crash("custody.applied");
      }
      custody_->pop_notification();
      progress = true;
    }
    return progress;
  }

  void apply_custody_change(const custody_notification& n) {
    const auto& latest = repo_->latest(n.asset_id);
    json content = latest.content;
    content["asset_state"] = n.new_state;
    repo_->put_record(provider_of(n.asset_id), n.asset_id, latest.nft_id, latest.owner,
                      latest.visibility, content);
    maybe_crash("custody.record_put");
    refresh_hidden_hash(n.asset_id);
  }

  // Re-anchors the on-chain commitment after an off-chain record change.
  // Only hidden-metadata tokens carry a hash; burned proxies are left as
  // they ended.
  void refresh_hidden_hash(const std::string& asset_id) {
    const auto& latest = repo_->latest(asset_id);
    if (latest.visibility != kVisibilityHidden) return;
    nft_id id = parse_nft_id(latest.nft_id);
    const auto& contract = ledger_->at(id.chain_id).contract(id.contract_addr);
    if (!contract.has_token(id.token_id)) return;
    const auto& tok = contract.token(id.token_id);
    if (tok.status == token_status::burned) return;
    auto digest = repo_->stored_digest(asset_id, latest.version);
    auto cur = tok.attributes.find("metadata_hash");
    if (cur != tok.attributes.end() && cur->second == digest) return;
    must_accept(submit(id, "set_attribute",
                       json{{"token_id", id.token_id}, {"key", "metadata_hash"}, {"value", digest}}),
                "hash refresh");
  }

  // ---- cross-chain saga ---------------------------------------------------

  xfer_session& session_at(const std::string& id) { return sessions_.at(id); }

  // Runs a fresh saga end to end, journaling intent before every action.
  // Crash-interrupted sagas never come back here; resolve_session finishes
  // them from the journal plus actual chain state.
  void run_xfer(xfer_session& s) {
    nft_id source = parse_nft_id(s.source);

    journal_append(std::string(kXferSourceLocked), json{{"session", s.id}});
    s.last_phase = kXferSourceLocked;
    maybe_crash("xfer.source_locked.pre");
    must_accept(submit(source, "lock", json{{"token_id", source.token_id}}), "source lock");
    maybe_crash("xfer.source_locked");

    const auto& dest_contract = ledger_->at(s.dest_chain).contract(s.dest_contract);
    s.dest = nft_id(s.dest_chain, s.dest_contract, dest_contract.peek_next_id()).str();
    journal_append(std::string(kXferDestPending), json{{"session", s.id}, {"dest", s.dest}});
    s.last_phase = kXferDestPending;
    maybe_crash("xfer.dest_pending.pre");
    mint_dest_pending(s);
    maybe_crash("xfer.dest_pending");

    journal_append(std::string(kXferSourceBurned), json{{"session", s.id}});
    s.last_phase = kXferSourceBurned;
    maybe_crash("xfer.source_burned.pre");
    must_accept(
        submit(source, "burn", json{{"token_id", source.token_id}, {"forward_ref", s.dest}}),
        "source burn");
    maybe_crash("xfer.source_burned");

    journal_append(std::string(kXferDestActivated), json{{"session", s.id}});
    s.last_phase = kXferDestActivated;
    maybe_crash("xfer.dest_activated.pre");
    activate_dest(s);
    maybe_crash("xfer.dest_activated");

    commit_effects(s);
  }

  void mint_dest_pending(xfer_session& s) {
    nft_id dest = parse_nft_id(s.dest);
    const auto& dest_contract = ledger_->at(dest.chain_id).contract(dest.contract_addr);
    if (dest_contract.has_token(dest.token_id)) return;  // recovery re-run
    const auto& latest = repo_->latest(s.asset_id);
    json attributes = json::object();
    if (dest_contract.policy().hidden_metadata)
      attributes["metadata_hash"] = repo_->stored_digest(s.asset_id, latest.version);
    else
      attributes["token_uri"] = dest_contract.token_uri(dest.token_id);
    must_accept(submit(dest, "mint", json{{"token_id", dest.token_id},
                                          {"owner", latest.owner},
                                          {"status", "pending"},
                                          {"attributes", std::move(attributes)}}),
                "dest pre-mint");
  }

  void activate_dest(xfer_session& s) {
    nft_id dest = parse_nft_id(s.dest);
    const auto& tok = ledger_->at(dest.chain_id).contract(dest.contract_addr).token(dest.token_id);
    if (tok.status == token_status::pending)
      must_accept(submit(dest, "activate", json{{"token_id", dest.token_id}}), "dest activate");
  }

  void commit_effects(xfer_session& s) {
    const auto& latest = repo_->latest(s.asset_id);
    bool recorded = false;
    for (const auto& h : latest.nft_history)
      recorded |= (h.nft_id == s.dest && h.reason == kHistoryCrossChainMoved);
    if (!recorded)
      repo_->append_history(authority_, s.asset_id, s.dest, std::string(kHistoryCrossChainMoved));
    maybe_crash("xfer.history_appended");
    refresh_hidden_hash(s.asset_id);
    correlations_[s.asset_id] = s.dest;
    journal_append(std::string(kXferCommitted), json{{"session", s.id}});
    s.last_phase = kXferCommitted;
    s.committed = true;
  }

  // Compensates a saga that never reached its commit point: the dest
  // pre-mint is retired and the source unlocked, as if nothing happened.
  void revert_session(xfer_session& s) {
    if (!s.dest.empty()) {
      nft_id dest = parse_nft_id(s.dest);
      const auto& contract = ledger_->at(dest.chain_id).contract(dest.contract_addr);
      if (contract.has_token(dest.token_id) &&
          contract.token(dest.token_id).status == token_status::pending)
        must_accept(submit(dest, "remove_pending", json{{"token_id", dest.token_id}}),
                    "revert pre-mint");
    }
    nft_id source = parse_nft_id(s.source);
    const auto& contract = ledger_->at(source.chain_id).contract(source.contract_addr);
    if (contract.has_token(source.token_id) &&
        contract.token(source.token_id).status == token_status::locked)
      must_accept(submit(source, "unlock", json{{"token_id", source.token_id}}), "revert unlock");
    journal_append(std::string(kXferReverted), json{{"session", s.id}});
    s.last_phase = kXferReverted;
    s.reverted = true;
  }

  // Decides forward-or-back for a non-terminal session. The journal alone
  // is not enough: intent entries precede their actions, so the actual
  // chain state says how far the saga really got.
  void resolve_session(xfer_session& s) {
    nft_id source = parse_nft_id(s.source);
    const auto& src_contract = ledger_->at(source.chain_id).contract(source.contract_addr);
    const bool burned = src_contract.has_token(source.token_id) &&
                        src_contract.token(source.token_id).status == token_status::burned;
    if (burned) {
      activate_dest(s);
      commit_effects(s);
    } else {
      revert_session(s);
    }
  }

  // Rebuilds the in-memory session table from the journal, the single
  // durable source of truth for saga progress.
  void sessions_from_journal() {
    sessions_.clear();
    for (const auto& e : journal_) {
      if (e.kind.rfind("xfer.", 0) != 0) continue;
      if (e.kind == kXferStarted) {
        xfer_session s;
        s.id = e.data.at("session").get<std::string>();
        s.asset_id = e.data.at("asset_id").get<std::string>();
        s.source = e.data.at("source").get<std::string>();
        s.dest_chain = e.data.at("dest_chain").get<std::string>();
        s.dest_contract = e.data.at("dest_contract").get<std::string>();
        s.last_phase = e.kind;
        sessions_[s.id] = std::move(s);
        continue;
      }
      auto it = sessions_.find(e.data.at("session").get<std::string>());
      if (it == sessions_.end())
        throw error(errc::journal_corrupt, "phase entry without started: " + e.kind);
      it->second.last_phase = e.kind;
      if (e.kind == kXferDestPending) it->second.dest = e.data.at("dest").get<std::string>();
      if (e.kind == kXferCommitted) it->second.committed = true;
      if (e.kind == kXferReverted) it->second.reverted = true;
    }
  }

  seq_clock* clock_;
  ledger* ledger_;
  custody_service* custody_;
  metadata_repo* repo_;
  std::string authority_;
  bool ready_ = false;

  std::vector<journal_entry> journal_;
  std::map<std::string, std::uint64_t> chain_cursors_;
  std::map<std::string, std::uint64_t> applied_custody_;  // asset -> last applied seq
  std::set<std::uint64_t> applied_chain_events_;          // by event global_seq
  std::map<std::string, std::string> fleet_;              // chain|policy-tag -> contract addr
  std::map<std::string, std::string> correlations_;       // asset -> current nft id
  std::map<std::string, xfer_session> sessions_;
  std::uint64_t session_counter_ = 0;
  std::set<std::string> armed_;
  std::uint64_t dropped_notifications_ = 0;
};

}  // namespace apnft
