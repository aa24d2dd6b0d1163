// Copyright 2026 the apnft authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Deterministic simulated chains. Each chain is an append-only transaction
// log plus contract state plus an event log. Transactions are atomic: ops
// run against a copy of the target contract and commit only on success, so
// a rejected transaction leaves contract state byte-identical.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "apnft/clock.hpp"
#include "apnft/contract.hpp"

namespace apnft {

struct tx_envelope {
  std::uint64_t seq = 0;         // position in this chain's log
  std::uint64_t global_seq = 0;  // world ordering tick
  std::string sender;
  std::string target;  // contract address; empty for chain-level ops
  std::string op;
  json payload = json::object();
  bool accepted = false;
  std::string reject_code;
  std::string reject_detail;
};

struct tx_result {
  const tx_envelope* tx = nullptr;
  std::vector<chain_event> events;  // empty when rejected

  bool accepted() const { return tx->accepted; }
  errc reject_code() const { return errc_from_string(tx->reject_code); }
};

class chain {
 public:
  chain() = default;
  explicit chain(std::string id) : id_(std::move(id)) { validate_chain_id(id_); }

  const std::string& id() const { return id_; }
  std::uint64_t height() const { return tx_log_.size(); }
  const std::vector<tx_envelope>& tx_log() const { return tx_log_; }
  const std::vector<chain_event>& events() const { return events_; }

  bool has_contract(const std::string& addr) const { return contracts_.count(addr) != 0; }

  const nft_contract& contract(const std::string& addr) const {
    auto it = contracts_.find(addr);
    if (it == contracts_.end()) throw error(errc::unknown_contract, id_ + "/" + addr);
    return it->second;
  }

  const std::map<std::string, nft_contract>& contracts() const { return contracts_; }

  // Deterministic address for the contract a deploy at this height creates.
  std::string derive_address() const {
    return "0x" + sha256_hex(id_ + "|" + std::to_string(height())).substr(0, 40);
  }

  // Submits one transaction. Never throws for domain rejections: those are
  // recorded on the envelope and the chain state is left untouched.
  tx_result submit(const std::string& sender, const std::string& target, const std::string& op,
                   json payload, seq_clock& clock) {
    tx_envelope tx;
    tx.seq = tx_log_.size();
    tx.global_seq = clock.next();
    tx.sender = sender;
    tx.target = target;
    tx.op = op;
    tx.payload = std::move(payload);

    std::vector<chain_event> emitted;
    try {
      if (op == "deploy") {
        apply_deploy(tx);
      } else {
        auto it = contracts_.find(target);
        if (it == contracts_.end()) throw error(errc::unknown_contract, id_ + "/" + target);
        nft_contract work = it->second;  // commit point is the move below
        work.stamp_next_global_seq(tx.global_seq);
        work.apply(sender, op, tx.payload, emitted);
        it->second = std::move(work);
      }
      tx.accepted = true;
    } catch (const error& e) {
      tx.accepted = false;
      tx.reject_code = to_string(e.code());
      tx.reject_detail = e.what();
      emitted.clear();
    }

    for (auto& ev : emitted) {
      ev.chain_id = id_;
      ev.contract_addr = target;
      ev.seq = tx.seq;
      ev.global_seq = tx.global_seq;
    }
    tx_log_.push_back(std::move(tx));
    for (auto& ev : emitted) events_.push_back(std::move(ev));

    tx_result res;
    res.tx = &tx_log_.back();
    auto begin = events_.end() - static_cast<std::ptrdiff_t>(emitted.size());
    res.events.assign(begin, events_.end());
    return res;
  }

  // Events at index `cursor` and later. The cursor is a consumed-events
  // watermark owned by the caller.
  std::vector<chain_event> events_since(std::uint64_t cursor) const {
    if (cursor > events_.size())
      throw error(errc::cursor_out_of_range,
                  id_ + ": cursor " + std::to_string(cursor) + " > " +
                      std::to_string(events_.size()));
    return {events_.begin() + static_cast<std::ptrdiff_t>(cursor), events_.end()};
  }

  // Digest of contract state only; rejected transactions leave it unchanged.
  std::string state_hash() const {
    json contracts = json::object();
    for (const auto& [addr, c] : contracts_) contracts[addr] = c.to_json();
    return sha256_hex(canonical_dump(contracts));
  }

  json to_json() const {
    json txs = json::array();
    for (const auto& t : tx_log_) {
      json tj{{"seq", t.seq},       {"global_seq", t.global_seq}, {"sender", t.sender},
              {"target", t.target}, {"op", t.op},                 {"payload", t.payload},
              {"accepted", t.accepted}};
      if (!t.accepted) {
        tj["reject_code"] = t.reject_code;
        tj["reject_detail"] = t.reject_detail;
      }
      txs.push_back(std::move(tj));
    }
    json evs = json::array();
    for (const auto& e : events_)
      evs.push_back({{"chain_id", e.chain_id},
                     {"contract_addr", e.contract_addr},
                     {"token_id", e.token_id},
                     {"kind", std::string(to_string(e.kind))},
                     {"detail", json(e.detail)},
                     {"seq", e.seq},
                     {"global_seq", e.global_seq}});
    json contracts = json::object();
    for (const auto& [addr, c] : contracts_) contracts[addr] = c.to_json();
    return json{{"chain_id", id_},
                {"tx_log", std::move(txs)},
                {"events", std::move(evs)},
                {"contracts", std::move(contracts)}};
  }

  static chain from_json(const json& v) {
    chain c;
    c.id_ = v.at("chain_id").get<std::string>();
    validate_chain_id(c.id_);
    for (const auto& tj : v.at("tx_log")) {
      tx_envelope t;
      t.seq = tj.at("seq").get<std::uint64_t>();
      t.global_seq = tj.at("global_seq").get<std::uint64_t>();
      t.sender = tj.at("sender").get<std::string>();
      t.target = tj.at("target").get<std::string>();
      t.op = tj.at("op").get<std::string>();
      t.payload = tj.at("payload");
      t.accepted = tj.at("accepted").get<bool>();
      if (tj.contains("reject_code")) t.reject_code = tj.at("reject_code").get<std::string>();
      if (tj.contains("reject_detail"))
        t.reject_detail = tj.at("reject_detail").get<std::string>();
      c.tx_log_.push_back(std::move(t));
    }
    for (const auto& ej : v.at("events")) {
      chain_event e;
      e.chain_id = ej.at("chain_id").get<std::string>();
      e.contract_addr = ej.at("contract_addr").get<std::string>();
      e.token_id = ej.at("token_id").get<std::string>();
      e.kind = event_kind_from_string(ej.at("kind").get<std::string>());
      for (const auto& [k, val] : ej.at("detail").items()) e.detail[k] = val.get<std::string>();
      e.seq = ej.at("seq").get<std::uint64_t>();
      e.global_seq = ej.at("global_seq").get<std::uint64_t>();
      c.events_.push_back(std::move(e));
    }
    for (const auto& [addr, cj] : v.at("contracts").items())
      c.contracts_[addr] = nft_contract::from_json(cj);
    return c;
  }

  // Rebuilds a chain by re-submitting a transaction log, reusing the
  // recorded ticks. The result must match the original byte for byte.
  static chain replay(const std::string& id, const std::vector<tx_envelope>& log) {
    chain c(id);
    for (const auto& t : log) {
      seq_clock clock;
      clock.reset(t.global_seq - 1);
      auto res = c.submit(t.sender, t.target, t.op, t.payload, clock);
      if (res.tx->accepted != t.accepted)
        throw error(errc::corrupt_snapshot,
                    "replay diverged at seq " + std::to_string(t.seq));
    }
    return c;
  }

 private:
  void apply_deploy(tx_envelope& tx) {
    const auto& p = tx.payload;
    contract_policy policy;
    if (p.contains("policy_preset")) {
      policy = policy_preset(p.at("policy_preset").get<std::string>());
    } else {
      const auto& pj = p.at("policy");
      policy = {pj.at("tradeable").get<bool>(), pj.at("transferable").get<bool>(),
                pj.at("hidden_metadata").get<bool>(), pj.at("cross_chain").get<bool>()};
    }
    std::string endpoint = p.at("endpoint").get<std::string>();
    if (endpoint.empty()) throw error(errc::invalid_argument, "deploy needs an endpoint");
    std::string addr =
        p.contains("contract_addr") ? canonical_address(p.at("contract_addr").get<std::string>())
                                    : derive_address();
    if (contracts_.count(addr)) throw error(errc::binding_conflict, "address in use: " + addr);
    contracts_.emplace(addr,
                       nft_contract(id_, addr, tx.sender, policy, std::move(endpoint)));
  }

  std::string id_;
  std::map<std::string, nft_contract> contracts_;
  std::vector<tx_envelope> tx_log_;
  std::vector<chain_event> events_;
};

// Registry of simulated chains.
class ledger {
 public:
  chain& create_chain(const std::string& id) {
    validate_chain_id(id);
    auto [it, inserted] = chains_.emplace(id, chain(id));
    if (!inserted) throw error(errc::duplicate_chain, id);
    return it->second;
  }

  bool has_chain(const std::string& id) const { return chains_.count(id) != 0; }

  chain& at(const std::string& id) {
    auto it = chains_.find(id);
    if (it == chains_.end()) throw error(errc::unknown_chain, id);
    return it->second;
  }

  const chain& at(const std::string& id) const {
    auto it = chains_.find(id);
    if (it == chains_.end()) throw error(errc::unknown_chain, id);
    return it->second;
  }

  const std::map<std::string, chain>& chains() const { return chains_; }

  json to_json() const {
    json arr = json::array();
    for (const auto& [id, c] : chains_) arr.push_back(c.to_json());
    return arr;
  }

  static ledger from_json(const json& v) {
    ledger l;
    for (const auto& cj : v) {
      chain c = chain::from_json(cj);
      auto id = c.id();
      l.chains_.emplace(std::move(id), std::move(c));
    }
    return l;
  }

 private:
  std::map<std::string, chain> chains_;
};

}  // namespace apnft
