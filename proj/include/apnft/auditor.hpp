// Copyright 2026 the apnft authors
// SPDX-License-Identifier: Apache-2.0

#ifndef APNFT_AUDITOR_HPP
#define APNFT_AUDITOR_HPP

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "apnft/canonical.hpp"
#include "apnft/contract.hpp"
#include "apnft/world.hpp"

namespace apnft {

// One consistency check over a world snapshot. `violations` holds one line
// per offending object; empty means the check passed.
struct check_result {
  std::string id;
  std::string name;
  std::vector<std::string> violations;

  bool pass() const { return violations.empty(); }
};

struct audit_report {
  std::uint64_t checked_at_seq = 0;
  std::vector<check_result> checks;

  bool clean() const {
    for (const auto& c : checks)
      if (!c.pass()) return false;
    return true;
  }

  std::size_t violation_count() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.violations.size();
    return n;
  }

  json to_json() const {
    json out;
    out["checked_at_seq"] = checked_at_seq;
    json list = json::array();
    json flat = json::array();
    for (const auto& c : checks) {
      json violations = json::array();
      for (const auto& v : c.violations) {
        violations.push_back(v);
        flat.push_back(c.id + ": " + v);
      }
      list.push_back(json{{"id", c.id},
                          {"name", c.name},
                          {"pass", c.pass()},
                          {"violations", std::move(violations)}});
    }
    out["checks"] = std::move(list);
    out["violations"] = std::move(flat);
    return out;
  }

  // Canonical bytes: identical snapshots must audit to identical reports.
  std::string canonical() const { return canonical_dump(to_json()); }

  std::string text() const {
    std::ostringstream os;
    os << "audit at seq " << checked_at_seq << ": "
       << (clean() ? "clean" : std::to_string(violation_count()) + " violation(s)") << "\n";
    for (const auto& c : checks) {
      os << "  " << c.id << " " << c.name << ": " << (c.pass() ? "pass" : "FAIL") << "\n";
      for (const auto& v : c.violations) os << "    - " << v << "\n";
    }
    return os.str();
  }
};

namespace detail {

// A proxy is live while it is Active, or Locked inside a transfer session
// that has not reached a terminal phase. Pending pre-mints and Burned
// tokens are not live.
inline bool is_live(const world& w, const std::string& nft, const token_state& tok) {
  if (tok.status == token_status::active) return true;
  if (tok.status != token_status::locked) return false;
  for (const auto& [id, s] : w.engine().sessions())
    if (s.source == nft && !s.terminal()) return true;
  return false;
}

// Looks a bound token up on its chain; returns nullptr when any hop of the
// path (chain, contract, token) is missing.
inline const token_state* find_token(const world& w, const std::string& nft) {
  nft_id id;
  try {
    id = parse_nft_id(nft);
  } catch (const error&) {
    return nullptr;
  }
  if (!w.chains().has_chain(id.chain_id)) return nullptr;
  const auto& c = w.chains().at(id.chain_id);
  if (!c.has_contract(id.contract_addr)) return nullptr;
  const auto& contract = c.contract(id.contract_addr);
  if (!contract.has_token(id.token_id)) return nullptr;
  return &contract.token(id.token_id);
}

// Every asset has at most one live proxy across all chains.
inline void check_single_liveness(const world& w, std::vector<std::string>& out) {
  std::map<std::string, std::vector<std::string>> live;  // asset -> live nft ids
  for (const auto& [nft, asset] : w.repo().bindings()) {
    const token_state* tok = find_token(w, nft);
    if (tok && is_live(w, nft, *tok)) live[asset].push_back(nft);
  }
  for (const auto& [asset, nfts] : live)
    if (nfts.size() > 1) {
      std::string line = "asset " + asset + " has " + std::to_string(nfts.size()) +
                         " live proxies:";
      for (const auto& n : nfts) line += " " + n;
      out.push_back(line);
    }
}

// Non-hidden Active tokens must carry a token_uri rooted at an endpoint the
// contract has ever announced, and must resolve to the record that names
// them back. Records must point at tokens that exist.
inline void check_resolution_integrity(const world& w, std::vector<std::string>& out) {
  for (const auto& [chain_id, c] : w.chains().chains()) {
    for (const auto& [addr, contract] : c.contracts()) {
      if (contract.policy().hidden_metadata) continue;
      std::set<std::string> known_endpoints{contract.resolution().deploy_endpoint,
                                            contract.resolution().endpoint};
      for (const auto& r : contract.resolution().reconfig_log)
        known_endpoints.insert(r.new_endpoint);
      for (const auto& [token_id, tok] : contract.tokens()) {
        if (tok.status != token_status::active) continue;
        std::string nft = chain_id + "/" + addr + "/" + token_id;
        auto uri = tok.attributes.find("token_uri");
        if (uri == tok.attributes.end()) {
          out.push_back("active token " + nft + " has no token_uri");
          continue;
        }
        bool rooted = false;
        for (const auto& e : known_endpoints)
          rooted |= (uri->second == e + "/" + token_id);
        if (!rooted)
          out.push_back("token " + nft + " token_uri " + uri->second +
                        " matches no announced endpoint");
        auto bound = w.repo().bindings().find(nft);
        if (bound == w.repo().bindings().end()) {
          out.push_back("token " + nft + " token_uri resolves to no record");
          continue;
        }
        const auto& rec = w.repo().latest(bound->second);
        if (rec.nft_id != nft)
          out.push_back("token " + nft + " resolves to record of " + bound->second +
                        " which names " + rec.nft_id);
      }
    }
  }
  // reverse direction: the record's proxy pointer must exist on chain
  for (const auto& asset : w.repo().asset_ids()) {
    const auto& rec = w.repo().latest(asset);
    if (!find_token(w, rec.nft_id))
      out.push_back("record " + asset + " names missing token " + rec.nft_id);
  }
}

// Stored digests must recompute from their versions, and hidden Active
// tokens must anchor the digest of the current version on chain.
inline void check_hash_integrity(const world& w, std::vector<std::string>& out) {
  for (const auto& asset : w.repo().asset_ids()) {
    for (std::uint64_t v = 1; v <= w.repo().version_count(asset); ++v) {
      if (w.repo().stored_digest(asset, v) != metadata_hash(w.repo().record_at(asset, v)))
        out.push_back("record " + asset + " v" + std::to_string(v) +
                      " stored digest does not match its content");
    }
    const auto& rec = w.repo().latest(asset);
    if (rec.visibility != kVisibilityHidden) continue;
    const token_state* tok = find_token(w, rec.nft_id);
    if (!tok || tok->status != token_status::active) continue;
    auto anchor = tok->attributes.find("metadata_hash");
    if (anchor == tok->attributes.end())
      out.push_back("hidden token " + rec.nft_id + " carries no metadata_hash");
    else if (anchor->second != w.repo().stored_digest(asset, rec.version))
      out.push_back("hidden token " + rec.nft_id + " anchors " + anchor->second +
                    " but the current record digest is " +
                    w.repo().stored_digest(asset, rec.version));
  }
}

// A burn that forwards to another chain must be recorded: the asset history
// names the burned proxy, immediately followed by a move to the forward ref.
inline void check_history_completeness(const world& w, std::vector<std::string>& out) {
  for (const auto& [chain_id, c] : w.chains().chains()) {
    for (const auto& [addr, contract] : c.contracts()) {
      for (const auto& [token_id, tok] : contract.tokens()) {
        if (tok.status != token_status::burned || tok.forward_ref.empty()) continue;
        std::string nft = chain_id + "/" + addr + "/" + token_id;
        auto bound = w.repo().bindings().find(nft);
        if (bound == w.repo().bindings().end()) {
          out.push_back("burned token " + nft + " forwards to " + tok.forward_ref +
                        " but is bound to no asset");
          continue;
        }
        const auto& history = w.repo().latest(bound->second).nft_history;
        std::size_t at = history.size();
        for (std::size_t i = 0; i < history.size(); ++i)
          if (history[i].nft_id == nft) at = i;
        if (at == history.size()) {
          out.push_back("burned token " + nft + " missing from history of " + bound->second);
          continue;
        }
        if (at + 1 >= history.size() || history[at + 1].reason != kHistoryCrossChainMoved ||
            history[at + 1].nft_id != tok.forward_ref)
          out.push_back("burned token " + nft + " lacks a move to " + tok.forward_ref +
                        " in history of " + bound->second);
      }
    }
  }
}

// Replays every event log against the contract's policy: no trades where
// trading is off, no transfers where transfer is off, no owner action on a
// locked token, forward burns only by the authority under a cross-chain
// policy.
inline void check_policy_soundness(const world& w, std::vector<std::string>& out) {
  for (const auto& [chain_id, c] : w.chains().chains()) {
    std::map<std::string, bool> locked;  // addr/token -> currently locked
    for (const auto& ev : c.events()) {
      const auto& contract = c.contract(ev.contract_addr);
      const auto& policy = contract.policy();
      std::string key = ev.contract_addr + "/" + ev.token_id;
      std::string nft = chain_id + "/" + key;
      std::string at = " (event seq " + std::to_string(ev.global_seq) + ")";
      switch (ev.kind) {
        case event_kind::locked:
          locked[key] = true;
          break;
        case event_kind::unlocked:
          locked[key] = false;
          break;
        case event_kind::transferred: {
          bool trade = ev.detail.count("trade") != 0;
          if (trade && !policy.tradeable)
            out.push_back("trade of " + nft + " under a no-trade policy" + at);
          if (!trade && !policy.transferable)
            out.push_back("transfer of " + nft + " under a no-transfer policy" + at);
          if (locked[key]) out.push_back("transfer of locked token " + nft + at);
          break;
        }
        case event_kind::burned: {
          auto burner = ev.detail.find("burner");
          bool by_authority =
              burner != ev.detail.end() && burner->second == contract.authority();
          bool forwarded = ev.detail.count("forward_ref") != 0;
          if (forwarded && !policy.cross_chain)
            out.push_back("forwarding burn of " + nft + " under a single-chain policy" + at);
          if (forwarded && !by_authority)
            out.push_back("forwarding burn of " + nft + " by a non-authority" + at);
          if (!by_authority) {
            if (locked[key]) out.push_back("burn of locked token " + nft + at);
            if (!policy.owner_may_burn())
              out.push_back("holder burn of " + nft + " under a no-burn policy" + at);
          }
          break;
        }
        default:
          break;
      }
    }
  }
}

// A delivered asset was claimed by exactly the account that burned its
// proxy, the burn happened first, and delivery happened exactly once.
inline void check_delivery_causality(const world& w, std::vector<std::string>& out) {
  for (const auto& asset : w.custody().asset_ids()) {
    const auto& held = w.custody().record(asset);
    std::vector<const custody_log_entry*> delivered;
    for (const auto& e : held.log)
      if (e.state == kCustodyDeliveredState) delivered.push_back(&e);
    if (held.delivered_to.empty()) {
      if (!delivered.empty())
        out.push_back("asset " + asset + " logged a delivery but names no recipient");
      continue;
    }
    if (delivered.size() != 1) {
      out.push_back("asset " + asset + " delivered " + std::to_string(delivered.size()) +
                    " times");
      continue;
    }
    if (&held.log.back() != delivered[0])
      out.push_back("asset " + asset + " changed state after delivery");
    if (!w.repo().has_asset(asset)) {
      out.push_back("asset " + asset + " delivered without a record");
      continue;
    }
    const auto& rec = w.repo().latest(asset);
    nft_id id;
    try {
      id = parse_nft_id(rec.nft_id);
    } catch (const error&) {
      out.push_back("asset " + asset + " delivered against unparseable proxy " + rec.nft_id);
      continue;
    }
    const chain_event* burn = nullptr;
    if (w.chains().has_chain(id.chain_id))
      for (const auto& ev : w.chains().at(id.chain_id).events())
        if (ev.kind == event_kind::burned && ev.contract_addr == id.contract_addr &&
            ev.token_id == id.token_id)
          burn = &ev;
    if (!burn) {
      out.push_back("asset " + asset + " delivered but proxy " + rec.nft_id +
                    " logged no burn");
      continue;
    }
    auto burner = burn->detail.find("burner");
    if (burner == burn->detail.end() || burner->second != held.delivered_to)
      out.push_back("asset " + asset + " delivered to " + held.delivered_to +
                    " but burned by " +
                    (burner == burn->detail.end() ? std::string("nobody") : burner->second));
    if (burn->global_seq >= delivered[0]->global_seq)
      out.push_back("asset " + asset + " delivery at seq " +
                    std::to_string(delivered[0]->global_seq) + " precedes its burn at seq " +
                    std::to_string(burn->global_seq));
  }
}

// The asset/proxy correlation is one-to-one and agrees with the registry in
// both directions.
inline void check_correlation_injectivity(const world& w, std::vector<std::string>& out) {
  std::map<std::string, std::string> seen;  // nft -> asset
  for (const auto& [asset, nft] : w.engine().correlations()) {
    auto [it, inserted] = seen.emplace(nft, asset);
    if (!inserted)
      out.push_back("proxy " + nft + " correlated to both " + it->second + " and " + asset);
    auto bound = w.repo().bindings().find(nft);
    if (bound == w.repo().bindings().end())
      out.push_back("correlated proxy " + nft + " has no registry binding");
    else if (bound->second != asset)
      out.push_back("proxy " + nft + " correlated to " + asset + " but bound to " +
                    bound->second);
    if (!w.repo().has_asset(asset))
      out.push_back("correlated asset " + asset + " has no record");
    else if (w.repo().latest(asset).nft_id != nft)
      out.push_back("asset " + asset + " correlated to " + nft + " but its record names " +
                    w.repo().latest(asset).nft_id);
  }
  for (const auto& asset : w.repo().asset_ids())
    if (w.engine().correlations().count(asset) == 0)
      out.push_back("recorded asset " + asset + " has no correlation entry");
}

// Resolution endpoint changes must chain without gaps from the deploy-time
// endpoint to the current one, each step authorized by the sync authority.
inline void check_reconfig_trail(const world& w, std::vector<std::string>& out) {
  for (const auto& [chain_id, c] : w.chains().chains()) {
    for (const auto& [addr, contract] : c.contracts()) {
      const auto& cfg = contract.resolution();
      std::string where = chain_id + "/" + addr;
      std::string cur = cfg.deploy_endpoint;
      std::uint64_t last_seq = 0;
      for (const auto& e : cfg.reconfig_log) {
        if (e.authorizer.empty())
          out.push_back("contract " + where + " reconfig to " + e.new_endpoint +
                        " names no authorizer");
        else if (e.authorizer != w.engine().authority())
          out.push_back("contract " + where + " reconfig to " + e.new_endpoint +
                        " authorized by " + e.authorizer);
        if (e.old_endpoint != cur)
          out.push_back("contract " + where + " reconfig from " + e.old_endpoint +
                        " but the endpoint then was " + cur);
        if (e.global_seq <= last_seq)
          out.push_back("contract " + where + " reconfig log out of order at seq " +
                        std::to_string(e.global_seq));
        cur = e.new_endpoint;
        last_seq = e.global_seq;
      }
      if (cur != cfg.endpoint)
        out.push_back("contract " + where + " endpoint " + cfg.endpoint +
                      " does not close its reconfig log (expected " + cur + ")");
    }
  }
}

// The engine journal must be a legal prefix of the saga grammar for every
// session, and deploy markers must pair up. Interrupted sagas (no terminal
// entry yet) are legal; illegal shapes mean the journal was not written
// intent-first.
inline void check_journal_legality(const world& w, std::vector<std::string>& out) {
  static const std::map<std::string, int> kPhaseRank = {
      {std::string(kXferStarted), 0},      {std::string(kXferSourceLocked), 1},
      {std::string(kXferDestPending), 2},  {std::string(kXferSourceBurned), 3},
      {std::string(kXferDestActivated), 4}};

  struct saga {
    int last_rank = -1;
    std::set<int> ranks;
    bool terminal = false;
    bool burn_intent = false;
    bool activate_intent = false;
  };
  std::map<std::string, saga> sagas;
  std::map<std::string, int> deploy_started, deploy_committed;
  std::uint64_t last_seq = 0;

  for (const auto& e : w.engine().journal()) {
    if (e.seq <= last_seq)
      out.push_back("journal seq " + std::to_string(e.seq) + " out of order");
    last_seq = e.seq;

    if (e.kind.rfind("deploy.", 0) == 0) {
      std::string asset = e.data.value("asset_id", "");
      if (e.kind == "deploy.started" && ++deploy_started[asset] > 1)
        out.push_back("asset " + asset + " has multiple deploy starts");
      if (e.kind == "deploy.committed") {
        if (deploy_started[asset] == 0)
          out.push_back("asset " + asset + " committed a deploy that never started");
        if (++deploy_committed[asset] > 1)
          out.push_back("asset " + asset + " has multiple deploy commits");
      }
      continue;
    }
    if (e.kind.rfind("xfer.", 0) != 0) continue;

    std::string id = e.data.value("session", "");
    auto& s = sagas[id];
    if (s.terminal) {
      out.push_back("session " + id + " journaled " + e.kind + " after its terminal entry");
      continue;
    }
    if (e.kind == kXferCommitted || e.kind == kXferReverted) {
      if (s.last_rank < 0) {
        out.push_back("session " + id + " terminated without starting");
      } else if (e.kind == kXferCommitted && !s.burn_intent) {
        out.push_back("session " + id + " committed without a burn intent");
      } else if (e.kind == kXferReverted && s.activate_intent) {
        out.push_back("session " + id + " reverted after an activation intent");
      }
      s.terminal = true;
      continue;
    }
    auto rank = kPhaseRank.find(e.kind);
    if (rank == kPhaseRank.end()) {
      out.push_back("session " + id + " journaled unknown phase " + e.kind);
      continue;
    }
    if (rank->second != s.last_rank + 1)
      out.push_back("session " + id + " journaled " + e.kind + " out of order");
    if (!s.ranks.insert(rank->second).second)
      out.push_back("session " + id + " journaled " + e.kind + " twice");
    s.last_rank = rank->second;
    if (e.kind == kXferSourceBurned) s.burn_intent = true;
    if (e.kind == kXferDestActivated) s.activate_intent = true;
  }
}

}  // namespace detail

// Evaluates every consistency check over a quiescent world. Pure: two
// audits of the same snapshot produce byte-identical reports.
inline audit_report audit(const world& w) {
  using checker = void (*)(const world&, std::vector<std::string>&);
  static const struct {
    const char* id;
    const char* name;
    checker run;
  } kChecks[] = {
      {"C1", "single-liveness", detail::check_single_liveness},
      {"C2", "resolution-integrity", detail::check_resolution_integrity},
      {"C3", "hash-integrity", detail::check_hash_integrity},
      {"C4", "history-completeness", detail::check_history_completeness},
      {"C5", "policy-soundness", detail::check_policy_soundness},
      {"C6", "delivery-causality", detail::check_delivery_causality},
      {"C7", "correlation-injectivity", detail::check_correlation_injectivity},
      {"C8", "reconfig-audit-trail", detail::check_reconfig_trail},
      {"C9", "journal-phase-legality", detail::check_journal_legality},
  };

  audit_report report;
  report.checked_at_seq = w.clock().current();
  for (const auto& c : kChecks) {
    check_result r;
    r.id = c.id;
    r.name = c.name;
    c.run(w, r.violations);
    report.checks.push_back(std::move(r));
  }
  return report;
}

// Audits serialized world bytes; malformed input is a corrupt snapshot.
inline audit_report audit_snapshot(const std::string& bytes) {
  auto w = world::restore(bytes);
  return audit(*w);
}

}  // namespace apnft

#endif  // APNFT_AUDITOR_HPP
