// Copyright 2026 the apnft authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// ERC-721-style token contract with a policy mask that fixes, at deploy
// time, what holders may do. Lifecycle is a strict state machine:
//   pending -> active -> locked -> active, active|locked -> burned.
// Burned is terminal. Pending tokens are pre-mints visible only to the
// contract authority; removing one retires its id forever.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "apnft/canonical.hpp"
#include "apnft/errors.hpp"
#include "apnft/ids.hpp"
#include "apnft/sha256.hpp"

namespace apnft {

enum class token_status { pending, active, locked, burned };

inline constexpr std::string_view to_string(token_status s) {
  switch (s) {
    case token_status::pending: return "pending";
    case token_status::active: return "active";
    case token_status::locked: return "locked";
    case token_status::burned: return "burned";
  }
  return "?";
}

inline token_status status_from_string(std::string_view s) {
  if (s == "pending") return token_status::pending;
  if (s == "active") return token_status::active;
  if (s == "locked") return token_status::locked;
  if (s == "burned") return token_status::burned;
  throw error(errc::invalid_argument, "token status: " + std::string(s));
}

// The only legal status transitions. Everything else is a bug upstream,
// so the guard throws rather than rejects.
inline void assert_transition(token_status from, token_status to) {
  const bool ok = (from == token_status::pending && to == token_status::active) ||
                  (from == token_status::active && to == token_status::locked) ||
                  (from == token_status::locked && to == token_status::active) ||
                  (from == token_status::active && to == token_status::burned) ||
                  (from == token_status::locked && to == token_status::burned);
  if (!ok)
    throw error(errc::wrong_status, std::string("illegal transition ") +
                                        std::string(to_string(from)) + " -> " +
                                        std::string(to_string(to)));
}

enum class event_kind { minted, transferred, burned, attribute_set, locked, unlocked, activated };

inline constexpr std::string_view to_string(event_kind k) {
  switch (k) {
    case event_kind::minted: return "Minted";
    case event_kind::transferred: return "Transferred";
    case event_kind::burned: return "Burned";
    case event_kind::attribute_set: return "AttributeSet";
    case event_kind::locked: return "Locked";
    case event_kind::unlocked: return "Unlocked";
    case event_kind::activated: return "Activated";
  }
  return "?";
}

inline event_kind event_kind_from_string(std::string_view s) {
  if (s == "Minted") return event_kind::minted;
  if (s == "Transferred") return event_kind::transferred;
  if (s == "Burned") return event_kind::burned;
  if (s == "AttributeSet") return event_kind::attribute_set;
  if (s == "Locked") return event_kind::locked;
  if (s == "Unlocked") return event_kind::unlocked;
  if (s == "Activated") return event_kind::activated;
  throw error(errc::invalid_argument, "event kind: " + std::string(s));
}

// Capability mask fixed at deploy time.
struct contract_policy {
  bool tradeable = false;
  bool transferable = false;
  bool hidden_metadata = false;
  bool cross_chain = false;

  friend bool operator==(const contract_policy&, const contract_policy&) = default;

  // Holders may dispose of (burn) a token only when they could also part
  // with it by transfer or sale; otherwise lifecycle belongs to the
  // authority alone.
  bool owner_may_burn() const { return tradeable || transferable; }

  std::string tag() const {
    std::string t = "----";
    if (tradeable) t[0] = 'T';
    if (transferable) t[1] = 'X';
    if (hidden_metadata) t[2] = 'H';
    if (cross_chain) t[3] = 'C';
    return t;
  }
};

inline constexpr contract_policy kPolicyTradeOnly{true, true, false, false};
inline constexpr contract_policy kPolicyCrossChain{true, true, false, true};
inline constexpr contract_policy kPolicyHidden{true, true, true, false};
inline constexpr contract_policy kPolicyZeroValue{false, false, false, false};

inline contract_policy policy_preset(std::string_view name) {
  if (name == "trade_only") return kPolicyTradeOnly;
  if (name == "cross_chain") return kPolicyCrossChain;
  if (name == "hidden") return kPolicyHidden;
  if (name == "zero_value") return kPolicyZeroValue;
  throw error(errc::invalid_argument, "policy preset: " + std::string(name));
}

inline std::string_view policy_preset_name(const contract_policy& p) {
  if (p == kPolicyTradeOnly) return "trade_only";
  if (p == kPolicyCrossChain) return "cross_chain";
  if (p == kPolicyHidden) return "hidden";
  if (p == kPolicyZeroValue) return "zero_value";
  return "custom";
}

struct token_state {
  std::string token_id;
  std::string owner;
  token_status status = token_status::pending;
  std::map<std::string, std::string> attributes;
  std::string forward_ref;  // set on cross-chain burn, empty otherwise

  friend bool operator==(const token_state&, const token_state&) = default;
};

struct chain_event {
  std::string chain_id;
  std::string contract_addr;
  std::string token_id;
  event_kind kind = event_kind::minted;
  std::map<std::string, std::string> detail;
  std::uint64_t seq = 0;         // index of the transaction that emitted it
  std::uint64_t global_seq = 0;  // world-wide ordering tick of that transaction

  friend bool operator==(const chain_event&, const chain_event&) = default;
};

struct reconfig_entry {
  std::string authorizer;
  std::string old_endpoint;
  std::string new_endpoint;
  std::uint64_t global_seq = 0;

  friend bool operator==(const reconfig_entry&, const reconfig_entry&) = default;
};

// Where off-chain metadata for this contract's tokens is resolved.
struct resolution_config {
  std::string endpoint;
  std::string deploy_endpoint;
  std::vector<reconfig_entry> reconfig_log;

  friend bool operator==(const resolution_config&, const resolution_config&) = default;
};

class nft_contract {
 public:
  nft_contract() = default;
  nft_contract(std::string chain_id, std::string addr, std::string authority,
               contract_policy policy, std::string endpoint)
      : chain_id_(std::move(chain_id)),
        addr_(std::move(addr)),
        authority_(std::move(authority)),
        policy_(policy) {
    resolution_.endpoint = endpoint;
    resolution_.deploy_endpoint = std::move(endpoint);
  }

  const std::string& addr() const { return addr_; }
  const std::string& chain_id() const { return chain_id_; }
  const std::string& authority() const { return authority_; }
  const contract_policy& policy() const { return policy_; }
  const resolution_config& resolution() const { return resolution_; }
  const std::map<std::string, token_state>& tokens() const { return tokens_; }
  const std::set<std::string>& retired() const { return retired_; }

  bool has_token(const std::string& token_id) const { return tokens_.count(token_id) != 0; }

  const token_state& token(const std::string& token_id) const {
    auto it = tokens_.find(token_id);
    if (it == tokens_.end()) throw error(errc::unknown_token, ref(token_id));
    return it->second;
  }

  nft_id id_of(const std::string& token_id) const { return {chain_id_, addr_, token_id}; }

  std::string token_uri(const std::string& token_id) const {
    return resolution_.endpoint + "/" + token_id;
  }

  // Smallest unused integer id. Does not reserve; mint claims it.
  std::string peek_next_id() const {
    std::uint64_t n = next_auto_id_;
    while (tokens_.count(std::to_string(n)) || retired_.count(std::to_string(n))) ++n;
    return std::to_string(n);
  }

  // Applies one operation for `sender`, appending emitted events to `out`.
  // Throws apnft::error on rejection; the caller owns atomicity (it applies
  // to a copy and commits only on success).
  void apply(const std::string& sender, const std::string& op, const json& payload,
             std::vector<chain_event>& out) {
    if (op == "mint") return mint(sender, payload, out);
    if (op == "activate") return activate(sender, payload, out);
    if (op == "transfer") return move_token(sender, payload, out, false);
    if (op == "trade") return move_token(sender, payload, out, true);
    if (op == "burn") return burn(sender, payload, out);
    if (op == "lock") return set_lock(sender, payload, out, true);
    if (op == "unlock") return set_lock(sender, payload, out, false);
    if (op == "set_attribute") return set_attribute(sender, payload, out);
    if (op == "remove_pending") return remove_pending(sender, payload);
    if (op == "set_resolution") return set_resolution(sender, payload);
    throw error(errc::invalid_argument, "unknown contract op: " + op);
  }

  // A set_resolution needs the world tick for its audit trail; the chain
  // stamps it here before apply.
  void stamp_next_global_seq(std::uint64_t v) { pending_global_seq_ = v; }

  json to_json() const {
    json toks = json::object();
    for (const auto& [id, t] : tokens_) {
      json tj{{"token_id", t.token_id},
              {"owner", t.owner},
              {"status", std::string(to_string(t.status))},
              {"attributes", json(t.attributes)}};
      if (!t.forward_ref.empty()) tj["forward_ref"] = t.forward_ref;
      toks[id] = std::move(tj);
    }
    json reconfigs = json::array();
    for (const auto& r : resolution_.reconfig_log)
      reconfigs.push_back({{"authorizer", r.authorizer},
                           {"old_endpoint", r.old_endpoint},
                           {"new_endpoint", r.new_endpoint},
                           {"global_seq", r.global_seq}});
    return json{{"chain_id", chain_id_},
                {"addr", addr_},
                {"authority", authority_},
                {"policy",
                 {{"tradeable", policy_.tradeable},
                  {"transferable", policy_.transferable},
                  {"hidden_metadata", policy_.hidden_metadata},
                  {"cross_chain", policy_.cross_chain}}},
                {"resolution",
                 {{"endpoint", resolution_.endpoint},
                  {"deploy_endpoint", resolution_.deploy_endpoint},
                  {"reconfig_log", std::move(reconfigs)}}},
                {"next_auto_id", next_auto_id_},
                {"retired", json(std::vector<std::string>(retired_.begin(), retired_.end()))},
                {"tokens", std::move(toks)}};
  }

  static nft_contract from_json(const json& v) {
    nft_contract c;
    c.chain_id_ = v.at("chain_id").get<std::string>();
    c.addr_ = v.at("addr").get<std::string>();
    c.authority_ = v.at("authority").get<std::string>();
    const auto& p = v.at("policy");
    c.policy_ = {p.at("tradeable").get<bool>(), p.at("transferable").get<bool>(),
                 p.at("hidden_metadata").get<bool>(), p.at("cross_chain").get<bool>()};
    const auto& r = v.at("resolution");
    c.resolution_.endpoint = r.at("endpoint").get<std::string>();
    c.resolution_.deploy_endpoint = r.at("deploy_endpoint").get<std::string>();
    for (const auto& e : r.at("reconfig_log"))
      c.resolution_.reconfig_log.push_back({e.at("authorizer").get<std::string>(),
                                            e.at("old_endpoint").get<std::string>(),
                                            e.at("new_endpoint").get<std::string>(),
                                            e.at("global_seq").get<std::uint64_t>()});
    c.next_auto_id_ = v.at("next_auto_id").get<std::uint64_t>();
    for (const auto& id : v.at("retired")) c.retired_.insert(id.get<std::string>());
    for (const auto& [id, tj] : v.at("tokens").items()) {
      token_state t;
      t.token_id = tj.at("token_id").get<std::string>();
      t.owner = tj.at("owner").get<std::string>();
      t.status = status_from_string(tj.at("status").get<std::string>());
      for (const auto& [k, val] : tj.at("attributes").items())
        t.attributes[k] = val.get<std::string>();
      if (tj.contains("forward_ref")) t.forward_ref = tj.at("forward_ref").get<std::string>();
      c.tokens_[id] = std::move(t);
    }
    return c;
  }

 private:
  std::string ref(const std::string& token_id) const {
    return chain_id_ + "/" + addr_ + "/" + token_id;
  }

  static std::string need_string(const json& payload, const char* key) {
    if (!payload.contains(key) || !payload.at(key).is_string())
      throw error(errc::invalid_argument, std::string("payload needs string field: ") + key);
    return payload.at(key).get<std::string>();
  }

  void require_authority(const std::string& sender) const {
    if (sender != authority_)
      throw error(errc::not_authorized, "sender " + sender + " is not the contract authority");
  }

  void emit(std::vector<chain_event>& out, const std::string& token_id, event_kind kind,
            std::map<std::string, std::string> detail) const {
    chain_event e;
    e.token_id = token_id;
    e.kind = kind;
    e.detail = std::move(detail);
    out.push_back(std::move(e));
  }

  void mint(const std::string& sender, const json& payload, std::vector<chain_event>& out) {
    require_authority(sender);
    auto token_id = need_string(payload, "token_id");
    validate_token_id(token_id);
    auto owner = need_string(payload, "owner");
    auto status = status_from_string(need_string(payload, "status"));
    if (status != token_status::pending && status != token_status::active)
      throw error(errc::wrong_status, "mint status must be pending or active");
    if (tokens_.count(token_id) || retired_.count(token_id))
      throw error(errc::token_exists, ref(token_id));

    token_state t;
    t.token_id = token_id;
    t.owner = std::move(owner);
    t.status = status;
    if (payload.contains("attributes")) {
      for (const auto& [k, v] : payload.at("attributes").items()) {
        if (!v.is_string())
          throw error(errc::invalid_argument, "attribute values must be strings: " + k);
        t.attributes[k] = v.get<std::string>();
      }
    }
    emit(out, token_id, event_kind::minted,
         {{"owner", t.owner}, {"by", sender}, {"status", std::string(to_string(status))}});
    std::uint64_t n = 0;
    bool numeric_fits = token_id.size() <= 19;
    if (numeric_fits) {
      for (char c : token_id) n = n * 10 + static_cast<std::uint64_t>(c - '0');
      if (n >= next_auto_id_) next_auto_id_ = n + 1;
    }
    tokens_.emplace(std::move(token_id), std::move(t));
  }

  void activate(const std::string& sender, const json& payload, std::vector<chain_event>& out) {
    require_authority(sender);
    auto token_id = need_string(payload, "token_id");
    auto it = tokens_.find(token_id);
    if (it == tokens_.end()) throw error(errc::unknown_token, ref(token_id));
    if (it->second.status != token_status::pending)
      throw error(errc::wrong_status, "activate needs a pending token: " + ref(token_id));
    assert_transition(it->second.status, token_status::active);
    it->second.status = token_status::active;
    emit(out, token_id, event_kind::activated, {{"by", sender}});
  }

  // Pending tokens are invisible to holders: existence is checked first and
  // reports unknown_token, then status, then authorization, then policy.
  token_state& visible_token(const std::string& sender, const std::string& token_id) {
    auto it = tokens_.find(token_id);
    if (it == tokens_.end() ||
        (it->second.status == token_status::pending && sender != authority_))
      throw error(errc::unknown_token, ref(token_id));
    return it->second;
  }

  void move_token(const std::string& sender, const json& payload, std::vector<chain_event>& out,
                  bool trade) {
    auto token_id = need_string(payload, "token_id");
    auto to = need_string(payload, "to");
    auto& t = visible_token(sender, token_id);
    if (t.status == token_status::pending)
      throw error(errc::wrong_status, "token not yet activated: " + ref(token_id));
    if (t.status == token_status::burned) throw error(errc::token_burned, ref(token_id));
    if (t.status == token_status::locked) throw error(errc::token_locked, ref(token_id));
    if (sender != t.owner) throw error(errc::not_owner, sender + " does not own " + ref(token_id));
    if (trade && !policy_.tradeable)
      throw error(errc::policy_violation, "contract forbids trading: " + ref(token_id));
    if (!trade && !policy_.transferable)
      throw error(errc::policy_violation, "contract forbids transfer: " + ref(token_id));

    std::map<std::string, std::string> detail{{"from", t.owner}, {"to", to}};
    if (trade) {
      detail["trade"] = "true";
      detail["payment"] = need_string(payload, "payment");
    }
    t.owner = std::move(to);
    emit(out, token_id, event_kind::transferred, std::move(detail));
  }

  void burn(const std::string& sender, const json& payload, std::vector<chain_event>& out) {
    auto token_id = need_string(payload, "token_id");
    auto it = tokens_.find(token_id);
    if (it == tokens_.end()) throw error(errc::unknown_token, ref(token_id));
    auto& t = it->second;
    if (t.status == token_status::pending) {
      if (sender == authority_)
        throw error(errc::wrong_status, "cannot burn a pending token: " + ref(token_id));
      throw error(errc::unknown_token, ref(token_id));
    }
    if (t.status == token_status::burned) throw error(errc::already_burned, ref(token_id));

    std::string forward_ref;
    if (payload.contains("forward_ref")) {
      forward_ref = need_string(payload, "forward_ref");
      parse_nft_id(forward_ref);
      if (!policy_.cross_chain)
        throw error(errc::policy_violation, "forward_ref needs a cross-chain contract");
      if (sender != authority_)
        throw error(errc::not_authorized, "only the authority burns with forward_ref");
    }

    if (sender != authority_) {
      if (sender != t.owner)
        throw error(errc::not_authorized, sender + " may not burn " + ref(token_id));
      if (t.status == token_status::locked) throw error(errc::token_locked, ref(token_id));
      if (!policy_.owner_may_burn())
        throw error(errc::policy_violation, "holders cannot burn under this policy");
    }

    assert_transition(t.status, token_status::burned);
    t.status = token_status::burned;
    std::map<std::string, std::string> detail{{"burner", sender}};
    if (!forward_ref.empty()) {
      t.forward_ref = forward_ref;
      detail["forward_ref"] = forward_ref;
    }
    emit(out, token_id, event_kind::burned, std::move(detail));
  }

  void set_lock(const std::string& sender, const json& payload, std::vector<chain_event>& out,
                bool lock) {
    auto token_id = need_string(payload, "token_id");
    auto it = tokens_.find(token_id);
    if (it == tokens_.end() ||
        (it->second.status == token_status::pending && sender != authority_))
      throw error(errc::unknown_token, ref(token_id));
    auto& t = it->second;
    if (t.status == token_status::pending)
      throw error(errc::wrong_status, "token not yet activated: " + ref(token_id));
    if (t.status == token_status::burned) throw error(errc::token_burned, ref(token_id));
    const auto want_from = lock ? token_status::active : token_status::locked;
    if (t.status != want_from)
      throw error(errc::wrong_status, std::string(lock ? "lock" : "unlock") + " from " +
                                          std::string(to_string(t.status)));
    require_authority(sender);
    assert_transition(t.status, lock ? token_status::locked : token_status::active);
    t.status = lock ? token_status::locked : token_status::active;
    emit(out, token_id, lock ? event_kind::locked : event_kind::unlocked, {{"by", sender}});
  }

  void set_attribute(const std::string& sender, const json& payload,
                     std::vector<chain_event>& out) {
    auto token_id = need_string(payload, "token_id");
    auto key = need_string(payload, "key");
    auto value = need_string(payload, "value");
    auto it = tokens_.find(token_id);
    if (it == tokens_.end() ||
        (it->second.status == token_status::pending && sender != authority_))
      throw error(errc::unknown_token, ref(token_id));
    auto& t = it->second;
    if (t.status == token_status::burned) throw error(errc::token_burned, ref(token_id));
    if (t.status == token_status::locked) throw error(errc::token_locked, ref(token_id));
    require_authority(sender);
    t.attributes[key] = value;
    emit(out, token_id, event_kind::attribute_set, {{"by", sender}, {"key", key}, {"value", value}});
  }

  // Retires a never-activated pre-mint. Emits nothing: the token never
  // existed as far as holders are concerned, but its id is never reused.
  void remove_pending(const std::string& sender, const json& payload) {
    require_authority(sender);
    auto token_id = need_string(payload, "token_id");
    auto it = tokens_.find(token_id);
    if (it == tokens_.end()) throw error(errc::unknown_token, ref(token_id));
    if (it->second.status != token_status::pending)
      throw error(errc::wrong_status, "remove_pending needs a pending token: " + ref(token_id));
    retired_.insert(token_id);
    tokens_.erase(it);
  }

  void set_resolution(const std::string& sender, const json& payload) {
    require_authority(sender);
    auto endpoint = need_string(payload, "endpoint");
    if (endpoint.empty()) throw error(errc::invalid_argument, "empty resolution endpoint");
    resolution_.reconfig_log.push_back(
        {sender, resolution_.endpoint, endpoint, pending_global_seq_});
    resolution_.endpoint = std::move(endpoint);
  }

  std::string chain_id_;
  std::string addr_;
  std::string authority_;
  contract_policy policy_;
  resolution_config resolution_;
  std::map<std::string, token_state> tokens_;
  std::set<std::string> retired_;
  std::uint64_t next_auto_id_ = 1;
  std::uint64_t pending_global_seq_ = 0;
};

}  // namespace apnft
