// Copyright 2026 the apnft authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Versioned off-chain metadata store. Every mutation appends a full new
// record version; nothing is edited in place, so any historical digest
// stays resolvable. NFT-to-asset bindings are permanent: an NFT id that
// ever pointed at an asset can never point at another one.

#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "apnft/clock.hpp"
#include "apnft/record.hpp"

namespace apnft {

struct credential {
  std::string asset_id;
  bool revoked = false;
};

class metadata_repo {
 public:
  explicit metadata_repo(seq_clock& clock, std::string custody_endpoint)
      : clock_(&clock), custody_endpoint_(std::move(custody_endpoint)) {}

  const std::string& custody_endpoint() const { return custody_endpoint_; }
  const std::string& sync_authority() const { return sync_authority_; }
  void set_sync_authority(std::string account) { sync_authority_ = std::move(account); }

  bool has_asset(const std::string& asset_id) const { return assets_.count(asset_id) != 0; }

  // Writes version 1 of an asset record, or appends a new version when the
  // caller-supplied fields differ from the latest one. Re-submitting an
  // identical write is a no-op, which makes crash-replay of a deploy safe.
  std::uint64_t put_record(const std::string& caller, const std::string& asset_id,
                           const std::string& nft, const std::string& owner,
                           const std::string& visibility, const json& content) {
    validate_asset_id(asset_id);
    parse_nft_id(nft);
    if (visibility != kVisibilityPublic && visibility != kVisibilityHidden)
      throw error(errc::invalid_argument, "visibility: " + visibility);
    if (!content.is_object()) throw error(errc::invalid_argument, "content must be an object");
    claim_namespace(caller, asset_namespace(asset_id));

    auto it = assets_.find(asset_id);
    if (it == assets_.end()) {
      bind(nft, asset_id);
      metadata_record r;
      r.asset_id = asset_id;
      r.nft_id = nft;
      r.owner = owner;
      r.version = 1;
      r.visibility = visibility;
      r.content = content;
      r.nft_history.push_back({nft, std::string(kHistoryDeployed), clock_->next()});
      store(asset_id, std::move(r));
      return 1;
    }

    const auto& latest = it->second.versions.back();
    if (latest.nft_id != nft)
      throw error(errc::binding_conflict,
                  asset_id + " is bound to " + latest.nft_id + ", not " + nft);
    if (latest.visibility != visibility)
      throw error(errc::invalid_argument, "visibility is fixed at first write");
    if (latest.content == content && latest.owner == owner)
      return latest.version;  // idempotent re-submit

    metadata_record r = latest;
    r.version += 1;
    r.owner = owner;
    r.content = content;
    clock_->next();
    store(asset_id, std::move(r));
    return it->second.versions.back().version;
  }

  // Ownership mirror of on-chain Transferred events. Sync authority only.
  std::uint64_t update_owner(const std::string& caller, const std::string& asset_id,
                             const std::string& owner) {
    require_sync_authority(caller);
    auto& entry = must_find(asset_id);
    const auto& latest = entry.versions.back();
    if (latest.owner == owner) return latest.version;
    metadata_record r = latest;
    r.version += 1;
    r.owner = owner;
    clock_->next();
    store(asset_id, std::move(r));
    return entry.versions.back().version;
  }

  // Appends a proxy-history entry. cross_chain_moved re-points the record
  // at the new NFT; burned leaves the pointer on the burned NFT.
  std::uint64_t append_history(const std::string& caller, const std::string& asset_id,
                               const std::string& nft, const std::string& reason) {
    require_sync_authority(caller);
    if (reason != kHistoryCrossChainMoved && reason != kHistoryBurned)
      throw error(errc::invalid_argument, "history reason: " + reason);
    parse_nft_id(nft);
    auto& entry = must_find(asset_id);
    metadata_record r = entry.versions.back();
    if (reason == kHistoryCrossChainMoved) {
      bind(nft, asset_id);
      r.nft_id = nft;
    } else if (r.nft_id != nft) {
      throw error(errc::invalid_argument, "burned NFT is not the current proxy: " + nft);
    }
    r.version += 1;
    r.nft_history.push_back({nft, reason, clock_->next()});
    store(asset_id, std::move(r));
    return entry.versions.back().version;
  }

  // Read access. Public records are open; hidden records need the namespace
  // provider, the sync authority, or a live credential for the asset.
  const metadata_record& get_record(const std::string& caller, const std::string& id,
                                    const std::string& cred_token = "") const {
    const auto& entry = resolve_entry(id);
    const auto& latest = entry.versions.back();
    check_access(caller, latest, cred_token);
    return latest;
  }

  const metadata_record& get_version(const std::string& caller, const std::string& asset_id,
                                     std::uint64_t version,
                                     const std::string& cred_token = "") const {
    const auto& entry = must_find(asset_id);
    if (version == 0 || version > entry.versions.size())
      throw error(errc::not_found, asset_id + " v" + std::to_string(version));
    const auto& r = entry.versions[version - 1];
    check_access(caller, r, cred_token);
    return r;
  }

  struct resolved {
    const metadata_record* record = nullptr;
    bool stale = false;  // digest names a superseded version
  };

  // Maps a digest back to the exact record version it was computed from.
  resolved resolve_hash(const std::string& caller, const std::string& digest,
                        const std::string& cred_token = "") const {
    auto it = digest_index_.find(digest);
    if (it == digest_index_.end()) throw error(errc::not_found, "digest " + digest);
    const auto& entry = must_find(it->second.first);
    const auto& r = entry.versions[it->second.second - 1];
    check_access(caller, r, cred_token);
    return {&r, it->second.second != entry.versions.back().version};
  }

  std::string issue_credential(const std::string& caller, const std::string& asset_id) {
    const auto& entry = must_find(asset_id);
    require_provider(caller, asset_namespace(asset_id));
    (void)entry;
    clock_->next();
    auto token = "cred-" + sha256_hex(asset_id + "|" + std::to_string(++credential_counter_))
                               .substr(0, 16);
    credentials_[token] = {asset_id, false};
    return token;
  }

  void revoke_credential(const std::string& caller, const std::string& token) {
    auto it = credentials_.find(token);
    if (it == credentials_.end()) throw error(errc::unknown_credential, token);
    require_provider(caller, asset_namespace(it->second.asset_id));
    clock_->next();
    it->second.revoked = true;
  }

  bool has_binding(const std::string& nft) const { return bindings_.count(nft) != 0; }

  const std::string& binding_of(const std::string& nft) const {
    auto it = bindings_.find(nft);
    if (it == bindings_.end()) throw error(errc::not_found, "no asset bound to " + nft);
    return it->second;
  }

  // Unchecked accessors for auditing and persistence.
  const metadata_record& latest(const std::string& asset_id) const {
    return must_find(asset_id).versions.back();
  }
  std::uint64_t version_count(const std::string& asset_id) const {
    return must_find(asset_id).versions.size();
  }
  const metadata_record& record_at(const std::string& asset_id, std::uint64_t version) const {
    const auto& entry = must_find(asset_id);
    if (version == 0 || version > entry.versions.size())
      throw error(errc::not_found, asset_id + " v" + std::to_string(version));
    return entry.versions[version - 1];
  }
  const std::string& stored_digest(const std::string& asset_id, std::uint64_t version) const {
    const auto& entry = must_find(asset_id);
    if (version == 0 || version > entry.stored_digests.size())
      throw error(errc::not_found, asset_id + " v" + std::to_string(version));
    return entry.stored_digests[version - 1];
  }
  std::vector<std::string> asset_ids() const {
    std::vector<std::string> out;
    for (const auto& [id, _] : assets_) out.push_back(id);
    return out;
  }
  const std::map<std::string, std::string>& bindings() const { return bindings_; }
  const std::map<std::string, credential>& credentials() const { return credentials_; }
  const std::map<std::string, std::string>& providers() const { return providers_; }

  json to_json() const {
    json assets = json::object();
    for (const auto& [id, e] : assets_) {
      json versions = json::array();
      for (const auto& r : e.versions) versions.push_back(record_to_json(r));
      assets[id] = json{{"versions", std::move(versions)},
                        {"stored_digests", json(e.stored_digests)}};
    }
    json creds = json::object();
    for (const auto& [tok, c] : credentials_)
      creds[tok] = json{{"asset_id", c.asset_id}, {"revoked", c.revoked}};
    return json{{"custody_endpoint", custody_endpoint_},
                {"sync_authority", sync_authority_},
                {"credential_counter", credential_counter_},
                {"providers", json(providers_)},
                {"bindings", json(bindings_)},
                {"credentials", std::move(creds)},
                {"assets", std::move(assets)}};
  }

  static metadata_repo from_json(seq_clock& clock, const json& v) {
    metadata_repo repo(clock, v.at("custody_endpoint").get<std::string>());
    repo.sync_authority_ = v.at("sync_authority").get<std::string>();
    repo.credential_counter_ = v.at("credential_counter").get<std::uint64_t>();
    for (const auto& [ns, acct] : v.at("providers").items())
      repo.providers_[ns] = acct.get<std::string>();
    for (const auto& [nft, asset] : v.at("bindings").items())
      repo.bindings_[nft] = asset.get<std::string>();
    for (const auto& [tok, cj] : v.at("credentials").items())
      repo.credentials_[tok] = {cj.at("asset_id").get<std::string>(),
                                cj.at("revoked").get<bool>()};
    for (const auto& [id, ej] : v.at("assets").items()) {
      asset_entry e;
      for (const auto& rj : ej.at("versions")) e.versions.push_back(record_from_json(rj));
      for (const auto& d : ej.at("stored_digests")) e.stored_digests.push_back(d.get<std::string>());
      if (e.versions.empty() || e.versions.size() != e.stored_digests.size())
        throw error(errc::corrupt_snapshot, "asset " + id);
      repo.assets_[id] = std::move(e);
    }
    repo.rebuild_digest_index();
    return repo;
  }

 private:
  struct asset_entry {
    std::vector<metadata_record> versions;
    // Digest recorded at write time. Recomputing from the stored record
    // must reproduce it; divergence means silent tampering.
    std::vector<std::string> stored_digests;
  };

  void claim_namespace(const std::string& caller, const std::string& ns) {
    auto it = providers_.find(ns);
    if (it == providers_.end()) {
      providers_[ns] = caller;
      return;
    }
    if (it->second != caller)
      throw error(errc::not_authorized,
                  "namespace " + ns + " belongs to provider " + it->second);
  }

  void require_provider(const std::string& caller, const std::string& ns) const {
    auto it = providers_.find(ns);
    if (it == providers_.end() || it->second != caller)
      throw error(errc::not_authorized, caller + " is not the provider of " + ns);
  }

  void require_sync_authority(const std::string& caller) const {
    if (caller != sync_authority_ || sync_authority_.empty())
      throw error(errc::not_authorized, caller + " is not the sync authority");
  }

  void bind(const std::string& nft, const std::string& asset_id) {
    auto it = bindings_.find(nft);
    if (it != bindings_.end()) {
      if (it->second != asset_id)
        throw error(errc::binding_conflict,
                    nft + " is already bound to " + it->second);
      return;
    }
    bindings_[nft] = asset_id;
  }

  void check_access(const std::string& caller, const metadata_record& r,
                    const std::string& cred_token) const {
    if (r.visibility != kVisibilityHidden) return;
    if (!caller.empty() && (caller == sync_authority_)) return;
    auto pit = providers_.find(asset_namespace(r.asset_id));
    if (pit != providers_.end() && pit->second == caller) return;
    if (!cred_token.empty()) {
      auto cit = credentials_.find(cred_token);
      if (cit == credentials_.end()) throw error(errc::unknown_credential, cred_token);
      if (!cit->second.revoked && cit->second.asset_id == r.asset_id) return;
    }
    throw error(errc::access_denied, r.asset_id + " is hidden");
  }

  asset_entry& must_find(const std::string& asset_id) {
    auto it = assets_.find(asset_id);
    if (it == assets_.end()) throw error(errc::unknown_asset, asset_id);
    return it->second;
  }
  const asset_entry& must_find(const std::string& asset_id) const {
    auto it = assets_.find(asset_id);
    if (it == assets_.end()) throw error(errc::unknown_asset, asset_id);
    return it->second;
  }

  // Resolves either an asset id or an NFT id (via binding) to its entry.
  const asset_entry& resolve_entry(const std::string& id) const {
    if (id.find('/') != std::string::npos) {
      auto bit = bindings_.find(parse_nft_id(id).str());
      if (bit == bindings_.end()) throw error(errc::not_found, "no asset bound to " + id);
      return must_find(bit->second);
    }
    return must_find(id);
  }

  void store(const std::string& asset_id, metadata_record&& r) {
    auto digest = metadata_hash(r);
    auto& entry = assets_[asset_id];
    entry.versions.push_back(std::move(r));
    entry.stored_digests.push_back(digest);
    digest_index_[digest] = {asset_id, entry.versions.back().version};
  }

  void rebuild_digest_index() {
    digest_index_.clear();
    for (const auto& [id, e] : assets_)
      for (std::size_t i = 0; i < e.stored_digests.size(); ++i)
        digest_index_[e.stored_digests[i]] = {id, e.versions[i].version};
  }

  seq_clock* clock_;
  std::string custody_endpoint_;
  std::string sync_authority_;
  std::map<std::string, asset_entry> assets_;
  std::map<std::string, std::string> providers_;  // namespace -> account
  std::map<std::string, std::string> bindings_;   // nft id -> asset id
  std::map<std::string, credential> credentials_;
  std::map<std::string, std::pair<std::string, std::uint64_t>> digest_index_;
  std::uint64_t credential_counter_ = 0;
};

}  // namespace apnft
