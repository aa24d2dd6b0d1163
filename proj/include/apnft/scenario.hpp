// Copyright 2026 the apnft authors
// SPDX-License-Identifier: Apache-2.0
//
// Scripted and randomized end-to-end scenarios. A scenario is a list of
// steps executed by named actors against one world; crash injections name
// a step and a cooperative crash point. Runs emit a line-oriented trace
// whose bytes are a pure function of (scenario, seed).

#ifndef APNFT_SCENARIO_HPP
#define APNFT_SCENARIO_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "apnft/auditor.hpp"
#include "apnft/world.hpp"

namespace apnft {

inline constexpr std::uint64_t kScenarioFormatVersion = 1;

inline constexpr std::string_view kScenarioActions[] = {
    "create_chain",    "init_services", "place_custody",    "deploy_asset",
    "update_state",    "transfer",      "trade",            "burn",
    "xchain_transfer", "issue_credential", "get_metadata",  "audit",
};

struct scenario_step {
  std::string actor;
  std::string action;
  json params = json::object();
};

struct crash_injection {
  std::uint64_t step = 0;
  std::string point;
};

struct scenario {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<scenario_step> steps;
  std::vector<crash_injection> injections;
};

inline json scenario_to_json(const scenario& sc) {
  json steps = json::array();
  for (const auto& s : sc.steps)
    steps.push_back(json{{"actor", s.actor}, {"action", s.action}, {"params", s.params}});
  json injections = json::array();
  for (const auto& i : sc.injections)
    injections.push_back(json{{"step", i.step}, {"point", i.point}});
  return json{{"format_version", kScenarioFormatVersion},
              {"name", sc.name},
              {"seed", sc.seed},
              {"steps", std::move(steps)},
              {"injections", std::move(injections)}};
}

inline bool known_crash_point(std::string_view point) {
  for (auto p : kCrashPoints)
    if (p == point) return true;
  return false;
}

// Strict parse: unknown actions and crash points are authoring mistakes and
// must fail before any step runs.
inline scenario scenario_from_json(const json& v) {
  if (!v.is_object() || !v.contains("format_version") ||
      v.at("format_version") != kScenarioFormatVersion)
    throw error(errc::invalid_argument, "scenario format_version must be 1");
  scenario sc;
  sc.name = v.at("name").get<std::string>();
  if (sc.name.empty()) throw error(errc::invalid_argument, "scenario name is empty");
  sc.seed = v.at("seed").get<std::uint64_t>();
  for (const auto& sj : v.at("steps")) {
    scenario_step s;
    s.actor = sj.at("actor").get<std::string>();
    s.action = sj.at("action").get<std::string>();
    bool known = false;
    for (auto a : kScenarioActions) known |= (a == s.action);
    if (!known) throw error(errc::invalid_argument, "unknown action: " + s.action);
    s.params = sj.value("params", json::object());
    if (!s.params.is_object()) throw error(errc::invalid_argument, "params must be an object");
    sc.steps.push_back(std::move(s));
  }
  if (v.contains("injections")) {
    for (const auto& ij : v.at("injections")) {
      crash_injection c;
      c.step = ij.at("step").get<std::uint64_t>();
      c.point = ij.at("point").get<std::string>();
      if (!known_crash_point(c.point))
        throw error(errc::invalid_argument, "unknown crash point: " + c.point);
      if (c.step >= sc.steps.size())
        throw error(errc::invalid_argument, "injection step out of range");
      sc.injections.push_back(std::move(c));
    }
  }
  return sc;
}

struct run_options {
  bool audit_each_step = false;
  bool parallel_assets = false;
};

struct run_result {
  audit_report report;                  // final audit over the settled world
  std::vector<std::string> trace;       // canonical JSON, one line per entry
  std::string snapshot;                 // final world bytes
  std::vector<std::pair<std::size_t, std::string>> crash_snapshots;  // by step
  std::uint64_t rejected_steps = 0;
  std::uint64_t crashes = 0;
  std::uint64_t violation_total = 0;    // across all audits, final included

  int exit_code() const { return violation_total == 0 ? 0 : 1; }

  std::string trace_text() const {
    std::string out;
    for (const auto& line : trace) {
      out += line;
      out += '\n';
    }
    return out;
  }
};

class scenario_runner {
 public:
  run_result run(const scenario& sc, const run_options& opt = {}) {
    world_ = std::make_unique<world>();
    issued_.clear();
    result_ = run_result{};
    options_ = opt;

    trace(json{{"format_version", kScenarioFormatVersion},
               {"type", "scenario"},
               {"scenario", scenario_to_json(sc)},
               {"options",
                json{{"audit_each_step", opt.audit_each_step},
                     {"parallel_assets", opt.parallel_assets}}}});

    std::map<std::size_t, std::vector<std::string>> injections;
    for (const auto& i : sc.injections) injections[i.step].push_back(i.point);

    if (opt.parallel_assets)
      run_parallel(sc, injections);
    else
      for (std::size_t i = 0; i < sc.steps.size(); ++i)
        run_step(sc.steps[i], i, injections);

    result_.report = audit(*world_);
    result_.violation_total += result_.report.violation_count();
    result_.snapshot = world_->snapshot();
    trace(json{{"type", "final"},
               {"report", result_.report.to_json()},
               {"state_digest", sha256_hex(result_.snapshot)}});
    return std::move(result_);
  }

 private:
  void trace(const json& line) { result_.trace.push_back(canonical_dump(line)); }

  void run_step(const scenario_step& step, std::size_t index,
                const std::map<std::size_t, std::vector<std::string>>& injections) {
    auto it = injections.find(index);
    if (it != injections.end())
      for (const auto& p : it->second) world_->engine().arm_crash(p);

    json line{{"type", "step"},
              {"index", index},
              {"actor", step.actor},
              {"action", step.action},
              {"params", step.params}};
    try {
      json result = execute(step);
      line["ok"] = true;
      line["result"] = std::move(result);
      trace(line);
    } catch (const crash_injected& c) {
      ++result_.crashes;
      line["ok"] = false;
      line["crashed"] = true;
      line["point"] = c.point;
      trace(line);
      restart(index);
    } catch (const error& e) {
      ++result_.rejected_steps;
      line["ok"] = false;
      line["error"] = std::string(to_string(e.code()));
      line["detail"] = e.what();
      trace(line);
    } catch (const std::exception& e) {
      ++result_.rejected_steps;
      line["ok"] = false;
      line["error"] = std::string(to_string(errc::invalid_argument));
      line["detail"] = e.what();
      trace(line);
    }
    world_->engine().disarm_crashes();

    if (options_.audit_each_step) {
      auto r = audit(*world_);
      result_.violation_total += r.violation_count();
      trace(json{{"type", "audit"},
                 {"index", index},
                 {"violations", r.violation_count()},
                 {"report_digest", sha256_hex(r.canonical())}});
    }
  }

  // A crash loses nothing but the process: the world snapshot is the
  // durable state, and recovery resolves whatever the journal left open.
  void restart(std::size_t index) {
    std::string bytes = world_->snapshot();
    result_.crash_snapshots.emplace_back(index, bytes);
    world_ = world::restore(bytes);
    auto resolved = world_->engine().recover();
    world_->engine().pump();
    trace(json{{"type", "recover"}, {"index", index}, {"resolved", json(resolved)}});
  }

  static std::string str(const json& p, const char* key) {
    return p.at(key).get<std::string>();
  }

  nft_id resolve_token(const json& p) const {
    if (p.contains("nft_id")) return parse_nft_id(str(p, "nft_id"));
    auto asset = str(p, "asset_id");
    auto it = world_->engine().correlations().find(asset);
    if (it == world_->engine().correlations().end())
      throw error(errc::unknown_asset, "no proxy correlated to " + asset);
    return parse_nft_id(it->second);
  }

  static std::string default_endpoint(const std::string& chain_id) {
    return "https://assets.example/" + chain_id;
  }

  json execute(const scenario_step& s) {
    auto& w = *world_;
    const json& p = s.params;

    if (s.action == "create_chain") {
      w.chains().create_chain(str(p, "chain_id"));
      return json();
    }
    if (s.action == "init_services") {
      w.initialize_services();
      return json();
    }
    if (s.action == "place_custody") {
      w.custody().place(s.actor, str(p, "asset_id"), str(p, "custodian"));
      return json();
    }
    if (s.action == "deploy_asset") {
      auto policy = policy_preset(str(p, "policy"));
      auto chain_id = str(p, "chain_id");
      if (!w.engine().has_fleet(chain_id, policy))
        w.engine().deploy_pattern_contract(chain_id, policy,
                                           p.value("endpoint", default_endpoint(chain_id)),
                                           p.value("contract_addr", ""));
      auto id = w.engine().deploy_asset(s.actor, str(p, "asset_id"), chain_id, policy,
                                        p.value("content", json::object()),
                                        p.value("token_id", ""));
      w.engine().pump();
      return json{{"nft_id", id.str()}};
    }
    if (s.action == "update_state") {
      w.custody().update_state(s.actor, str(p, "asset_id"), str(p, "state"));
      w.engine().pump();
      return json();
    }
    if (s.action == "transfer" || s.action == "trade" || s.action == "burn") {
      nft_id id = resolve_token(p);
      json payload{{"token_id", id.token_id}};
      if (s.action != "burn") payload["to"] = str(p, "to");
      if (s.action == "trade") payload["payment"] = p.value("payment", "0");
      auto res = w.chains().at(id.chain_id).submit(s.actor, id.contract_addr, s.action,
                                                   payload, w.clock());
      if (!res.accepted()) throw error(res.reject_code(), res.tx->reject_detail);
      w.engine().pump();
      return json();
    }
    if (s.action == "xchain_transfer") {
      auto asset = str(p, "asset_id");
      auto dest = str(p, "dest_chain");
      // The runner stands in for the operator: a migration presumes the
      // destination fleet is already announced, so announce it on demand.
      auto corr = w.engine().correlations().find(asset);
      if (corr != w.engine().correlations().end() && w.chains().has_chain(dest)) {
        auto src = parse_nft_id(corr->second);
        const auto& policy =
            w.chains().at(src.chain_id).contract(src.contract_addr).policy();
        if (!w.engine().has_fleet(dest, policy))
          w.engine().deploy_pattern_contract(dest, policy,
                                             p.value("endpoint", default_endpoint(dest)));
      }
      auto sid = w.engine().cross_chain_transfer(s.actor, asset, dest);
      w.engine().pump();
      return json{{"session", sid}, {"dest", w.engine().sessions().at(sid).dest}};
    }
    if (s.action == "issue_credential") {
      auto asset = str(p, "asset_id");
      auto token = w.repo().issue_credential(s.actor, asset);
      issued_[asset] = token;
      return json{{"credential", token}};
    }
    if (s.action == "get_metadata") {
      std::string cred = p.value("credential", "");
      if (p.contains("credential_from")) {
        auto it = issued_.find(str(p, "credential_from"));
        if (it == issued_.end())
          throw error(errc::unknown_credential, "no credential issued for that asset yet");
        cred = it->second;
      }
      const auto& rec =
          w.repo().get_record(s.actor, p.contains("nft_id") ? str(p, "nft_id")
                                                            : str(p, "asset_id"), cred);
      return record_to_json(rec);
    }
    if (s.action == "audit") {
      auto r = audit(w);
      result_.violation_total += r.violation_count();
      return r.to_json();
    }
    throw error(errc::invalid_argument, "unknown action: " + s.action);
  }

  // Per-asset key for batching; steps that are not about a single asset
  // cannot run alongside others.
  static std::string asset_key(const scenario_step& s) {
    if (s.action == "create_chain" || s.action == "init_services" || s.action == "audit")
      return "";
    if (s.params.contains("asset_id") && s.params.at("asset_id").is_string())
      return s.params.at("asset_id").get<std::string>();
    if (s.params.contains("nft_id") && s.params.at("nft_id").is_string())
      return s.params.at("nft_id").get<std::string>();
    return "";
  }

  // Coarse-grained concurrency: consecutive steps on pairwise distinct
  // assets run on their own threads, serialized by one world mutex. The
  // interleaving (and therefore sequence numbers) is scheduler-dependent;
  // only sequential runs promise byte-identical traces.
  void run_parallel(const scenario& sc,
                    const std::map<std::size_t, std::vector<std::string>>& injections) {
    std::size_t i = 0;
    while (i < sc.steps.size()) {
      std::vector<std::size_t> batch{i};
      std::set<std::string> keys;
      std::string k0 = asset_key(sc.steps[i]);
      bool solo = k0.empty() || injections.count(i) != 0;
      if (!solo) {
        keys.insert(k0);
        std::size_t j = i + 1;
        while (j < sc.steps.size() && injections.count(j) == 0) {
          std::string k = asset_key(sc.steps[j]);
          if (k.empty() || !keys.insert(k).second) break;
          batch.push_back(j);
          ++j;
        }
      }
      if (batch.size() == 1) {
        run_step(sc.steps[batch[0]], batch[0], injections);
        ++i;
        continue;
      }

      struct slot {
        json result;
        std::string error_code, detail;
        bool ok = false;
      };
      std::vector<slot> slots(batch.size());
      std::mutex mu;
      std::vector<std::thread> threads;
      for (std::size_t b = 0; b < batch.size(); ++b) {
        threads.emplace_back([&, b] {
          std::lock_guard<std::mutex> lock(mu);
          try {
            slots[b].result = execute(sc.steps[batch[b]]);
            slots[b].ok = true;
          } catch (const error& e) {
            slots[b].error_code = std::string(to_string(e.code()));
            slots[b].detail = e.what();
          } catch (const std::exception& e) {
            slots[b].error_code = std::string(to_string(errc::invalid_argument));
            slots[b].detail = e.what();
          }
        });
      }
      for (auto& t : threads) t.join();

      for (std::size_t b = 0; b < batch.size(); ++b) {
        const auto& step = sc.steps[batch[b]];
        json line{{"type", "step"},
                  {"index", batch[b]},
                  {"actor", step.actor},
                  {"action", step.action},
                  {"params", step.params},
                  {"ok", slots[b].ok}};
        if (slots[b].ok) {
          line["result"] = slots[b].result;
        } else {
          ++result_.rejected_steps;
          line["error"] = slots[b].error_code;
          line["detail"] = slots[b].detail;
        }
        trace(line);
      }
      i = batch.back() + 1;
    }
  }

  std::unique_ptr<world> world_;
  std::map<std::string, std::string> issued_;  // asset -> last credential
  run_options options_;
  run_result result_;
};

// ---- trace replay ---------------------------------------------------------

struct replay_result {
  bool match = false;
  std::size_t divergent_line = 0;  // 1-based; 0 when match
  std::string expected, actual;    // the differing lines, when any
};

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    if (end > start) lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

// Re-executes the scenario recorded in a trace and compares every line.
// The original world is rebuilt from nothing, so a match certifies the
// whole run (reports included) reproduces byte for byte.
inline replay_result replay_trace(const std::string& trace_text) {
  auto lines = split_lines(trace_text);
  if (lines.empty()) throw error(errc::invalid_argument, "empty trace");
  json head = parse_json(lines[0], errc::invalid_argument);
  if (!head.is_object() || head.value("type", "") != "scenario")
    throw error(errc::invalid_argument, "trace does not start with a scenario line");
  scenario sc = scenario_from_json(head.at("scenario"));
  run_options opt;
  opt.audit_each_step = head.at("options").value("audit_each_step", false);
  opt.parallel_assets = head.at("options").value("parallel_assets", false);

  scenario_runner runner;
  auto rerun = runner.run(sc, opt);

  replay_result out;
  for (std::size_t i = 0; i < std::max(lines.size(), rerun.trace.size()); ++i) {
    std::string expected = i < lines.size() ? lines[i] : "";
    std::string actual = i < rerun.trace.size() ? rerun.trace[i] : "";
    if (expected != actual) {
      out.divergent_line = i + 1;
      out.expected = std::move(expected);
      out.actual = std::move(actual);
      return out;
    }
  }
  out.match = true;
  return out;
}

// ---- randomized scenario generation ----------------------------------------

// Weighted action mix, e.g. "trade:3,update:2,xchain:1". Unknown names are
// authoring mistakes.
inline std::map<std::string, int> parse_mix(const std::string& spec) {
  static const std::set<std::string> kNames{"trade",  "transfer",   "update", "xchain",
                                            "burn",   "credential", "get"};
  std::map<std::string, int> mix{{"trade", 3}, {"transfer", 2}, {"update", 3}, {"xchain", 2},
                                 {"burn", 1},  {"credential", 1}, {"get", 2}};
  if (spec.empty()) return mix;
  mix.clear();
  std::size_t start = 0;
  while (start <= spec.size()) {
    auto end = spec.find(',', start);
    if (end == std::string::npos) end = spec.size();
    auto item = spec.substr(start, end - start);
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw error(errc::invalid_argument, "mix entry needs name:weight, got " + item);
    auto name = item.substr(0, colon);
    if (kNames.count(name) == 0) throw error(errc::invalid_argument, "unknown mix name: " + name);
    int weight = 0;
    try {
      weight = std::stoi(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw error(errc::invalid_argument, "bad mix weight in " + item);
    }
    if (weight < 0) throw error(errc::invalid_argument, "negative mix weight in " + item);
    mix[name] = weight;
    start = end + 1;
  }
  int total = 0;
  for (const auto& [_, wgt] : mix) total += wgt;
  if (total <= 0) throw error(errc::invalid_argument, "mix has no positive weight");
  return mix;
}

namespace detail {

// mt19937_64 output is pinned by the standard, so scenarios derived from it
// are identical across platforms. Modulo bias is irrelevant here.
inline std::uint64_t pick(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }
inline bool chance(std::mt19937_64& rng, unsigned percent) { return rng() % 100 < percent; }

inline std::string weighted(std::mt19937_64& rng, const std::map<std::string, int>& mix) {
  int total = 0;
  for (const auto& [_, w] : mix) total += w;
  int roll = static_cast<int>(pick(rng, static_cast<std::uint64_t>(total)));
  for (const auto& [name, w] : mix) {
    roll -= w;
    if (roll < 0) return name;
  }
  return mix.begin()->first;
}

}  // namespace detail

// Generates a short, well-formed random scenario. Steps may still be
// rejected at run time (wrong actor, wrong policy); that is deliberate and
// counted, never fatal.
inline scenario generate_scenario(std::uint64_t seed, const std::map<std::string, int>& mix) {
  using detail::chance;
  using detail::pick;
  std::mt19937_64 rng(seed);

  static const char* kPresets[] = {"trade_only", "cross_chain", "hidden", "zero_value"};
  static const char* kChains[] = {"sim:alpha", "sim:beta"};
  static const char* kCollectors[] = {"collector-1", "collector-2", "collector-3"};
  static const char* kStates[] = {"stored", "inspected", "in transit", "on display", "crated"};

  scenario sc;
  sc.name = "fuzz-" + std::to_string(seed);
  sc.seed = seed;
  sc.steps.push_back({"-", "create_chain", json{{"chain_id", "sim:alpha"}}});
  sc.steps.push_back({"-", "create_chain", json{{"chain_id", "sim:beta"}}});
  sc.steps.push_back({"-", "init_services", json::object()});

  struct asset_info {
    std::string id;
    contract_policy policy;
    std::string chain;
    std::string owner = "creator";
    bool live = true;
    bool credentialed = false;
  };
  std::vector<asset_info> assets;
  std::uint64_t asset_count = 1 + pick(rng, 3);
  for (std::uint64_t a = 0; a < asset_count; ++a) {
    asset_info info;
    info.id = std::string("lot:item-") + static_cast<char>('a' + a);
    const char* preset = kPresets[pick(rng, 4)];
    info.policy = policy_preset(preset);
    info.chain = kChains[pick(rng, 2)];
    sc.steps.push_back({"creator", "place_custody",
                        json{{"asset_id", info.id}, {"custodian", "warehouse"}}});
    sc.steps.push_back({"creator", "deploy_asset",
                        json{{"asset_id", info.id},
                             {"chain_id", info.chain},
                             {"policy", preset},
                             {"content", json{{"name", "Item " + std::to_string(a + 1)},
                                              {"lot", a + 1}}}}});
    assets.push_back(std::move(info));
  }

  std::uint64_t op_count = 4 + pick(rng, 12);
  for (std::uint64_t i = 0; i < op_count; ++i) {
    auto& asset = assets[pick(rng, assets.size())];
    auto action = detail::weighted(rng, mix);
    if (action == "trade" || action == "transfer") {
      std::string actor = chance(rng, 88) ? asset.owner : "stranger";
      std::string to = kCollectors[pick(rng, 3)];
      json params{{"asset_id", asset.id}, {"to", to}};
      if (action == "trade") params["payment"] = std::to_string(100 * (1 + pick(rng, 50)));
      sc.steps.push_back({actor, action == "trade" ? "trade" : "transfer", params});
      bool allowed = action == "trade" ? asset.policy.tradeable : asset.policy.transferable;
      if (actor == asset.owner && asset.live && allowed) asset.owner = to;
    } else if (action == "update") {
      std::string actor = chance(rng, 90) ? "warehouse" : "intruder";
      sc.steps.push_back({actor, "update_state",
                          json{{"asset_id", asset.id}, {"state", kStates[pick(rng, 5)]}}});
    } else if (action == "xchain") {
      std::string dest = asset.chain == "sim:alpha" ? "sim:beta" : "sim:alpha";
      sc.steps.push_back(
          {asset.owner, "xchain_transfer", json{{"asset_id", asset.id}, {"dest_chain", dest}}});
      if (asset.policy.cross_chain && asset.live) asset.chain = dest;
    } else if (action == "burn") {
      bool by_owner = chance(rng, 70);
      sc.steps.push_back(
          {by_owner ? asset.owner : "sync-authority", "burn", json{{"asset_id", asset.id}}});
      if (!by_owner || asset.policy.owner_may_burn()) asset.live = false;
    } else if (action == "credential") {
      sc.steps.push_back({"creator", "issue_credential", json{{"asset_id", asset.id}}});
      asset.credentialed = true;
    } else {  // get
      static const char* kReaders[] = {"creator", "snoop", "collector-1"};
      json params{{"asset_id", asset.id}};
      if (asset.credentialed && chance(rng, 50)) params["credential_from"] = asset.id;
      sc.steps.push_back({kReaders[pick(rng, 3)], "get_metadata", params});
    }
  }
  sc.steps.push_back({"-", "audit", json::object()});
  return sc;
}

// Picks a crash point matching what the step actually does, so injected
// runs usually reach their point.
inline std::string compatible_crash_point(std::mt19937_64& rng, const scenario_step& step) {
  using detail::pick;
  if (step.action == "deploy_asset") {
    static const char* kDeploy[] = {"deploy.started", "deploy.record_put", "deploy.minted"};
    return kDeploy[pick(rng, 3)];
  }
  if (step.action == "xchain_transfer") {
    static const char* kXfer[] = {"xfer.started",          "xfer.source_locked.pre",
                                  "xfer.source_locked",    "xfer.dest_pending.pre",
                                  "xfer.dest_pending",     "xfer.source_burned.pre",
                                  "xfer.source_burned",    "xfer.dest_activated.pre",
                                  "xfer.dest_activated",   "xfer.history_appended"};
    return kXfer[pick(rng, 10)];
  }
  if (step.action == "update_state") {
    static const char* kCustody[] = {"custody.record_put", "custody.applied"};
    return kCustody[pick(rng, 2)];
  }
  return "chain.event_applied";
}

struct fuzz_options {
  std::uint64_t n = 100;
  std::uint64_t seed = 1;
  std::string mix;
  bool inject = true;
};

struct fuzz_summary {
  std::uint64_t scenarios = 0;
  std::uint64_t runs = 0;
  std::uint64_t steps = 0;
  std::uint64_t rejected_steps = 0;
  std::uint64_t crashes = 0;
  std::uint64_t violations = 0;
  std::string reports_digest;  // chained over every final report

  int exit_code() const { return violations == 0 ? 0 : 1; }

  json to_json() const {
    return json{{"format_version", kScenarioFormatVersion},
                {"scenarios", scenarios},
                {"runs", runs},
                {"steps", steps},
                {"rejected_steps", rejected_steps},
                {"crashes", crashes},
                {"violations", violations},
                {"reports_digest", reports_digest}};
  }
  std::string canonical() const { return canonical_dump(to_json()); }

  std::string text() const {
    return "fuzz: " + std::to_string(scenarios) + " scenario(s), " + std::to_string(runs) +
           " run(s), " + std::to_string(steps) + " step(s), " +
           std::to_string(rejected_steps) + " rejected, " + std::to_string(crashes) +
           " injected crash(es), " + std::to_string(violations) + " violation(s)\n";
  }
};

// Generates and runs n random scenarios, each once as written and once with
// a randomly placed compatible crash injection. Every run is audited after
// every step; violations are counted, never tolerated.
inline fuzz_summary run_fuzz(const fuzz_options& options) {
  auto mix = parse_mix(options.mix);
  fuzz_summary sum;
  std::string digest;  // chained: H(prev || report)

  run_options ropt;
  ropt.audit_each_step = true;

  for (std::uint64_t i = 0; i < options.n; ++i) {
    std::uint64_t scenario_seed = options.seed * 1000003 + i;
    scenario sc = generate_scenario(scenario_seed, mix);
    ++sum.scenarios;

    scenario_runner runner;
    auto account = [&](const run_result& r) {
      ++sum.runs;
      sum.rejected_steps += r.rejected_steps;
      sum.crashes += r.crashes;
      sum.violations += r.violation_total;
      digest = sha256_hex(digest + r.report.canonical());
    };
    sum.steps += sc.steps.size();
    account(runner.run(sc, ropt));

    if (options.inject) {
      std::mt19937_64 rng(scenario_seed ^ 0x9e3779b97f4a7c15ull);
      std::vector<std::size_t> eligible;
      for (std::size_t s = 0; s < sc.steps.size(); ++s) {
        const auto& a = sc.steps[s].action;
        if (a == "deploy_asset" || a == "xchain_transfer" || a == "update_state" ||
            a == "trade" || a == "transfer" || a == "burn")
          eligible.push_back(s);
      }
      if (!eligible.empty()) {
        scenario injected = sc;
        injected.name += "+crash";
        std::size_t at = eligible[detail::pick(rng, eligible.size())];
        injected.injections.push_back(
            {at, compatible_crash_point(rng, injected.steps[at])});
        sum.steps += injected.steps.size();
        account(runner.run(injected, ropt));
      }
    }
  }
  sum.reports_digest = digest;
  return sum;
}

}  // namespace apnft

#endif  // APNFT_SCENARIO_HPP
