// Copyright 2026 the apnft authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance gate. Each criterion prints exactly one PASS or
// FAIL line; the exit code is the number of failures. Everything here
// drives public surfaces only: scenarios, the engine, the auditor.

#include <array>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "apnft/scenario.hpp"
#include "fault_seeds.hpp"
#include "helpers.hpp"
#include "policy_matrix_check.hpp"

using namespace apnft;

namespace {

scenario load_scenario(const std::string& name) {
  return scenario_from_json(
      parse_json(testutil::read_file(std::string(APNFT_SCENARIO_DIR) + "/" + name),
                 errc::invalid_argument));
}

// Every token currently in Active status, across all chains.
std::size_t live_tokens(const world& w) {
  std::size_t n = 0;
  for (const auto& [cid, ch] : w.chains().chains())
    for (const auto& [addr, c] : ch.contracts())
      for (const auto& [tid, t] : c.tokens())
        if (t.status == token_status::active) ++n;
  return n;
}

struct check_failure {
  std::string detail;
};

void require(bool ok, const std::string& detail) {
  if (!ok) throw check_failure{detail};
}

// ---- 1: the historical single-token fixture --------------------------------

void golden_fixture() {
  scenario_runner runner;
  auto r = runner.run(load_scenario("beeple.json"));
  require(r.exit_code() == 0 && r.report.clean(), "scenario run not clean");
  require(r.rejected_steps == 0, "a step was rejected");

  auto w = world::restore(r.snapshot);
  nft_id id{"eth:mainnet", "0xa4c38796c35dca618fe22a4e77f4210d0b0350d6", "1"};
  const auto& contract = w->chains().at(id.chain_id).contract(id.contract_addr);
  const auto& token = contract.token(id.token_id);
  require(token.status == token_status::active, "token not active");
  require(token.attributes.at("token_uri") == "https://metadata.human-one.xyz/1",
          "token_uri is " + token.attributes.at("token_uri"));

  // The resolution chain, walked link by link: attribute -> endpoint ->
  // binding -> record -> token name.
  require(token.attributes.at("token_uri") ==
              contract.resolution().endpoint + "/" + id.token_id,
          "token_uri does not resolve through the announced endpoint");
  require(w->repo().binding_of(id.str()) == "beeple:human-one", "binding mismatch");
  const auto& rec = w->repo().get_record("anyone", id.str());
  require(rec.content.at("name") == "HUMAN ONE", "record name mismatch");
  require(rec.content.at("attributes")[0].at("value") == "broken future",
          "record attribute mismatch");
  require(rec.nft_id == id.str(), "record does not name the token back");
}

// ---- 2: no double mint ------------------------------------------------------

void no_double_mint(const fuzz_summary& fuzz) {
  require(fuzz.scenarios == 1000, "expected 1000 fuzzed scenarios");
  require(fuzz.violations == 0,
          "fuzz found " + std::to_string(fuzz.violations) + " violation(s)");

  auto w = testutil::audit_world();
  testutil::audit_deploy(*w, kPolicyTradeOnly, "gallery:piece");
  try {
    w->engine().deploy_asset("creator", "gallery:piece", "sim:alpha", kPolicyTradeOnly,
                             json{{"name", "Piece"}});
    require(false, "second deploy of a bound asset was accepted");
  } catch (const error& e) {
    require(e.code() == errc::asset_already_bound,
            std::string("second deploy rejected with ") + std::string(to_string(e.code())));
  }
}

// ---- 3: crash matrix over the journaled phase boundaries --------------------

void crash_matrix() {
  static const char* kBoundaries[] = {"xfer.started", "xfer.source_locked", "xfer.dest_pending",
                                      "xfer.source_burned", "xfer.dest_activated"};
  for (std::size_t i = 0; i < 5; ++i) {
    bool expect_commit = i >= 3;  // at or after the source burn

    auto w = testutil::audit_world();
    auto src = testutil::audit_deploy(*w, kPolicyCrossChain, "gallery:mobile");
    w->engine().deploy_pattern_contract("sim:beta", kPolicyCrossChain, "https://meta.beta/x");
    auto before = w->chains().at(src.chain_id).contract(src.contract_addr).token(src.token_id);

    w->engine().arm_crash(kBoundaries[i]);
    try {
      w->engine().cross_chain_transfer("creator", "gallery:mobile", "sim:beta");
      require(false, std::string(kBoundaries[i]) + " never fired");
    } catch (const crash_injected&) {
    }

    auto restored = world::restore(w->snapshot());
    auto resolved = restored->engine().recover();
    require(resolved.size() == 1, "expected one resolved session");

    auto report = audit(*restored);
    require(report.clean(), std::string(kBoundaries[i]) + ": " + report.text());
    require(live_tokens(*restored) == 1, "live token count != 1");

    const auto& s = restored->engine().sessions().at(resolved[0]);
    require(s.terminal(), "session not terminal");
    const auto& after =
        restored->chains().at(src.chain_id).contract(src.contract_addr).token(src.token_id);
    if (expect_commit) {
      require(s.committed, std::string(kBoundaries[i]) + " did not commit");
      require(after.status == token_status::burned, "source not burned after commit");
      require(!after.forward_ref.empty(), "committed burn lacks a forward_ref");
    } else {
      require(s.reverted, std::string(kBoundaries[i]) + " did not revert");
      require(after.status == token_status::active, "source not active after revert");
      require(json(after.attributes) == json(before.attributes),
              "source attributes changed across a reverted transfer");
    }
  }
}

// ---- 4: hash anchoring across randomized update sequences -------------------

std::string sha256sum_tool(const std::string& bytes) {
  char path[] = "/tmp/apnft_hash_XXXXXX";
  int fd = mkstemp(path);
  require(fd >= 0, "mkstemp failed");
  FILE* f = fdopen(fd, "wb");
  fwrite(bytes.data(), 1, bytes.size(), f);
  fclose(f);

  std::string cmd = std::string("sha256sum ") + path;
  FILE* pipe = popen(cmd.c_str(), "r");
  require(pipe != nullptr, "cannot run sha256sum");
  char buf[128] = {0};
  auto got = fread(buf, 1, sizeof(buf) - 1, pipe);
  pclose(pipe);
  std::remove(path);
  require(got >= 64, "short sha256sum output");
  return std::string(buf, 64);
}

void hash_binding() {
  std::mt19937_64 rng(20260819);
  static const char* kStates[] = {"stored", "inspected", "crated", "on loan", "restored"};
  std::vector<std::pair<std::string, std::string>> sampled;  // canonical bytes, on-chain hash

  for (int seq = 0; seq < 200; ++seq) {
    auto w = testutil::audit_world();
    std::string asset = "vault:item-" + std::to_string(seq);
    auto id = testutil::audit_deploy(*w, kPolicyHidden, asset);
    auto updates = 1 + rng() % 4;
    for (std::uint64_t u = 0; u < updates; ++u) {
      w->custody().update_state("warehouse", asset, kStates[rng() % 5]);
      w->engine().pump();
      const auto& rec = w->repo().latest(asset);
      auto bytes = canonical_serialize(rec);
      const auto& anchored = w->chains()
                                 .at(id.chain_id)
                                 .contract(id.contract_addr)
                                 .token(id.token_id)
                                 .attributes.at("metadata_hash");
      require(anchored == sha256_hex(bytes),
              asset + " update " + std::to_string(u) + ": anchor does not match the record");
      if (seq % 20 == 0 && u == updates - 1) sampled.emplace_back(bytes, anchored);
    }
  }

  require(sampled.size() == 10, "expected a sample of 10 for the external oracle");
  for (const auto& [bytes, anchored] : sampled)
    require(sha256sum_tool(bytes) == anchored, "external sha256sum disagrees with the anchor");
}

// ---- 5: exhaustive policy decision matrix ------------------------------------

void policy_matrix() {
  auto fixture = testutil::load_fixture("policy_matrix.json");
  require(fixture.at("cases").size() == 240, "fixture must hold 240 cases");
  auto mismatches = testutil::check_policy_matrix(fixture);
  std::string detail;
  for (const auto& m : mismatches) detail += m + "; ";
  require(mismatches.empty(), detail);
}

// ---- 6: claim delivery, exactly once, only after burn, only to the burner ----

void trade_only_delivery(const fuzz_summary& fuzz) {
  require(fuzz.violations == 0, "fuzz reported violations");

  auto w = testutil::audit_world();
  auto id = testutil::audit_deploy(*w, kPolicyTradeOnly, "gallery:piece");
  w->chains().at("sim:alpha").submit(
      "creator", id.contract_addr, "trade",
      json{{"token_id", id.token_id}, {"to", "collector"}, {"payment", "9000"}}, w->clock());
  w->engine().pump();

  try {  // no delivery without a burn
    w->custody().deliver(w->engine().authority(), "gallery:piece", "collector");
    require(false, "delivered before the burn");
  } catch (const error& e) {
    require(e.code() == errc::not_burned,
            std::string("pre-burn delivery rejected with ") + std::string(to_string(e.code())));
  }

  w->chains().at("sim:alpha").submit("collector", id.contract_addr, "burn",
                                     json{{"token_id", id.token_id}}, w->clock());
  w->engine().pump();
  const auto& held = w->custody().record("gallery:piece");
  require(held.delivered_to == "collector", "delivered to " + held.delivered_to);

  try {  // never twice
    w->custody().deliver(w->engine().authority(), "gallery:piece", "collector");
    require(false, "delivered twice");
  } catch (const error& e) {
    require(e.code() == errc::already_delivered,
            std::string("second delivery rejected with ") + std::string(to_string(e.code())));
  }

  std::size_t delivered_entries = 0;
  std::uint64_t delivery_gseq = 0;
  for (const auto& entry : held.log)
    if (entry.state == kCustodyDeliveredState) {
      ++delivered_entries;
      delivery_gseq = entry.global_seq;
    }
  require(delivered_entries == 1, std::to_string(delivered_entries) + " delivery log entries");

  std::uint64_t burn_gseq = 0;
  for (const auto& ev : w->chains().at("sim:alpha").events())
    if (ev.kind == event_kind::burned) burn_gseq = ev.global_seq;
  require(burn_gseq != 0 && burn_gseq < delivery_gseq, "delivery did not follow the burn");
}

// ---- 7: every audit check catches its seeded fault ---------------------------

void audit_sensitivity() {
  for (const auto& seed : testutil::make_fault_seeds()) {
    auto report = audit(*world::restore(seed.snapshot.dump()));
    std::string failing;
    for (const auto& c : report.checks) {
      if (c.pass()) continue;
      require(failing.empty(), seed.check + " seed also tripped " + c.id);
      failing = c.id;
    }
    require(failing == seed.check,
            seed.check + " seed (" + seed.what + ") was flagged by '" + failing + "'");
  }
}

// ---- 8: byte-identical reruns -------------------------------------------------

void determinism() {
  std::vector<scenario> cases{load_scenario("xchain_crash_matrix.json"),
                              load_scenario("tradeonly_burn.json"),
                              generate_scenario(909, parse_mix(""))};
  for (const auto& sc : cases) {
    scenario_runner runner;
    auto first = runner.run(sc);
    for (int i = 0; i < 2; ++i) {
      auto again = runner.run(sc);
      require(again.trace_text() == first.trace_text(), sc.name + ": traces differ");
      require(again.report.canonical() == first.report.canonical(),
              sc.name + ": reports differ");
    }
  }
}

}  // namespace

int main() {
  fuzz_options fopt;
  fopt.n = 1000;
  fopt.seed = 20260819;
  fuzz_summary fuzz;
  std::string fuzz_error;
  try {
    fuzz = run_fuzz(fopt);
  } catch (const std::exception& e) {
    fuzz_error = e.what();
  }

  struct criterion {
    const char* name;
    std::function<void()> run;
  };
  const std::array<criterion, 8> criteria{{
      {"golden-fixture-resolution", golden_fixture},
      {"no-double-mint", [&] {
         require(fuzz_error.empty(), "fuzz run failed: " + fuzz_error);
         no_double_mint(fuzz);
       }},
      {"crash-matrix-atomicity", crash_matrix},
      {"hash-binding", hash_binding},
      {"policy-matrix", policy_matrix},
      {"trade-only-delivery", [&] {
         require(fuzz_error.empty(), "fuzz run failed: " + fuzz_error);
         trade_only_delivery(fuzz);
       }},
      {"audit-sensitivity", audit_sensitivity},
      {"determinism", determinism},
  }};

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string verdict = "PASS", detail;
    try {
      criteria[i].run();
    } catch (const check_failure& f) {
      verdict = "FAIL";
      detail = f.detail;
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = e.what();
    }
    if (verdict == "FAIL") ++failures;
    std::cout << verdict << " " << (i + 1) << " " << criteria[i].name;
    if (!detail.empty()) std::cout << ": " << detail;
    std::cout << "\n";
  }
  return failures;
}
