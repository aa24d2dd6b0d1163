// Copyright 2026 the apnft authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <string>

#include "apnft/ledger.hpp"
#include "helpers.hpp"

using namespace apnft;

namespace {

struct rig {
  seq_clock clock;
  chain c{"sim:alpha"};
  std::string addr;

  explicit rig(contract_policy policy = kPolicyTradeOnly,
               const std::string& endpoint = "https://meta.example/a") {
    auto res = c.submit("authority", "", "deploy",
                        json{{"policy",
                              {{"tradeable", policy.tradeable},
                               {"transferable", policy.transferable},
                               {"hidden_metadata", policy.hidden_metadata},
                               {"cross_chain", policy.cross_chain}}},
                             {"endpoint", endpoint}},
                        clock);
    REQUIRE(res.accepted());
    addr = c.contracts().begin()->first;
  }

  tx_result run(const std::string& sender, const std::string& op, json payload) {
    return c.submit(sender, addr, op, std::move(payload), clock);
  }

  tx_result mint(const std::string& token_id, const std::string& owner,
                 const std::string& status = "active") {
    return run("authority", "mint",
               json{{"token_id", token_id}, {"owner", owner}, {"status", status}});
  }

  const token_state& tok(const std::string& id) { return c.contract(addr).token(id); }
};

}  // namespace

TEST_CASE("chain registry enforces id grammar and uniqueness") {
  ledger l;
  l.create_chain("sim:alpha");
  CHECK_THROWS_AS(l.create_chain("sim:alpha"), error);
  CHECK_THROWS_AS(l.create_chain("Bad Chain"), error);
  CHECK_THROWS_AS(l.at("sim:beta"), error);
  CHECK(l.at("sim:alpha").id() == "sim:alpha");
}

TEST_CASE("deploy derives a deterministic address unless one is given") {
  seq_clock clk;
  chain a("sim:alpha");
  chain b("sim:alpha");
  json payload{{"policy_preset", "trade_only"}, {"endpoint", "https://meta.example/x"}};
  a.submit("authority", "", "deploy", payload, clk);
  b.submit("authority", "", "deploy", payload, clk);
  REQUIRE(a.contracts().size() == 1);
  CHECK(a.contracts().begin()->first == b.contracts().begin()->first);
  CHECK(a.contracts().begin()->first.substr(0, 2) == "0x");
  CHECK(a.contracts().begin()->first.size() == 42);

  auto res = a.submit("authority", "", "deploy",
                      json{{"policy_preset", "zero_value"},
                           {"endpoint", "https://meta.example/y"},
                           {"contract_addr", "0xA4C38796C35DCA618FE22A4E77F4210D0B0350D6"}},
                      clk);
  REQUIRE(res.accepted());
  CHECK(a.has_contract("0xa4c38796c35dca618fe22a4e77f4210d0b0350d6"));

  auto dup = a.submit("authority", "", "deploy",
                      json{{"policy_preset", "zero_value"},
                           {"endpoint", "https://meta.example/z"},
                           {"contract_addr", "0xa4c38796c35dca618fe22a4e77f4210d0b0350d6"}},
                      clk);
  CHECK_FALSE(dup.accepted());
  CHECK(dup.reject_code() == errc::binding_conflict);
}

TEST_CASE("mint emits Minted and fixes ownership") {
  rig r;
  auto res = r.mint("1", "alice");
  REQUIRE(res.accepted());
  REQUIRE(res.events.size() == 1);
  CHECK(res.events[0].kind == event_kind::minted);
  CHECK(res.events[0].token_id == "1");
  CHECK(res.events[0].detail.at("owner") == "alice");
  CHECK(res.events[0].detail.at("status") == "active");
  CHECK(r.tok("1").owner == "alice");
  CHECK(r.tok("1").status == token_status::active);

  CHECK(r.mint("1", "bob").reject_code() == errc::token_exists);
  CHECK(r.run("mallory", "mint", json{{"token_id", "9"}, {"owner", "mallory"}, {"status", "active"}})
            .reject_code() == errc::not_authorized);
  CHECK(r.run("authority", "mint",
              json{{"token_id", "9"}, {"owner", "x"}, {"status", "burned"}})
            .reject_code() == errc::wrong_status);
  CHECK(r.run("authority", "mint",
              json{{"token_id", "07"}, {"owner", "x"}, {"status", "active"}})
            .reject_code() == errc::malformed_identifier);
}

TEST_CASE("lifecycle transitions match the state machine") {
  rig r;
  r.mint("1", "alice");

  SECTION("active -> locked -> active") {
    CHECK(r.run("authority", "lock", json{{"token_id", "1"}}).accepted());
    CHECK(r.tok("1").status == token_status::locked);
    CHECK(r.run("authority", "lock", json{{"token_id", "1"}}).reject_code() ==
          errc::wrong_status);
    CHECK(r.run("authority", "unlock", json{{"token_id", "1"}}).accepted());
    CHECK(r.tok("1").status == token_status::active);
    CHECK(r.run("authority", "unlock", json{{"token_id", "1"}}).reject_code() ==
          errc::wrong_status);
  }

  SECTION("pending -> active via activate") {
    r.mint("2", "bob", "pending");
    CHECK(r.run("authority", "activate", json{{"token_id", "2"}}).accepted());
    CHECK(r.tok("2").status == token_status::active);
    CHECK(r.run("authority", "activate", json{{"token_id", "2"}}).reject_code() ==
          errc::wrong_status);
  }

  SECTION("burned is terminal") {
    CHECK(r.run("alice", "burn", json{{"token_id", "1"}}).accepted());
    CHECK(r.tok("1").status == token_status::burned);
    CHECK(r.run("alice", "burn", json{{"token_id", "1"}}).reject_code() ==
          errc::already_burned);
    CHECK(r.run("alice", "transfer", json{{"token_id", "1"}, {"to", "bob"}}).reject_code() ==
          errc::token_burned);
    CHECK(r.run("authority", "lock", json{{"token_id", "1"}}).reject_code() ==
          errc::token_burned);
    CHECK(r.run("authority", "activate", json{{"token_id", "1"}}).reject_code() ==
          errc::wrong_status);
  }

  SECTION("locked tokens refuse owner operations but allow authority burn") {
    r.run("authority", "lock", json{{"token_id", "1"}});
    CHECK(r.run("alice", "transfer", json{{"token_id", "1"}, {"to", "bob"}}).reject_code() ==
          errc::token_locked);
    CHECK(r.run("alice", "burn", json{{"token_id", "1"}}).reject_code() == errc::token_locked);
    CHECK(r.run("authority", "burn", json{{"token_id", "1"}}).accepted());
    CHECK(r.tok("1").status == token_status::burned);
  }

  SECTION("pending -> burned has no path") {
    r.mint("2", "bob", "pending");
    CHECK(r.run("authority", "burn", json{{"token_id", "2"}}).reject_code() ==
          errc::wrong_status);
    CHECK(r.run("bob", "burn", json{{"token_id", "2"}}).reject_code() == errc::unknown_token);
  }
}

TEST_CASE("pending tokens are invisible to non-authority senders") {
  rig r;
  r.mint("5", "carol", "pending");
  CHECK(r.run("carol", "transfer", json{{"token_id", "5"}, {"to", "x"}}).reject_code() ==
        errc::unknown_token);
  CHECK(r.run("carol", "trade",
              json{{"token_id", "5"}, {"to", "x"}, {"payment", "10"}})
            .reject_code() == errc::unknown_token);
  CHECK(r.run("carol", "set_attribute",
              json{{"token_id", "5"}, {"key", "k"}, {"value", "v"}})
            .reject_code() == errc::unknown_token);
  CHECK(r.run("authority", "set_attribute",
              json{{"token_id", "5"}, {"key", "k"}, {"value", "v"}})
            .accepted());
}

TEST_CASE("remove_pending retires the id forever") {
  rig r;
  r.mint("1", "alice");
  r.mint("2", "bob", "pending");
  CHECK(r.c.contract(r.addr).peek_next_id() == "3");

  CHECK(r.run("authority", "remove_pending", json{{"token_id", "1"}}).reject_code() ==
        errc::wrong_status);
  auto res = r.run("authority", "remove_pending", json{{"token_id", "2"}});
  REQUIRE(res.accepted());
  CHECK(res.events.empty());
  CHECK_FALSE(r.c.contract(r.addr).has_token("2"));
  CHECK(r.c.contract(r.addr).peek_next_id() == "3");
  CHECK(r.mint("2", "eve").reject_code() == errc::token_exists);
}

TEST_CASE("policy gates trading, transfer, owner burn and forward refs") {
  SECTION("zero value tokens cannot move or be burned by holders") {
    rig r(kPolicyZeroValue);
    r.mint("1", "alice");
    CHECK(r.run("alice", "transfer", json{{"token_id", "1"}, {"to", "b"}}).reject_code() ==
          errc::policy_violation);
    CHECK(r.run("alice", "trade",
                json{{"token_id", "1"}, {"to", "b"}, {"payment", "1"}})
              .reject_code() == errc::policy_violation);
    CHECK(r.run("alice", "burn", json{{"token_id", "1"}}).reject_code() ==
          errc::policy_violation);
    CHECK(r.run("authority", "burn", json{{"token_id", "1"}}).accepted());
  }

  SECTION("trade carries payment detail") {
    rig r(kPolicyTradeOnly);
    r.mint("1", "alice");
    auto res = r.run("alice", "trade", json{{"token_id", "1"}, {"to", "bob"}, {"payment", "250"}});
    REQUIRE(res.accepted());
    REQUIRE(res.events.size() == 1);
    CHECK(res.events[0].kind == event_kind::transferred);
    CHECK(res.events[0].detail.at("trade") == "true");
    CHECK(res.events[0].detail.at("payment") == "250");
    CHECK(res.events[0].detail.at("from") == "alice");
    CHECK(res.events[0].detail.at("to") == "bob");
    CHECK(r.tok("1").owner == "bob");
  }

  SECTION("only the owner moves a token") {
    rig r(kPolicyTradeOnly);
    r.mint("1", "alice");
    CHECK(r.run("bob", "transfer", json{{"token_id", "1"}, {"to", "bob"}}).reject_code() ==
          errc::not_owner);
    CHECK(r.run("bob", "burn", json{{"token_id", "1"}}).reject_code() == errc::not_authorized);
  }

  SECTION("forward_ref requires a cross-chain policy and the authority") {
    rig r(kPolicyTradeOnly);
    r.mint("1", "alice");
    const std::string ref = "sim:beta/0x0000000000000000000000000000000000000002/1";
    CHECK(r.run("authority", "burn", json{{"token_id", "1"}, {"forward_ref", ref}})
              .reject_code() == errc::policy_violation);

    rig x(kPolicyCrossChain);
    x.mint("1", "alice");
    CHECK(x.run("alice", "burn", json{{"token_id", "1"}, {"forward_ref", ref}}).reject_code() ==
          errc::not_authorized);
    auto res = x.run("authority", "burn", json{{"token_id", "1"}, {"forward_ref", ref}});
    REQUIRE(res.accepted());
    CHECK(x.tok("1").forward_ref == ref);
    CHECK(res.events[0].detail.at("forward_ref") == ref);
  }
}

TEST_CASE("rejected transactions leave contract state untouched") {
  rig r;
  r.mint("1", "alice");
  auto before = r.c.state_hash();
  auto height = r.c.height();

  CHECK_FALSE(r.run("bob", "transfer", json{{"token_id", "1"}, {"to", "bob"}}).accepted());
  CHECK_FALSE(r.run("authority", "mint", json{{"token_id", "1"}, {"owner", "x"},
                                              {"status", "active"}})
                  .accepted());
  CHECK_FALSE(r.run("alice", "burn", json{{"token_id", "404"}}).accepted());
  CHECK_FALSE(r.c.submit("alice", "0x" + std::string(40, '9'), "burn",
                         json{{"token_id", "1"}}, r.clock)
                  .accepted());

  CHECK(r.c.state_hash() == before);
  CHECK(r.c.height() == height + 4);
  for (std::uint64_t s = height; s < r.c.height(); ++s) {
    CHECK_FALSE(r.c.tx_log()[s].accepted);
    CHECK_FALSE(r.c.tx_log()[s].reject_code.empty());
  }
}

TEST_CASE("event cursors are exclusive watermarks") {
  rig r;
  r.mint("1", "alice");
  r.run("alice", "transfer", json{{"token_id", "1"}, {"to", "bob"}});
  auto all = r.c.events_since(0);
  REQUIRE(all.size() == 2);
  CHECK(all[0].kind == event_kind::minted);
  CHECK(all[1].kind == event_kind::transferred);
  CHECK(r.c.events_since(1).size() == 1);
  CHECK(r.c.events_since(2).empty());
  CHECK_THROWS_AS(r.c.events_since(3), error);

  CHECK(all[1].global_seq > all[0].global_seq);
  CHECK(all[1].seq > all[0].seq);
}

TEST_CASE("resolution reconfigs keep an audit trail") {
  rig r(kPolicyTradeOnly, "https://one.example/m");
  CHECK(r.run("mallory", "set_resolution", json{{"endpoint", "https://evil.example"}})
            .reject_code() == errc::not_authorized);
  CHECK(r.run("authority", "set_resolution", json{{"endpoint", "https://two.example/m"}})
            .accepted());
  CHECK(r.run("authority", "set_resolution", json{{"endpoint", "https://three.example/m"}})
            .accepted());

  const auto& res = r.c.contract(r.addr).resolution();
  CHECK(res.deploy_endpoint == "https://one.example/m");
  CHECK(res.endpoint == "https://three.example/m");
  REQUIRE(res.reconfig_log.size() == 2);
  CHECK(res.reconfig_log[0].old_endpoint == "https://one.example/m");
  CHECK(res.reconfig_log[0].new_endpoint == "https://two.example/m");
  CHECK(res.reconfig_log[1].old_endpoint == "https://two.example/m");
  CHECK(res.reconfig_log[1].new_endpoint == "https://three.example/m");
  CHECK(res.reconfig_log[0].authorizer == "authority");
  CHECK(res.reconfig_log[0].global_seq < res.reconfig_log[1].global_seq);

  CHECK(r.c.contract(r.addr).token_uri("7") == "https://three.example/m/7");
}

namespace {

// Drives a contract with a random op mix and checks machine-level
// invariants after every transaction.
void fuzz_contract(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::uint64_t n) { return rng() % n; };
  const contract_policy policies[] = {kPolicyTradeOnly, kPolicyCrossChain, kPolicyHidden,
                                      kPolicyZeroValue};
  rig r(policies[pick(4)]);
  const std::string users[] = {"authority", "alice", "bob", "carol"};
  const std::string ops[] = {"mint",          "activate", "transfer", "trade", "burn",
                             "lock",          "unlock",   "set_attribute",
                             "remove_pending"};

  std::map<std::string, token_status> last_status;
  for (int step = 0; step < 120; ++step) {
    const auto& sender = users[pick(4)];
    const auto& op = ops[pick(std::size(ops))];
    std::string tid = std::to_string(pick(6) + 1);
    json payload{{"token_id", tid}};
    if (op == "mint") {
      payload["owner"] = users[pick(3) + 1];
      payload["status"] = pick(2) ? "active" : "pending";
    } else if (op == "transfer") {
      payload["to"] = users[pick(3) + 1];
    } else if (op == "trade") {
      payload["to"] = users[pick(3) + 1];
      payload["payment"] = std::to_string(pick(1000));
    } else if (op == "set_attribute") {
      payload["key"] = "k" + std::to_string(pick(3));
      payload["value"] = "v" + std::to_string(pick(100));
    }

    auto before_hash = r.c.state_hash();
    auto res = r.run(sender, op, payload);
    if (!res.accepted()) {
      CHECK(r.c.state_hash() == before_hash);
      CHECK(res.events.empty());
    }

    const auto& toks = r.c.contract(r.addr).tokens();
    for (const auto& [id, t] : toks) {
      auto it = last_status.find(id);
      if (it != last_status.end() && it->second != t.status)
        CHECK_NOTHROW(assert_transition(it->second, t.status));
      if (it != last_status.end() && it->second == token_status::burned)
        CHECK(t.status == token_status::burned);
      if (!t.forward_ref.empty()) CHECK(t.status == token_status::burned);
    }
    last_status.clear();
    for (const auto& [id, t] : toks) last_status[id] = t.status;
  }
}

}  // namespace

TEST_CASE("random op sequences never reach an illegal state") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) fuzz_contract(seed);
}

TEST_CASE("snapshots round trip byte for byte") {
  rig r(kPolicyCrossChain);
  r.mint("1", "alice");
  r.mint("2", "bob", "pending");
  r.run("alice", "trade", json{{"token_id", "1"}, {"to", "bob"}, {"payment", "5"}});
  r.run("authority", "lock", json{{"token_id", "1"}});
  r.run("authority", "set_resolution", json{{"endpoint", "https://alt.example"}});
  r.run("authority", "remove_pending", json{{"token_id", "2"}});
  r.run("bob", "transfer", json{{"token_id", "1"}, {"to", "x"}});  // rejected: locked

  auto bytes = canonical_dump(r.c.to_json());
  auto restored = chain::from_json(parse_json(bytes));
  CHECK(canonical_dump(restored.to_json()) == bytes);
  CHECK(restored.state_hash() == r.c.state_hash());
}

TEST_CASE("replaying a transaction log reproduces the chain exactly") {
  std::mt19937_64 rng(99);
  auto pick = [&](std::uint64_t n) { return rng() % n; };
  rig r(kPolicyHidden);
  const std::string users[] = {"authority", "alice", "bob"};
  for (int i = 0; i < 60; ++i) {
    std::string tid = std::to_string(pick(4) + 1);
    switch (pick(5)) {
      case 0: r.mint(tid, users[pick(2) + 1], pick(2) ? "active" : "pending"); break;
      case 1: r.run(users[pick(3)], "transfer", json{{"token_id", tid}, {"to", users[pick(2) + 1]}}); break;
      case 2: r.run(users[pick(3)], "burn", json{{"token_id", tid}}); break;
      case 3: r.run("authority", pick(2) ? "lock" : "unlock", json{{"token_id", tid}}); break;
      case 4: r.run("authority", "activate", json{{"token_id", tid}}); break;
    }
  }
  auto replayed = chain::replay(r.c.id(), r.c.tx_log());
  CHECK(canonical_dump(replayed.to_json()) == canonical_dump(r.c.to_json()));
}
