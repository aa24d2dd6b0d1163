// Copyright 2026 the apnft authors
// SPDX-License-Identifier: Apache-2.0
//
// apnft: run scripted scenarios, fuzz random ones, replay traces, audit
// snapshots. Exit codes: 0 clean, 1 violations/divergence, 2 parse errors.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "apnft/auditor.hpp"
#include "apnft/scenario.hpp"

namespace fs = std::filesystem;
using namespace apnft;

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return data;
}

bool write_file(const fs::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out << data;
  return static_cast<bool>(out);
}

// --out wins over APNFT_OUT; empty means no files are written.
std::string pick_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  const char* env = std::getenv("APNFT_OUT");
  return env ? env : "";
}

bool prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) std::cerr << "apnft: cannot create " << dir << ": " << ec.message() << "\n";
  return !ec;
}

int cmd_run(const std::string& file, std::uint64_t seed, bool seed_set,
            const std::vector<std::string>& injects, const std::string& out_flag,
            bool audit_each_step, bool parallel_assets) {
  auto bytes = read_file(file);
  if (!bytes) {
    std::cerr << "apnft: cannot read " << file << "\n";
    return 2;
  }
  scenario sc;
  try {
    sc = scenario_from_json(parse_json(*bytes, errc::invalid_argument));
    if (seed_set) sc.seed = seed;
    for (const auto& spec : injects) {
      auto colon = spec.find(':');
      if (colon == std::string::npos)
        throw error(errc::invalid_argument, "--inject wants STEP:POINT, got " + spec);
      crash_injection inj;
      inj.step = std::stoull(spec.substr(0, colon));
      inj.point = spec.substr(colon + 1);
      if (!known_crash_point(inj.point))
        throw error(errc::invalid_argument, "unknown crash point: " + inj.point);
      if (inj.step >= sc.steps.size())
        throw error(errc::invalid_argument, "injection step out of range: " + spec);
      sc.injections.push_back(std::move(inj));
    }
  } catch (const std::exception& e) {
    std::cerr << "apnft: " << e.what() << "\n";
    return 2;
  }

  run_options opt;
  opt.audit_each_step = audit_each_step;
  opt.parallel_assets = parallel_assets;
  scenario_runner runner;
  auto result = runner.run(sc, opt);

  std::cout << result.report.text();
  std::cout << (result.crashes ? std::to_string(result.crashes) + " crash(es) injected and "
                                 "recovered; "
                               : "")
            << result.rejected_steps << " step(s) rejected\n";

  auto dir = pick_out_dir(out_flag);
  if (!dir.empty()) {
    if (!prepare_out_dir(dir)) return 2;
    bool ok = write_file(fs::path(dir) / "trace.jsonl", result.trace_text()) &&
              write_file(fs::path(dir) / "report.json", result.report.canonical() + "\n") &&
              write_file(fs::path(dir) / "report.txt", result.report.text()) &&
              write_file(fs::path(dir) / "snapshot.json", result.snapshot + "\n");
    std::size_t k = 0;
    for (const auto& [step, snap] : result.crash_snapshots) {
      ok = ok && write_file(fs::path(dir) / ("crash_" + std::to_string(k++) + "_step" +
                                             std::to_string(step) + ".snapshot.json"),
                            snap + "\n");
    }
    if (!ok) {
      std::cerr << "apnft: failed writing outputs to " << dir << "\n";
      return 2;
    }
  }
  return result.exit_code();
}

int cmd_fuzz(std::uint64_t n, std::uint64_t seed, const std::string& mix, bool inject,
             const std::string& out_flag) {
  fuzz_options opt;
  opt.n = n;
  opt.seed = seed;
  opt.mix = mix;
  opt.inject = inject;
  fuzz_summary sum;
  try {
    sum = run_fuzz(opt);
  } catch (const error& e) {
    std::cerr << "apnft: " << e.what() << "\n";
    return 2;
  }
  std::cout << sum.text();

  auto dir = pick_out_dir(out_flag);
  if (!dir.empty()) {
    if (!prepare_out_dir(dir) ||
        !write_file(fs::path(dir) / "summary.json", sum.canonical() + "\n")) {
      std::cerr << "apnft: failed writing summary to " << dir << "\n";
      return 2;
    }
  }
  return sum.exit_code();
}

int cmd_replay(const std::string& file) {
  auto bytes = read_file(file);
  if (!bytes) {
    std::cerr << "apnft: cannot read " << file << "\n";
    return 2;
  }
  replay_result r;
  try {
    r = replay_trace(*bytes);
  } catch (const std::exception& e) {
    std::cerr << "apnft: " << e.what() << "\n";
    return 2;
  }
  if (r.match) {
    std::cout << "replay: match\n";
    return 0;
  }
  std::cout << "replay: divergence at line " << r.divergent_line << "\n"
            << "  recorded: " << r.expected << "\n"
            << "  replayed: " << r.actual << "\n";
  return 1;
}

int cmd_audit(const std::string& file, const std::string& out_flag) {
  auto bytes = read_file(file);
  if (!bytes) {
    std::cerr << "apnft: cannot read " << file << "\n";
    return 2;
  }
  audit_report report;
  try {
    report = audit_snapshot(*bytes);
  } catch (const std::exception& e) {
    std::cerr << "apnft: " << e.what() << "\n";
    return 2;
  }
  std::cout << report.text();

  auto dir = pick_out_dir(out_flag);
  if (!dir.empty()) {
    if (!prepare_out_dir(dir) ||
        !write_file(fs::path(dir) / "report.json", report.canonical() + "\n") ||
        !write_file(fs::path(dir) / "report.txt", report.text())) {
      std::cerr << "apnft: failed writing report to " << dir << "\n";
      return 2;
    }
  }
  return report.clean() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"asset proxy NFT scenario runner and auditor"};
  app.require_subcommand(1);

  std::string run_file, run_out;
  std::uint64_t run_seed = 0;
  std::vector<std::string> run_injects;
  bool run_audit_each = false, run_parallel = false;
  auto* run = app.add_subcommand("run", "execute a scenario file");
  run->add_option("file", run_file, "scenario JSON file")->required();
  auto* seed_opt = run->add_option("--seed", run_seed, "override the scenario seed");
  run->add_option("--inject", run_injects, "extra crash injection STEP:POINT");
  run->add_option("--out", run_out, "output directory (default $APNFT_OUT)");
  run->add_flag("--audit-each-step", run_audit_each, "audit after every step");
  run->add_flag("--parallel-assets", run_parallel,
                "run independent per-asset steps on threads (trace not byte-stable)");

  std::uint64_t fuzz_n = 100, fuzz_seed = 1;
  std::string fuzz_mix, fuzz_out;
  bool fuzz_no_inject = false;
  auto* fz = app.add_subcommand("fuzz", "run randomized scenarios");
  fz->add_option("--n", fuzz_n, "number of scenarios");
  fz->add_option("--seed", fuzz_seed, "generator seed");
  fz->add_option("--mix", fuzz_mix, "action mix, e.g. trade:3,update:2,xchain:1");
  fz->add_flag("--no-inject", fuzz_no_inject, "skip the crash-injected second runs");
  fz->add_option("--out", fuzz_out, "output directory (default $APNFT_OUT)");

  std::string replay_file;
  auto* rp = app.add_subcommand("replay", "re-execute a trace and compare bytes");
  rp->add_option("file", replay_file, "trace.jsonl from a previous run")->required();

  std::string audit_file, audit_out;
  auto* au = app.add_subcommand("audit", "audit a world snapshot");
  au->add_option("file", audit_file, "snapshot JSON file")->required();
  au->add_option("--out", audit_out, "output directory (default $APNFT_OUT)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (run->parsed())
    return cmd_run(run_file, run_seed, seed_opt->count() > 0, run_injects, run_out,
                   run_audit_each, run_parallel);
  if (fz->parsed()) return cmd_fuzz(fuzz_n, fuzz_seed, fuzz_mix, !fuzz_no_inject, fuzz_out);
  if (rp->parsed()) return cmd_replay(replay_file);
  return cmd_audit(audit_file, audit_out);
}
