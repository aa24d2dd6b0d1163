// Copyright 2026 the apnft authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstdint>

namespace apnft {

// World-global logical clock. Every state-changing effect (transaction,
// custody log entry, repository version, journal entry) draws one tick, so
// effects across modules are totally ordered.
class seq_clock {
 public:
  seq_clock() = default;
  explicit seq_clock(std::uint64_t start) : value_(start) {}

  std::uint64_t next() { return value_.fetch_add(1, std::memory_order_relaxed) + 1; }
  std::uint64_t current() const { return value_.load(std::memory_order_relaxed); }
  void reset(std::uint64_t v) { value_.store(v, std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> value_{0};
};

}  // namespace apnft
