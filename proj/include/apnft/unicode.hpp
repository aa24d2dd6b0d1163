// Copyright 2026 the apnft authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// UTF-8 validation and NFC normalization (decompose, reorder, compose).
// Table data is generated by scripts/gen_unicode_tables.py; Hangul syllables
// are handled algorithmically per the standard composition formulas.

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "apnft/errors.hpp"

namespace apnft::unicode {

namespace detail {
#include "apnft/detail/nfc_tables.inc"

constexpr std::uint32_t kHangulSBase = 0xAC00;
constexpr std::uint32_t kHangulLBase = 0x1100;
constexpr std::uint32_t kHangulVBase = 0x1161;
constexpr std::uint32_t kHangulTBase = 0x11A7;
constexpr std::uint32_t kHangulLCount = 19;
constexpr std::uint32_t kHangulVCount = 21;
constexpr std::uint32_t kHangulTCount = 28;
constexpr std::uint32_t kHangulNCount = kHangulVCount * kHangulTCount;
constexpr std::uint32_t kHangulSCount = kHangulLCount * kHangulNCount;

inline int ccc(std::uint32_t cp) {
  auto it = std::lower_bound(std::begin(kCcc), std::end(kCcc), cp,
                             [](const CccEntry& e, std::uint32_t v) { return e.cp < v; });
  return (it != std::end(kCcc) && it->cp == cp) ? it->ccc : 0;
}

inline const DecompEntry* find_decomp(std::uint32_t cp) {
  auto it = std::lower_bound(std::begin(kDecomp), std::end(kDecomp), cp,
                             [](const DecompEntry& e, std::uint32_t v) { return e.cp < v; });
  return (it != std::end(kDecomp) && it->cp == cp) ? &*it : nullptr;
}

inline std::uint32_t compose_pair(std::uint32_t a, std::uint32_t b) {
  // Hangul LV and LVT composition.
  if (a >= kHangulLBase && a < kHangulLBase + kHangulLCount && b >= kHangulVBase &&
      b < kHangulVBase + kHangulVCount) {
    return kHangulSBase + ((a - kHangulLBase) * kHangulVCount + (b - kHangulVBase)) * kHangulTCount;
  }
  if (a >= kHangulSBase && a < kHangulSBase + kHangulSCount &&
      (a - kHangulSBase) % kHangulTCount == 0 && b > kHangulTBase &&
      b < kHangulTBase + kHangulTCount) {
    return a + (b - kHangulTBase);
  }
  auto it = std::lower_bound(
      std::begin(kComp), std::end(kComp), std::pair<std::uint32_t, std::uint32_t>{a, b},
      [](const CompEntry& e, const std::pair<std::uint32_t, std::uint32_t>& v) {
        return e.first != v.first ? e.first < v.first : e.second < v.second;
      });
  if (it != std::end(kComp) && it->first == a && it->second == b) return it->composed;
  return 0;
}

inline void decompose_into(std::uint32_t cp, std::vector<std::uint32_t>& out) {
  if (cp >= kHangulSBase && cp < kHangulSBase + kHangulSCount) {
    std::uint32_t idx = cp - kHangulSBase;
    out.push_back(kHangulLBase + idx / kHangulNCount);
    out.push_back(kHangulVBase + (idx % kHangulNCount) / kHangulTCount);
    if (idx % kHangulTCount != 0) out.push_back(kHangulTBase + idx % kHangulTCount);
    return;
  }
  if (const DecompEntry* e = find_decomp(cp)) {
    for (std::uint32_t i = 0; i < e->len; ++i) out.push_back(kDecompPool[e->offset + i]);
    return;
  }
  out.push_back(cp);
}

}  // namespace detail

// Decodes UTF-8, throwing errc::invalid_utf8 on malformed input (overlong
// forms, surrogates and out-of-range values rejected).
inline std::vector<std::uint32_t> decode_utf8(std::string_view s) {
  std::vector<std::uint32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::uint32_t cp = 0;
    std::size_t len = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      throw error(errc::invalid_utf8, "bad leading byte");
    }
    if (i + len > s.size()) throw error(errc::invalid_utf8, "truncated sequence");
    for (std::size_t k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) throw error(errc::invalid_utf8, "bad continuation byte");
      cp = (cp << 6) | (b & 0x3F);
    }
    static constexpr std::uint32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len]) throw error(errc::invalid_utf8, "overlong encoding");
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
      throw error(errc::invalid_utf8, "invalid code point");
    out.push_back(cp);
    i += len;
  }
  return out;
}

inline void encode_utf8(std::uint32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string nfc(std::string_view s) {
  // Fast path: ASCII is already NFC.
  if (std::all_of(s.begin(), s.end(), [](char c) { return static_cast<unsigned char>(c) < 0x80; }))
    return std::string(s);

  std::vector<std::uint32_t> cps = decode_utf8(s);

  // 1. Full canonical decomposition.
  std::vector<std::uint32_t> nfd;
  nfd.reserve(cps.size() * 2);
  for (std::uint32_t cp : cps) detail::decompose_into(cp, nfd);

  // 2. Canonical ordering: bubble adjacent marks with descending ccc.
  for (std::size_t i = 1; i < nfd.size(); ++i) {
    int k = detail::ccc(nfd[i]);
    if (k == 0) continue;
    std::size_t j = i;
    while (j > 0 && detail::ccc(nfd[j - 1]) > k) {
      std::swap(nfd[j - 1], nfd[j]);
      --j;
    }
  }

  // 3. Canonical composition.
  std::vector<std::uint32_t> out;
  out.reserve(nfd.size());
  std::ptrdiff_t last_starter = -1;
  int prev_ccc = -1;
  for (std::uint32_t cp : nfd) {
    int k = detail::ccc(cp);
    if (last_starter >= 0 && prev_ccc < k) {
      if (std::uint32_t comp = detail::compose_pair(out[last_starter], cp)) {
        out[last_starter] = comp;
        continue;  // prev_ccc unchanged: the mark was absorbed
      }
    }
    if (k == 0) {
      if (last_starter >= 0 && prev_ccc == 0) {
        // Starter directly after starter: try to compose (L+V, LV+T, singleton pairs).
        if (std::uint32_t comp = detail::compose_pair(out[last_starter], cp)) {
          out[last_starter] = comp;
          continue;
        }
      }
      last_starter = static_cast<std::ptrdiff_t>(out.size());
    }
    out.push_back(cp);
    prev_ccc = k;
  }

  std::string result;
  result.reserve(s.size());
  for (std::uint32_t cp : out) encode_utf8(cp, result);
  return result;
}

}  // namespace apnft::unicode
