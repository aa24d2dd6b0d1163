// Copyright 2026 the apnft authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Canonical JSON: UTF-8, object keys sorted ascending by code point, no
// insignificant whitespace, integers in shortest decimal form, strings
// NFC-normalized. Equal values always serialize to equal bytes, so the
// output is a fit hashing pre-image. Floating point values are rejected.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "apnft/errors.hpp"
#include "apnft/unicode.hpp"

namespace apnft {

using json = nlohmann::json;

namespace detail {

inline void canonical_escape(const std::string& s, std::string& out) {
  static constexpr char kHex[] = "0123456789abcdef";
  out.push_back('"');
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\f': out += "\\f"; break;
      case '\r': out += "\\r"; break;
      default:
        if (c < 0x20) {
          out += "\\u00";
          out.push_back(kHex[c >> 4]);
          out.push_back(kHex[c & 0xF]);
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  out.push_back('"');
}

inline void canonical_dump_value(const json& v, std::string& out) {
  switch (v.type()) {
    case json::value_t::null:
      out += "null";
      break;
    case json::value_t::boolean:
      out += v.get<bool>() ? "true" : "false";
      break;
    case json::value_t::number_integer:
      out += std::to_string(v.get<std::int64_t>());
      break;
    case json::value_t::number_unsigned:
      out += std::to_string(v.get<std::uint64_t>());
      break;
    case json::value_t::string:
      canonical_escape(unicode::nfc(v.get_ref<const std::string&>()), out);
      break;
    case json::value_t::array: {
      out.push_back('[');
      bool first = true;
      for (const auto& e : v) {
        if (!first) out.push_back(',');
        first = false;
        canonical_dump_value(e, out);
      }
      out.push_back(']');
      break;
    }
    case json::value_t::object: {
      // Keys are NFC-normalized before ordering; two keys collapsing to the
      // same normalized form make the value ambiguous.
      std::map<std::string, const json*> entries;
      for (auto it = v.begin(); it != v.end(); ++it) {
        auto [pos, inserted] = entries.emplace(unicode::nfc(it.key()), &it.value());
        if (!inserted) throw error(errc::duplicate_key, "keys collide after NFC: " + pos->first);
      }
      out.push_back('{');
      bool first = true;
      for (const auto& [key, val] : entries) {
        if (!first) out.push_back(',');
        first = false;
        canonical_escape(key, out);
        out.push_back(':');
        canonical_dump_value(*val, out);
      }
      out.push_back('}');
      break;
    }
    default:
      throw error(errc::unsupported_value,
                  "value type has no canonical form: " + std::string(v.type_name()));
  }
}

}  // namespace detail

inline std::string canonical_dump(const json& v) {
  std::string out;
  detail::canonical_dump_value(v, out);
  return out;
}

// Strict parse used for snapshots, scenarios and traces.
inline json parse_json(const std::string& text, errc on_error = errc::corrupt_snapshot) {
  json v = json::parse(text, nullptr, false);
  if (v.is_discarded()) throw error(on_error, "unparseable JSON");
  return v;
}

}  // namespace apnft
