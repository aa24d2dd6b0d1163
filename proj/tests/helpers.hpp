// Copyright 2026 the apnft authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace testutil {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline nlohmann::json load_fixture(const std::string& name) {
  return nlohmann::json::parse(read_file(std::string(APNFT_FIXTURE_DIR) + "/" + name));
}

}  // namespace testutil
