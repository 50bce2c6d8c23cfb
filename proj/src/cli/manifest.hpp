#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qswap::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();  // config path or inline parameters
  std::vector<std::string> outputs;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  std::string timestamp;  // UTC, ISO 8601; not part of the hash

  nlohmann::json to_json() const;
  // 16 hex digits, FNV-1a over the canonical JSON without the timestamp.
  std::string hash() const;
};

RunManifest make_manifest(std::string command, nlohmann::json inputs, std::uint64_t seed = 0);

std::uint64_t fnv1a64(const std::string& bytes);

// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::string& path, const std::string& contents);

// Rounds to 15 significant digits so serialized values stay diffable.
double round15(double x);

}  // namespace qswap::cli
