#pragma once

// JSON (de)serialization of register configurations, schema "v1":
//   {"schema_version": "v1", "N": 2, "kd": [...], "g": 1.15, "target": 1,
//    "windings": [...], "couplings": [...]}
// "windings" and "couplings" are optional; a "manifest" hash is ignored.

#include <string>

#include "qswap/protocol.hpp"

namespace qswap {

inline constexpr const char* kConfigSchema = "v1";

std::string config_to_json(const RegisterConfig& config, int indent = 2);

// Throws SchemaError on malformed documents, unknown keys or a wrong schema
// version, and InputError when the decoded config fails validation.
RegisterConfig config_from_json(const std::string& text);

RegisterConfig load_config(const std::string& path);

}  // namespace qswap
