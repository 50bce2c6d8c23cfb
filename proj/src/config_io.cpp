#include "qswap/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qswap {

using nlohmann::json;

std::string config_to_json(const RegisterConfig& config, int indent) {
  json doc;
  doc["schema_version"] = kConfigSchema;
  doc["N"] = config.n_static;
  doc["kd"] = config.kd;
  doc["g"] = config.g;
  doc["target"] = config.target;
  if (!config.windings.empty()) doc["windings"] = config.windings;
  if (!config.couplings.empty()) doc["couplings"] = config.couplings;
  return doc.dump(indent);
}

RegisterConfig config_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("config: top level must be an object");

  static const std::set<std::string> known{"schema_version", "N",        "kd",       "g",
                                           "target",         "windings", "couplings", "manifest"};
  for (const auto& item : doc.items()) {
    if (!known.count(item.key())) throw SchemaError("config: unknown key '" + item.key() + "'");
  }
  if (!doc.contains("schema_version") || doc["schema_version"] != kConfigSchema) {
    throw SchemaError("config: schema_version must be \"v1\"");
  }
  for (const char* key : {"N", "kd", "g", "target"}) {
    if (!doc.contains(key)) throw SchemaError(std::string("config: missing key '") + key + "'");
  }

  RegisterConfig config;
  try {
    if (!doc["N"].is_number_integer()) throw SchemaError("config: N must be an integer");
    if (!doc["target"].is_number_integer()) throw SchemaError("config: target must be an integer");
    if (!doc["g"].is_number()) throw SchemaError("config: g must be a number");
    config.n_static = doc["N"].get<int>();
    config.target = doc["target"].get<int>();
    config.g = doc["g"].get<double>();
    config.kd = doc["kd"].get<std::vector<double>>();
    if (doc.contains("windings")) config.windings = doc["windings"].get<std::vector<int>>();
    if (doc.contains("couplings")) config.couplings = doc["couplings"].get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("config: ") + e.what());
  }
  validate(config);
  return config;
}

RegisterConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return config_from_json(buffer.str());
}

}  // namespace qswap
