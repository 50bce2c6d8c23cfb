#include "cli/manifest.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "qswap/types.hpp"

namespace qswap::cli {

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["seed"] = seed;
  j["tool_version"] = tool_version;
  j["timestamp"] = timestamp;
  j["hash"] = hash();
  return j;
}

std::string RunManifest::hash() const {
  nlohmann::json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["seed"] = seed;
  j["tool_version"] = tool_version;
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(j.dump());
  return os.str();
}

RunManifest make_manifest(std::string command, nlohmann::json inputs, std::uint64_t seed) {
  RunManifest m;
  m.command = std::move(command);
  m.inputs = std::move(inputs);
  m.seed = seed;
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  m.timestamp = buf;
  return m;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void write_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw InputError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw InputError("cannot move output into place at '" + path + "': " + ec.message());
  }
}

double round15(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

}  // namespace qswap::cli
