#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace partreg::cli {

using nlohmann::json;

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string canonical(const json& input) { return std::string(kEngineVersion) + "\n" + input.dump(); }

}  // namespace

Cache Cache::from_env() {
  const char* dir = std::getenv("PARTREG_CACHE_DIR");
  return Cache(dir ? dir : "");
}

std::string Cache::key(const json& input) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical(input))));
  return buf;
}

std::string Cache::path_for(const std::string& key) const { return dir_ + "/" + key + ".json"; }

std::optional<json> Cache::get(const json& input) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(path_for(key(input)));
  if (!in) return std::nullopt;
  try {
    json stored = json::parse(in);
    // A hash collision or a stale engine must not pass for a hit.
    if (stored.at("engine_version") != kEngineVersion || stored.at("input") != input) return std::nullopt;
    return stored.at("entry");
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

void Cache::put(const json& input, const json& entry) const {
  if (!enabled()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  const std::string path = path_for(key(input));
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << json{{"engine_version", kEngineVersion}, {"input", input}, {"entry", entry}}.dump();
  }
  std::filesystem::rename(tmp, path, ec);
}

}  // namespace partreg::cli
