#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace partreg::cli {

inline constexpr std::string_view kEngineVersion = "partreg-engine/1.0.0";

inline constexpr int kExitPr = 0;
inline constexpr int kExitNotPr = 1;
inline constexpr int kExitUnknown = 2;
inline constexpr int kExitLimit = 3;
inline constexpr int kExitError = 4;
inline constexpr int kExitUsage = 64;

/// Runs one command line (without the program name). Reports go to out as one
/// JSON document; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Result cache keyed by engine version and canonical input. Disabled when dir is empty.
class Cache {
 public:
  explicit Cache(std::string dir) : dir_(std::move(dir)) {}
  /// Reads PARTREG_CACHE_DIR.
  static Cache from_env();

  bool enabled() const { return !dir_.empty(); }
  static std::string key(const nlohmann::json& input);
  std::optional<nlohmann::json> get(const nlohmann::json& input) const;
  void put(const nlohmann::json& input, const nlohmann::json& entry) const;

 private:
  std::string path_for(const std::string& key) const;
  std::string dir_;
};

}  // namespace partreg::cli
