#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "obstruct/graph.hpp"
#include "obstruct/solvers.hpp"

namespace obstruct {

/// Invalid configuration; the message lists every offending key.
class ConfigError : public InputError {
 public:
  ConfigError(std::vector<std::string> keys, const std::string& what)
      : InputError(what), keys_(std::move(keys)) {}
  const std::vector<std::string>& keys() const { return keys_; }

 private:
  std::vector<std::string> keys_;
};

struct Config {
  FamilyId family;
  int t = 0;
  std::uint64_t seed = 1;
  /// Random distinguisher attempts per one-step minor.
  int random_budget = 200;
  /// Longest random extension; 0 means 3(t+1).
  int max_extension_length = 0;
  /// Random distinguishers are skipped for parses with more minors.
  int random_max_minors = 64;
  int threads = 1;
  /// Stop (with a checkpoint) at the first level boundary after this many
  /// evaluated nodes; 0 means no limit.
  std::uint64_t max_nodes = 0;
  /// Fraction of shortcut verdicts re-checked against the full testset.
  double audit_rate = 0.01;
  std::filesystem::path out_dir = "out";
  std::filesystem::path checkpoint;
  std::filesystem::path resume;
  std::filesystem::path testset_cache;

  int extension_length() const {
    return max_extension_length > 0 ? max_extension_length : 3 * (t + 1);
  }
};

using ConfigValues = std::map<std::string, std::string>;

/// Keys accepted in config files and on the command line.
const std::vector<std::string>& config_keys();

/// Parses `key = value` lines; '#' starts a comment.
ConfigValues parse_config_text(const std::string& text);
ConfigValues read_config_file(const std::filesystem::path& file);

/// Defaults, then the file (or $OBSTRUCT_CONFIG when no file is given),
/// then the flags. With `need_family`, family and k must be set. A missing
/// t defaults to k+2.
Config load_config(const ConfigValues& flags,
                   const std::optional<std::filesystem::path>& file = {},
                   bool need_family = true);

/// Effective configuration as sorted key/value pairs.
ConfigValues config_echo(const Config& c);

}  // namespace obstruct
