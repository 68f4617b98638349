#include "obstruct/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace obstruct {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
std::optional<T> to_number(const std::string& s) {
  T value{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "family",     "k",          "t",
      "seed",       "budget",     "max_extension_length",
      "random_max_minors",        "threads",
      "max_nodes",  "audit_rate", "out",
      "checkpoint", "resume",     "testset_cache"};
  return keys;
}

ConfigValues parse_config_text(const std::string& text) {
  ConfigValues out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<std::string> bad;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      bad.push_back("line " + std::to_string(lineno));
      continue;
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  if (!bad.empty()) {
    std::string msg = "malformed config lines:";
    for (const auto& b : bad) msg += " " + b;
    throw ConfigError(bad, msg);
  }
  return out;
}

ConfigValues read_config_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError({"config"}, "cannot read config file " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

Config load_config(const ConfigValues& flags,
                   const std::optional<std::filesystem::path>& file,
                   bool need_family) {
  ConfigValues merged;
  if (file) {
    merged = read_config_file(*file);
  } else if (const char* env = std::getenv("OBSTRUCT_CONFIG"); env && *env) {
    merged = read_config_file(env);
  }
  for (const auto& [key, value] : flags) merged[key] = value;

  Config c;
  std::vector<std::string> bad;
  std::string why;
  auto fail = [&](const std::string& key, const std::string& reason) {
    bad.push_back(key);
    why += " " + key + ": " + reason + ";";
  };
  const auto& known = config_keys();
  for (const auto& [key, value] : merged) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      fail(key, "unknown key");
    }
  }
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    if (auto it = merged.find(key); it != merged.end()) return it->second;
    return std::nullopt;
  };
  auto get_int = [&](const std::string& key, long min) -> std::optional<long> {
    auto s = get(key);
    if (!s) return std::nullopt;
    auto v = to_number<long>(*s);
    if (!v) {
      fail(key, "not an integer");
      return std::nullopt;
    }
    if (*v < min) {
      fail(key, "must be >= " + std::to_string(min));
      return std::nullopt;
    }
    return v;
  };

  std::optional<FamilyKind> kind;
  if (auto s = get("family")) {
    try {
      kind = parse_family_kind(*s);
    } catch (const InputError&) {
      fail("family", "expected fvs or fes");
    }
  } else if (need_family) {
    fail("family", "required");
  }
  std::optional<long> k = get_int("k", 0);
  if (!k && !get("k") && need_family) fail("k", "required");
  if (kind && k) c.family = FamilyId(*kind, static_cast<int>(*k));

  if (auto t = get_int("t", 1)) {
    if (*t > 15) {
      fail("t", "must be <= 15");
    } else {
      c.t = static_cast<int>(*t);
    }
  } else if (!get("t")) {
    c.t = k ? static_cast<int>(*k) + 2 : 2;
  }
  if (auto s = get("seed")) {
    if (auto v = to_number<std::uint64_t>(*s)) {
      c.seed = *v;
    } else {
      fail("seed", "not an unsigned integer");
    }
  }
  if (auto v = get_int("budget", 1)) c.random_budget = static_cast<int>(*v);
  if (auto v = get_int("max_extension_length", 1)) c.max_extension_length = static_cast<int>(*v);
  if (auto v = get_int("random_max_minors", 0)) c.random_max_minors = static_cast<int>(*v);
  if (auto v = get_int("threads", 1)) c.threads = static_cast<int>(*v);
  if (auto v = get_int("max_nodes", 0)) c.max_nodes = static_cast<std::uint64_t>(*v);
  if (auto s = get("audit_rate")) {
    try {
      std::size_t used = 0;
      const double r = std::stod(*s, &used);
      if (used != s->size() || r < 0 || r > 1) throw std::invalid_argument("range");
      c.audit_rate = r;
    } catch (const std::exception&) {
      fail("audit_rate", "expected a number in [0, 1]");
    }
  }
  if (auto s = get("out")) c.out_dir = *s;
  if (auto s = get("checkpoint")) c.checkpoint = *s;
  if (auto s = get("resume")) c.resume = *s;
  if (auto s = get("testset_cache")) c.testset_cache = *s;

  if (!bad.empty()) {
    std::sort(bad.begin(), bad.end());
    bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
    throw ConfigError(bad, "invalid configuration:" + why);
  }
  return c;
}

ConfigValues config_echo(const Config& c) {
  std::ostringstream rate;
  rate << c.audit_rate;
  return {
      {"family", to_string(c.family.kind)},
      {"k", std::to_string(c.family.k)},
      {"t", std::to_string(c.t)},
      {"seed", std::to_string(c.seed)},
      {"budget", std::to_string(c.random_budget)},
      {"max_extension_length", std::to_string(c.extension_length())},
      {"random_max_minors", std::to_string(c.random_max_minors)},
      {"threads", std::to_string(c.threads)},
      {"max_nodes", std::to_string(c.max_nodes)},
      {"audit_rate", rate.str()},
  };
}

}  // namespace obstruct
