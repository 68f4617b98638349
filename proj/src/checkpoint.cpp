#include "obstruct/checkpoint.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace obstruct {

namespace {

using nlohmann::json;

VerdictStatus status_from(int code) {
  if (code < 0 || code > 3) throw InputError("bad verdict code in checkpoint");
  return static_cast<VerdictStatus>(code);
}

json stats_json(const SearchStats& s) {
  json by_status = json::object(), by_stage = json::object(), lengths = json::object();
  for (const auto& [k, v] : s.by_status) by_status[k] = v;
  for (const auto& [k, v] : s.by_stage) by_stage[std::to_string(k)] = v;
  for (const auto& [k, v] : s.extension_lengths) lengths[std::to_string(k)] = v;
  return {{"evaluated", s.evaluated},     {"expanded", s.expanded},
          {"children", s.children},       {"duplicates", s.duplicates},
          {"by_status", by_status},       {"by_stage", by_stage},
          {"extension_lengths", lengths}, {"level_sizes", s.level_sizes},
          {"audited", s.audited},         {"audit_disagreements", s.audit_disagreements}};
}

SearchStats stats_from(const json& j) {
  SearchStats s;
  s.evaluated = j.at("evaluated").get<std::uint64_t>();
  s.expanded = j.at("expanded").get<std::uint64_t>();
  s.children = j.at("children").get<std::uint64_t>();
  s.duplicates = j.at("duplicates").get<std::uint64_t>();
  for (const auto& [k, v] : j.at("by_status").items()) s.by_status[k] = v.get<std::uint64_t>();
  for (const auto& [k, v] : j.at("by_stage").items()) s.by_stage[std::stoi(k)] = v.get<std::uint64_t>();
  for (const auto& [k, v] : j.at("extension_lengths").items()) {
    s.extension_lengths[std::stoi(k)] = v.get<std::uint64_t>();
  }
  s.level_sizes = j.at("level_sizes").get<std::vector<std::uint64_t>>();
  s.audited = j.at("audited").get<std::uint64_t>();
  s.audit_disagreements = j.at("audit_disagreements").get<std::uint64_t>();
  return s;
}

}  // namespace

std::string checkpoint_to_string(const SearchState& s) {
  json frontier = json::array(), obstructions = json::array(), log = json::array();
  for (const TParse& p : s.frontier) frontier.push_back(to_string(p));
  for (const TParse& p : s.boundary_obstructions) obstructions.push_back(to_string(p));
  std::vector<std::pair<NodeDigest, NodeLog>> entries(s.log.begin(), s.log.end());
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [key, node] : entries) {
    log.push_back({key.hi, key.lo, static_cast<int>(node.status), node.in_family ? 1 : 0});
  }
  json j = {{"version", kCheckpointVersion},
            {"family", to_string(s.family.kind)},
            {"k", s.family.k},
            {"t", s.t},
            {"seed", s.seed},
            {"level", s.level},
            {"frontier", frontier},
            {"boundary_obstructions", obstructions},
            {"log", log},
            {"congruence_classes", s.congruence_classes},
            {"stats", stats_json(s.stats)}};
  return j.dump() + "\n";
}

SearchState checkpoint_from_string(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (!j.contains("version") || j.at("version").get<int>() != kCheckpointVersion) {
      throw InputError("checkpoint version mismatch");
    }
    SearchState s;
    s.family = FamilyId(parse_family_kind(j.at("family").get<std::string>()),
                        j.at("k").get<int>());
    s.t = j.at("t").get<int>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.level = j.at("level").get<std::uint64_t>();
    for (const auto& p : j.at("frontier")) s.frontier.push_back(parse_tparse(p.get<std::string>(), s.t));
    for (const auto& p : j.at("boundary_obstructions")) {
      s.boundary_obstructions.push_back(parse_tparse(p.get<std::string>(), s.t));
    }
    for (const auto& e : j.at("log")) {
      if (!e.is_array() || e.size() != 4) throw InputError("bad log entry in checkpoint");
      s.log.emplace(NodeDigest{e[0].get<std::uint64_t>(), e[1].get<std::uint64_t>()},
                    NodeLog{status_from(e[2].get<int>()), e[3].get<int>() != 0});
    }
    s.congruence_classes = j.at("congruence_classes").get<std::set<std::uint64_t>>();
    s.stats = stats_from(j.at("stats"));
    return s;
  } catch (const json::exception& e) {
    throw InputError(std::string("corrupt checkpoint: ") + e.what());
  }
}

void save_checkpoint(const std::filesystem::path& file, const SearchState& s) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << checkpoint_to_string(s);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, file);
}

SearchState load_checkpoint(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InputError("cannot read checkpoint " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return checkpoint_from_string(ss.str());
}

}  // namespace obstruct
