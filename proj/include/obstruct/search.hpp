#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "obstruct/config.hpp"
#include "obstruct/congruence.hpp"
#include "obstruct/testset.hpp"
#include "obstruct/tparse.hpp"

namespace obstruct {

struct SearchStats {
  std::uint64_t evaluated = 0;
  std::uint64_t expanded = 0;
  std::uint64_t children = 0;
  std::uint64_t duplicates = 0;
  std::map<std::string, std::uint64_t> by_status;
  /// Decisive stage (1-4) of every verdict.
  std::map<int, std::uint64_t> by_stage;
  /// Lengths of the random extensions that separated a minor.
  std::map<int, std::uint64_t> extension_lengths;
  std::vector<std::uint64_t> level_sizes;
  std::uint64_t audited = 0;
  std::uint64_t audit_disagreements = 0;

  bool operator==(const SearchStats&) const = default;
};

/// 128-bit digest of a node key.
struct NodeDigest {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  auto operator<=>(const NodeDigest&) const = default;
};

struct NodeDigestHash {
  std::size_t operator()(const NodeDigest& d) const { return d.lo; }
};

NodeDigest node_digest(std::string_view key);

/// Outcome recorded per evaluated node key.
struct NodeLog {
  VerdictStatus status = VerdictStatus::Minimal;
  bool in_family = true;

  bool operator==(const NodeLog&) const = default;
};

/// Everything needed to continue a search at a level boundary.
struct SearchState {
  FamilyId family;
  int t = 0;
  std::uint64_t seed = 0;
  std::uint64_t level = 0;
  std::vector<TParse> frontier;
  std::vector<TParse> boundary_obstructions;
  /// Keyed by the digest of node_key.
  std::unordered_map<NodeDigest, NodeLog, NodeDigestHash> log;
  /// Digests of the congruence classes of evaluated nodes.
  std::set<std::uint64_t> congruence_classes;
  SearchStats stats;

  bool operator==(const SearchState&) const = default;
};

/// Dedup key: label-preserving canonical form plus the last operator when
/// it lies past the initial prefix (it constrains the canonic extensions).
std::string node_key(const TParse& p);

/// The four-stage minimality pipeline with caches shared across nodes.
/// Thread-safe.
class Evaluator {
 public:
  Evaluator(FamilyId f, int t, const TestSet& ts, const Config& cfg);

  struct Outcome {
    MinimalityVerdict verdict;
    bool in_family = true;
    std::uint64_t congruence_class = 0;
  };

  Outcome evaluate(const TParse& p);

  /// Re-derives the verdict with a plain full-testset pass and reports
  /// whether it agrees (minimal vs nonminimal; random-stage distinguishers
  /// are replayed).
  bool audit(const TParse& p, const MinimalityVerdict& v) const;

  std::size_t congruence_states() const;

 private:
  std::string congruence_key(const TParse& p, const BoundariedGraph& bg);
  std::vector<std::uint64_t> signature(const std::string& key,
                                       const BoundariedGraph& bg);
  std::uint64_t node_seed(const TParse& p, std::size_t minor) const;

  FamilyId f_;
  int t_;
  const TestSet& ts_;
  Config cfg_;
  std::unique_ptr<StateCache> states_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::vector<std::uint64_t>> signatures_;
};

/// One-off evaluation with fresh caches.
MinimalityVerdict evaluate_node(const TParse& p, FamilyId f, const TestSet& ts,
                                const Config& cfg);

struct ObstructionReport {
  Config config;
  bool complete = false;
  std::vector<TParse> boundary_obstructions;
  std::vector<Graph> obstructions;
  /// Boundary obstructions whose graph did not certify (graph6).
  std::vector<std::string> rejected;
  SearchStats stats;
  /// Distinct congruence classes among evaluated nodes.
  std::size_t congruence_states = 0;
  std::size_t testset_size = 0;
  std::size_t prefix_audit_checked = 0;
  std::size_t prefix_audit_failures = 0;
  double elapsed_seconds = 0;
  std::filesystem::path checkpoint_written;
};

/// Breadth-first search over canonic t-parses. Stops at a level boundary
/// once cfg.max_nodes nodes were evaluated, writing a checkpoint and
/// returning an incomplete report. `ts` overrides testset loading; `log`
/// receives one progress line per level.
ObstructionReport search(const Config& cfg, const TestSet* ts = nullptr,
                         std::ostream* log = nullptr);

std::string report_json(const ObstructionReport& r);
/// Writes obstructions.g6, boundary_obstructions.tparse and report.json.
void write_outputs(const ObstructionReport& r, const std::filesystem::path& dir);

}  // namespace obstruct
