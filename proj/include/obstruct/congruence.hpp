#pragma once

#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "obstruct/graph.hpp"
#include "obstruct/tparse.hpp"

namespace obstruct {

// ---------------------------------------------------------------------------
// Parks

/// A reduced witness forest: trees that each carry at least one boundary
/// label, no interior vertex of degree <= 1, and no interior degree-2 vertex
/// with an interior neighbor.
///
/// Stored as a canonical string: every tree is rooted at its smallest label
/// and written as `<node>(<children>)` with children codes sorted; a labeled
/// node is the letter 'A'+label, an interior node is '.'; trees are
/// concatenated in label order. The empty park (no labels) is "".
using ParkCode = std::string;

/// Reduces a labeled forest (labels[v] = boundary label or -1). Throws
/// InputError when the graph contains a cycle or a label repeats.
ParkCode park_reduce(const Graph& forest, std::span<const int> labels);

/// Decodes a park back into a graph with per-vertex labels.
std::pair<Graph, std::vector<int>> park_graph(const ParkCode& park);
int park_order(const ParkCode& park);

/// Adds edge {i,j}. Returns the park unchanged when i and j are already
/// adjacent, nothing when they are connected otherwise (a cycle appears).
std::optional<ParkCode> park_add_edge(const ParkCode& park, int i, int j);
/// Label i becomes an anonymous interior vertex; the result is re-reduced.
ParkCode park_make_interior(const ParkCode& park, int i);
/// Adds label i as an isolated vertex.
ParkCode park_add_isolated(const ParkCode& park, int i);

/// FNV-1a; stable across platforms, used for checkpointed digests.
std::uint64_t text_digest(std::string_view text);

// ---------------------------------------------------------------------------
// k-FVS states

/// One witness class: for a subset S of boundary labels, the park left by a
/// feedback vertex set V with V ∩ boundary = S, and the least |V| over all
/// such witnesses yielding that park.
struct ParkClass {
  ParkCode park;
  int size = 0;

  auto operator<=>(const ParkClass&) const = default;
};

/// Congruence state of a boundaried graph for k-FVS. Subsets S of the
/// boundary are bitmasks over labels. Classes whose size exceeds k are
/// dropped, so f_value(S) = k+1 means no witness.
class FvsState {
 public:
  FvsState() = default;
  FvsState(int boundary_size, int k);

  int boundary_size() const { return b_; }
  int k() const { return k_; }
  unsigned subset_count() const { return 1u << b_; }

  std::span<const ParkClass> classes(unsigned subset) const {
    return classes_[subset];
  }
  int f_value(unsigned subset) const;
  int min_value() const;
  bool in_family() const { return min_value() <= k_; }

  /// Records a witness class, keeping the smaller size per park and
  /// ignoring sizes above k.
  void add(unsigned subset, ParkCode park, int size);

  /// Deterministic text form, also used as the interning key.
  std::string serialize() const;
  static FvsState deserialize(std::string_view text);

  bool operator==(const FvsState&) const = default;

 private:
  int b_ = 0;
  int k_ = 0;
  std::vector<std::vector<ParkClass>> classes_;
};

/// State of the edgeless graph on labels 0..t.
FvsState initial_state(int t, int k);
FvsState state_apply(const FvsState& state, Operator op);
/// Folds state_apply over the operators after the initial prefix.
FvsState state_of(const TParse& p, int k);
/// Exhaustive witness enumeration on the realized graph (oracle). Throws
/// InputError above 40 vertices.
FvsState state_from_scratch(const BoundariedGraph& g, int k);
bool states_equal(const FvsState& a, const FvsState& b);

/// Every park mentioned by the state.
std::set<ParkCode> parks_of(const FvsState& state);

/// Interns states and memoizes transitions. Thread-safe.
class StateCache {
 public:
  StateCache(int t, int k);

  int initial() const { return 0; }
  int apply(int id, Operator op);
  int fold(const TParse& p);
  FvsState state(int id) const;
  bool in_family(int id) const;
  /// Stable 64-bit digest of the state's serialized form.
  std::uint64_t digest(int id) const;
  std::size_t size() const;

 private:
  int intern(FvsState s);

  int k_;
  mutable std::mutex mu_;
  std::deque<FvsState> states_;
  std::vector<char> in_family_;
  std::vector<std::uint64_t> digests_;
  std::unordered_map<std::string, int> ids_;
  std::unordered_map<std::uint64_t, int> transitions_;
};

// ---------------------------------------------------------------------------
// k-FES boundary state

/// Summary of a boundaried graph that fixes FES(G ⊕ H) for every H: the
/// excess |E| - |V| + (components without boundary), the connectivity
/// partition of the labels, and the boundary-boundary edges. Collapses to
/// "out" once FES(G) > k.
std::string fes_state(const BoundariedGraph& g, int k);

// ---------------------------------------------------------------------------
// Direct nonminimality tests

/// Some interior vertex has degree <= 1.
bool fvs_direct_nonminimal(const TParse& p, int k);
/// Interior vertex of degree <= 1, or an edge between interior vertices with
/// no common neighbor.
bool fes_direct_nonminimal(const TParse& p, int k);

}  // namespace obstruct
