#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "obstruct/canonical.hpp"
#include "obstruct/graph.hpp"

namespace obstruct {

/// A unary operator over boundary labels 0..t: either "add a fresh vertex
/// and bind it to label i" or "join the vertices bound to labels i < j".
struct Operator {
  enum class Kind : std::uint8_t { Vertex, Edge };

  Kind kind = Kind::Vertex;
  std::int8_t i = 0;
  std::int8_t j = 0;

  static Operator vertex(int label);
  /// Normalizes to i < j; throws InputError when the labels coincide.
  static Operator edge(int a, int b);

  bool is_vertex() const { return kind == Kind::Vertex; }
  bool is_edge() const { return kind == Kind::Edge; }

  /// Vertex operators order before edge operators, then by labels.
  auto operator<=>(const Operator&) const = default;
};

using Extension = std::vector<Operator>;

std::string to_string(Operator op);
std::string to_string(std::span<const Operator> ops);

/// Operator string that starts with v0 v1 ... vt.
class TParse {
 public:
  TParse() = default;
  /// Throws InputError unless ops start with the initial prefix and every
  /// label lies in 0..t.
  TParse(int t, std::vector<Operator> ops);

  static TParse initial(int t);

  int t() const { return t_; }
  int boundary_size() const { return t_ + 1; }
  std::span<const Operator> ops() const { return ops_; }
  std::size_t length() const { return ops_.size(); }
  /// True when `index` falls inside the initial v0..vt prefix.
  bool in_prefix(std::size_t index) const {
    return index <= static_cast<std::size_t>(t_);
  }
  TParse prefix(std::size_t len) const;

  bool operator==(const TParse&) const = default;
  /// Lexicographic on the operator sequence, then t.
  std::strong_ordering operator<=>(const TParse& other) const;

 private:
  int t_ = 0;
  std::vector<Operator> ops_;
};

std::string to_string(const TParse& p);
/// Whitespace-separated tokens `v<i>` / `e<i>,<j>`. Without an explicit t,
/// t is the length of the leading v0 v1 ... run minus one.
TParse parse_tparse(std::string_view text, std::optional<int> t = {});

/// Graph with labels 0..b-1 bound injectively to vertices.
struct BoundariedGraph {
  Graph graph;
  std::vector<int> boundary;

  BoundariedGraph() = default;
  /// Throws InputError when the labeling is not injective or out of range.
  BoundariedGraph(Graph g, std::vector<int> labels);

  int boundary_size() const { return static_cast<int>(boundary.size()); }
  VertexMask boundary_mask() const;
  VertexMask interior_mask() const {
    return graph.all_vertices() & ~boundary_mask();
  }
  /// Boundary vertices get their label as color, interior vertices share
  /// color boundary_size().
  std::vector<int> colors() const;
};

/// Label-preserving canonical form (interior vertices are anonymous).
CanonicalForm boundaried_form(const BoundariedGraph& g);

/// Replays the operators left to right. Vertices are numbered in creation
/// order; duplicate edges are ignored.
BoundariedGraph realize(const TParse& p);

TParse concat(const TParse& p, std::span<const Operator> z);
TParse concat(const TParse& p, const TParse& z);

/// Disjoint union with equal labels identified; shared edges merge.
Graph circle_plus(const BoundariedGraph& g, const BoundariedGraph& h);

/// Every one-step minor that keeps all boundary vertices and bindings:
/// interior isolated-vertex deletions, single edge deletions, and
/// contractions of edges with an interior endpoint. Each minor is returned as
/// a t-parse realizing it; results are deduplicated by boundaried form and
/// ordered by it.
std::vector<TParse> one_step_boundary_minors(const TParse& p);

/// Operators o such that concat(p, [o]) is canonic: no edge that already
/// exists, strictly increasing edges inside an edge run, and no vertex
/// operator repeating the label of the vertex operator just before it
/// (the initial prefix is exempt). Returned in Operator order.
std::vector<Operator> canonic_extensions(const TParse& p);
bool is_canonic(const TParse& p);

/// In-place realization step (duplicate edges are ignored).
void apply_operator(BoundariedGraph& g, Operator op);
/// canonic_extensions for a realized parse whose last operator outside the
/// initial prefix is `last` (none when the parse is still the prefix).
std::vector<Operator> canonic_extensions(const BoundariedGraph& g,
                                         std::optional<Operator> last);
void canonic_extensions(const BoundariedGraph& g, std::optional<Operator> last,
                        std::vector<Operator>& out);

}  // namespace obstruct
