#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace obstruct {

/// Raised for malformed input: bad edges, out-of-range vertices, bad text.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using VertexMask = std::uint64_t;

inline constexpr VertexMask bit(int v) { return VertexMask{1} << v; }

/// Unordered vertex pair, normalized so that u < v.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

  auto operator<=>(const Edge&) const = default;
};

/// Simple undirected graph on vertices 0..order-1 with bit-row adjacency.
///
/// Minor operations return new graphs; add_vertex/add_edge grow in place.
class Graph {
 public:
  static constexpr int kMaxOrder = 64;

  Graph() = default;
  explicit Graph(int order);
  /// Throws InputError on self-loops or endpoints >= order. Repeated edges
  /// collapse.
  Graph(int order, std::span<const Edge> edges);
  Graph(int order, std::initializer_list<Edge> edges)
      : Graph(order, std::span<const Edge>(edges.begin(), edges.size())) {}

  /// Builds from adjacency rows; rows must be symmetric and loop-free.
  static Graph from_rows(std::vector<VertexMask> rows);

  int order() const { return static_cast<int>(rows_.size()); }
  int size() const;
  bool has_edge(int u, int v) const {
    return u != v && (rows_[u] & bit(v)) != 0;
  }
  VertexMask neighbors(int v) const { return rows_[v]; }
  int degree(int v) const { return std::popcount(rows_[v]); }
  VertexMask all_vertices() const {
    return order() == 64 ? ~VertexMask{0} : bit(order()) - 1;
  }
  std::span<const VertexMask> rows() const { return rows_; }

  /// Appends an isolated vertex and returns its index.
  int add_vertex();
  void add_edge(int u, int v) {
    rows_[u] |= bit(v);
    rows_[v] |= bit(u);
  }

  /// Sorted edge list.
  std::vector<Edge> edges() const;

  /// Labeled equality (same order, same edge set).
  bool operator==(const Graph&) const = default;

 private:
  std::vector<VertexMask> rows_;
};

// Minor operations. Survivors keep their relative order and are renumbered
// contiguously.

Graph delete_edge(const Graph& g, Edge e);
Graph delete_vertex(const Graph& g, int v);
/// Merges e.v into e.u (e is normalized, so the lower index survives).
Graph contract_edge(const Graph& g, Edge e);
/// Induced subgraph on `keep`, renumbered in increasing vertex order.
Graph induced_subgraph(const Graph& g, VertexMask keep);
/// Vertices are renamed: vertex v of g becomes perm[v].
Graph relabel(const Graph& g, std::span<const int> perm);

/// All graphs one isolated-vertex deletion, edge deletion or edge
/// contraction away from g, deduplicated up to isomorphism and sorted by
/// canonical form.
std::vector<Graph> one_step_minors(const Graph& g);

int component_count(const Graph& g);
bool is_connected(const Graph& g);
bool is_acyclic(const Graph& g);
/// Connected components as vertex masks, ordered by smallest vertex.
std::vector<VertexMask> components(const Graph& g);

// Named families.

Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph empty_graph(int n);
/// K_n with every edge doubled by a path of length two.
Graph augmented_complete(int n);
/// C_n with every edge doubled by a path of length two.
Graph augmented_cycle(int n);
/// Hub joined to every vertex of C_n.
Graph wheel_graph(int n);
Graph disjoint_union(const Graph& g, const Graph& h);

}  // namespace obstruct
