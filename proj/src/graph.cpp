#include "obstruct/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "obstruct/canonical.hpp"

namespace obstruct {

namespace {

void check_order(int order) {
  if (order < 0 || order > Graph::kMaxOrder) {
    throw InputError("graph order " + std::to_string(order) +
                     " outside [0, 64]");
  }
}

// Removes bit `v` from a row and shifts the higher bits down by one.
VertexMask squeeze(VertexMask row, int v) {
  const VertexMask low = row & (bit(v) - 1);
  const VertexMask high = v == 63 ? 0 : (row >> (v + 1)) << v;
  return low | high;
}

}  // namespace

Graph::Graph(int order) {
  check_order(order);
  rows_.assign(order, 0);
}

Graph::Graph(int order, std::span<const Edge> edges) : Graph(order) {
  for (const Edge& e : edges) {
    if (e.u == e.v) {
      throw InputError("self-loop at vertex " + std::to_string(e.u));
    }
    if (e.u < 0 || e.v >= order) {
      throw InputError("edge (" + std::to_string(e.u) + "," +
                       std::to_string(e.v) + ") outside vertex range");
    }
    rows_[e.u] |= bit(e.v);
    rows_[e.v] |= bit(e.u);
  }
}

int Graph::add_vertex() {
  if (order() >= kMaxOrder) throw InputError("graph exceeds 64 vertices");
  rows_.push_back(0);
  return order() - 1;
}

Graph Graph::from_rows(std::vector<VertexMask> rows) {
  Graph g(static_cast<int>(rows.size()));
  const VertexMask all = g.all_vertices();
  for (int v = 0; v < g.order(); ++v) {
    if ((rows[v] & bit(v)) != 0 || (rows[v] & ~all) != 0) {
      throw InputError("invalid adjacency row " + std::to_string(v));
    }
    for (VertexMask r = rows[v]; r != 0; r &= r - 1) {
      const int w = std::countr_zero(r);
      if ((rows[w] & bit(v)) == 0) {
        throw InputError("asymmetric adjacency rows");
      }
    }
  }
  g.rows_ = std::move(rows);
  return g;
}

int Graph::size() const {
  int twice = 0;
  for (VertexMask r : rows_) twice += std::popcount(r);
  return twice / 2;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < order(); ++u) {
    for (VertexMask r = rows_[u] & ~(bit(u + 1) - 1); r != 0; r &= r - 1) {
      out.emplace_back(u, std::countr_zero(r));
    }
  }
  return out;
}

Graph delete_edge(const Graph& g, Edge e) {
  if (e.u < 0 || e.v >= g.order() || !g.has_edge(e.u, e.v)) {
    throw InputError("no such edge");
  }
  std::vector<VertexMask> rows(g.rows().begin(), g.rows().end());
  rows[e.u] &= ~bit(e.v);
  rows[e.v] &= ~bit(e.u);
  return Graph::from_rows(std::move(rows));
}

Graph delete_vertex(const Graph& g, int v) {
  if (v < 0 || v >= g.order()) {
    throw InputError("no such vertex " + std::to_string(v));
  }
  std::vector<VertexMask> rows;
  rows.reserve(g.order() - 1);
  for (int w = 0; w < g.order(); ++w) {
    if (w != v) rows.push_back(squeeze(g.neighbors(w), v));
  }
  return Graph::from_rows(std::move(rows));
}

Graph contract_edge(const Graph& g, Edge e) {
  if (e.u < 0 || e.v >= g.order() || !g.has_edge(e.u, e.v)) {
    throw InputError("no such edge");
  }
  std::vector<VertexMask> rows(g.rows().begin(), g.rows().end());
  const VertexMask merged = (rows[e.u] | rows[e.v]) & ~bit(e.u) & ~bit(e.v);
  rows[e.u] = merged;
  for (VertexMask r = merged; r != 0; r &= r - 1) {
    const int w = std::countr_zero(r);
    rows[w] = (rows[w] & ~bit(e.v)) | bit(e.u);
  }
  std::vector<VertexMask> out;
  out.reserve(g.order() - 1);
  for (int w = 0; w < g.order(); ++w) {
    if (w != e.v) out.push_back(squeeze(rows[w] & ~bit(e.v), e.v));
  }
  return Graph::from_rows(std::move(out));
}

Graph induced_subgraph(const Graph& g, VertexMask keep) {
  std::vector<int> index(g.order(), -1);
  int n = 0;
  for (int v = 0; v < g.order(); ++v) {
    if (keep & bit(v)) index[v] = n++;
  }
  std::vector<VertexMask> rows(n, 0);
  for (int v = 0; v < g.order(); ++v) {
    if (index[v] < 0) continue;
    for (VertexMask r = g.neighbors(v) & keep; r != 0; r &= r - 1) {
      rows[index[v]] |= bit(index[std::countr_zero(r)]);
    }
  }
  return Graph::from_rows(std::move(rows));
}

Graph relabel(const Graph& g, std::span<const int> perm) {
  std::vector<VertexMask> rows(g.order(), 0);
  for (int v = 0; v < g.order(); ++v) {
    VertexMask row = 0;
    for (VertexMask r = g.neighbors(v); r != 0; r &= r - 1) {
      row |= bit(perm[std::countr_zero(r)]);
    }
    rows[perm[v]] = row;
  }
  return Graph::from_rows(std::move(rows));
}

std::vector<Graph> one_step_minors(const Graph& g) {
  std::map<CanonicalForm, Graph> seen;
  auto add = [&](Graph h) {
    auto form = canonical_form(h);
    seen.try_emplace(std::move(form), std::move(h));
  };
  for (int v = 0; v < g.order(); ++v) {
    if (g.degree(v) == 0) add(delete_vertex(g, v));
  }
  for (const Edge& e : g.edges()) {
    add(delete_edge(g, e));
    add(contract_edge(g, e));
  }
  std::vector<Graph> out;
  out.reserve(seen.size());
  for (auto& [form, h] : seen) out.push_back(std::move(h));
  return out;
}

namespace {

template <class Emit>
void for_each_component(const Graph& g, Emit emit) {
  VertexMask unseen = g.all_vertices();
  while (unseen != 0) {
    VertexMask comp = bit(std::countr_zero(unseen));
    VertexMask frontier = comp;
    while (frontier != 0) {
      VertexMask next = 0;
      for (VertexMask r = frontier; r != 0; r &= r - 1) {
        next |= g.neighbors(std::countr_zero(r));
      }
      frontier = next & ~comp;
      comp |= next;
    }
    emit(comp);
    unseen &= ~comp;
  }
}

}  // namespace

std::vector<VertexMask> components(const Graph& g) {
  std::vector<VertexMask> out;
  for_each_component(g, [&](VertexMask c) { out.push_back(c); });
  return out;
}

int component_count(const Graph& g) {
  int n = 0;
  for_each_component(g, [&](VertexMask) { ++n; });
  return n;
}

bool is_connected(const Graph& g) { return component_count(g) <= 1; }

bool is_acyclic(const Graph& g) {
  return g.size() == g.order() - component_count(g);
}

Graph complete_graph(int n) {
  if (n < 0) throw InputError("negative order");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph(n, edges);
}

Graph cycle_graph(int n) {
  if (n < 3) throw InputError("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, edges);
}

Graph path_graph(int n) {
  if (n < 1) throw InputError("path needs at least 1 vertex");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, edges);
}

Graph empty_graph(int n) { return Graph(n); }

namespace {

// Vertices 0..n-1 carry the base graph; each base edge (i,j) gets a fresh
// vertex adjacent to both ends.
Graph augment(int n, const std::vector<Edge>& base) {
  std::vector<Edge> edges = base;
  int next = n;
  for (const Edge& e : base) {
    edges.emplace_back(e.u, next);
    edges.emplace_back(next, e.v);
    ++next;
  }
  return Graph(next, edges);
}

}  // namespace

Graph augmented_complete(int n) {
  if (n < 3) throw InputError("augmented complete graph needs n >= 3");
  return augment(n, complete_graph(n).edges());
}

Graph augmented_cycle(int n) {
  if (n < 3) throw InputError("augmented cycle needs n >= 3");
  return augment(n, cycle_graph(n).edges());
}

Graph wheel_graph(int n) {
  if (n < 3) throw InputError("wheel needs a rim of at least 3 vertices");
  std::vector<Edge> edges = cycle_graph(n).edges();
  for (int i = 0; i < n; ++i) edges.emplace_back(i, n);
  return Graph(n + 1, edges);
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  std::vector<Edge> edges = g.edges();
  for (const Edge& e : h.edges()) {
    edges.emplace_back(e.u + g.order(), e.v + g.order());
  }
  return Graph(g.order() + h.order(), edges);
}

}  // namespace obstruct
