#include "obstruct/obstructions.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "obstruct/canonical.hpp"
#include "obstruct/graph_io.hpp"

namespace obstruct {

std::vector<Graph> dedup_isomorphic(std::span<const Graph> graphs) {
  std::map<CanonicalForm, Graph> found;
  for (const Graph& g : graphs) found.try_emplace(canonical_form(g), canonical_graph(g));
  std::vector<Graph> out;
  out.reserve(found.size());
  for (auto& [form, g] : found) out.push_back(std::move(g));
  return out;
}

Graph contract_edges(const Graph& g, std::span<const Edge> edges) {
  const int n = g.order();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const Edge& e : edges) {
    if (!g.has_edge(e.u, e.v)) throw InputError("no such edge");
    const int a = find(e.u), b = find(e.v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> name(n, -1);
  int next = 0;
  for (int v = 0; v < n; ++v) {
    if (find(v) == v) name[v] = next++;
  }
  std::vector<Edge> out;
  for (const Edge& e : g.edges()) {
    const int a = name[find(e.u)], b = name[find(e.v)];
    if (a != b) out.emplace_back(a, b);
  }
  return Graph(next, out);
}

Graph remove_isolated(const Graph& g) {
  VertexMask keep = 0;
  for (int v = 0; v < g.order(); ++v) {
    if (g.degree(v) > 0) keep |= bit(v);
  }
  return induced_subgraph(g, keep);
}

std::vector<Graph> derive_final(std::span<const TParse> boundary_obstructions,
                                FamilyId f, std::vector<std::string>* rejected) {
  std::map<CanonicalForm, Graph> accepted;
  std::set<CanonicalForm> tried;
  for (const TParse& p : boundary_obstructions) {
    const BoundariedGraph bg = realize(p);
    std::vector<Edge> bb;
    for (int a = 0; a < bg.boundary_size(); ++a) {
      for (int b = a + 1; b < bg.boundary_size(); ++b) {
        if (bg.graph.has_edge(bg.boundary[a], bg.boundary[b])) {
          bb.emplace_back(bg.boundary[a], bg.boundary[b]);
        }
      }
    }
    for (unsigned mask = 0; mask < (1u << bb.size()); ++mask) {
      std::vector<Edge> chosen;
      for (std::size_t i = 0; i < bb.size(); ++i) {
        if (mask & (1u << i)) chosen.push_back(bb[i]);
      }
      const Graph g = remove_isolated(contract_edges(bg.graph, chosen));
      CanonicalForm form = canonical_form(g);
      if (!tried.insert(form).second) continue;
      if (g.order() <= kMaxCertifyOrder && certify_obstruction(g, f)) {
        accepted.try_emplace(std::move(form), canonical_graph(g));
      } else if (rejected) {
        rejected->push_back(to_graph6(g));
      }
    }
  }
  std::vector<Graph> out;
  for (auto& [form, g] : accepted) out.push_back(std::move(g));
  return out;
}

std::vector<Graph> compose_disconnected(const std::map<int, std::vector<Graph>>& conn,
                                        FamilyId f) {
  struct Item {
    int cost;
    const Graph* g;
  };
  std::vector<Item> items;
  for (const auto& [j, graphs] : conn) {
    if (j < 0 || j >= f.k) continue;
    for (const Graph& g : graphs) items.push_back({j + 1, &g});
  }
  std::vector<Graph> found;
  std::vector<int> pick;
  auto extend = [&](auto&& self, std::size_t from, int remaining) -> void {
    if (remaining == 0) {
      if (pick.size() < 2) return;
      Graph u = *items[pick[0]].g;
      for (std::size_t i = 1; i < pick.size(); ++i) u = disjoint_union(u, *items[pick[i]].g);
      if (u.order() <= kMaxCertifyOrder && certify_obstruction(u, f)) found.push_back(u);
      return;
    }
    for (std::size_t i = from; i < items.size(); ++i) {
      if (items[i].cost > remaining) continue;
      pick.push_back(static_cast<int>(i));
      self(self, i, remaining - items[i].cost);
      pick.pop_back();
    }
  };
  extend(extend, 0, f.k + 1);
  return dedup_isomorphic(found);
}

std::vector<std::vector<Edge>> minimum_feedback_edge_sets(const Graph& g) {
  const auto edges = g.edges();
  const int need = fes_exact(g);
  std::vector<std::vector<Edge>> out;
  std::vector<Edge> chosen;
  auto visit = [&](auto&& self, std::size_t from) -> void {
    if (static_cast<int>(chosen.size()) == need) {
      Graph h = g;
      for (const Edge& e : chosen) h = delete_edge(h, e);
      if (is_acyclic(h)) out.push_back(chosen);
      return;
    }
    for (std::size_t i = from; i < edges.size(); ++i) {
      chosen.push_back(edges[i]);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  visit(visit, 0);
  return out;
}

namespace {

// Some u-v path of length >= 2 exists in g.
bool long_path(const Graph& g, int u, int v) {
  for (VertexMask r = g.neighbors(u); r != 0; r &= r - 1) {
    const int w = std::countr_zero(r);
    if (w == v) continue;
    VertexMask seen = bit(u) | bit(w), todo = bit(w);
    while (todo) {
      const int x = std::countr_zero(todo);
      todo &= todo - 1;
      if (x == v) return true;
      const VertexMask fresh = g.neighbors(x) & ~seen;
      seen |= fresh;
      todo |= fresh;
    }
  }
  return false;
}

}  // namespace

std::vector<Graph> predict_fes_next(std::span<const Graph> obs_k) {
  std::vector<Graph> found;
  for (const Graph& g : obs_k) {
    const int k = fes_exact(g) - 1;
    if (k < 0) throw InputError("predict_fes_next expects graphs with a cycle");
    const FamilyId next(FamilyKind::FES, k + 1);
    const int n = g.order();
    std::vector<Graph> candidates;
    for (const Edge& e : g.edges()) {
      std::vector<Edge> edges = g.edges();
      edges.emplace_back(e.u, n);
      edges.emplace_back(e.v, n);
      candidates.emplace_back(n + 1, edges);
    }
    for (int v = 0; v < n; ++v) {
      std::vector<Edge> edges = g.edges();
      edges.emplace_back(v, n);
      edges.emplace_back(v, n + 1);
      edges.emplace_back(n, n + 1);
      candidates.emplace_back(n + 2, edges);
    }
    const auto fes_sets = minimum_feedback_edge_sets(g);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (g.has_edge(u, v)) continue;
        const bool every = std::all_of(fes_sets.begin(), fes_sets.end(), [&](const auto& set) {
          Graph h = g;
          for (const Edge& e : set) h = delete_edge(h, e);
          return long_path(h, u, v);
        });
        if (!every) continue;
        std::vector<Edge> edges = g.edges();
        edges.emplace_back(u, v);
        candidates.emplace_back(n, edges);
      }
    }
    for (const Graph& c : dedup_isomorphic(candidates)) {
      if (c.order() <= kMaxCertifyOrder && certify_obstruction(c, next)) found.push_back(c);
    }
  }
  return dedup_isomorphic(found);
}

}  // namespace obstruct
