#include "obstruct/solvers.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

namespace obstruct {

FamilyId::FamilyId(FamilyKind kind_, int k_) : kind(kind_), k(k_) {
  if (k_ < 0) throw InputError("family bound k must be >= 0");
}

std::string to_string(FamilyKind kind) {
  return kind == FamilyKind::FVS ? "fvs" : "fes";
}

std::string to_string(FamilyId f) {
  return std::to_string(f.k) + "-" + (f.kind == FamilyKind::FVS ? "FVS" : "FES");
}

FamilyKind parse_family_kind(const std::string& text) {
  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "fvs") return FamilyKind::FVS;
  if (lower == "fes") return FamilyKind::FES;
  throw InputError("unknown family '" + text + "' (expected fvs or fes)");
}

namespace {

using Rows = std::span<const VertexMask>;

// Peels vertices of degree <= 1; they lie on no cycle.
VertexMask strip_forest_parts(Rows adj, VertexMask alive) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexMask r = alive; r != 0; r &= r - 1) {
      const int v = std::countr_zero(r);
      if (std::popcount(adj[v] & alive) <= 1) {
        alive &= ~bit(v);
        changed = true;
      }
    }
  }
  return alive;
}

// Shortest cycle among alive vertices, as a vertex mask (0 if acyclic).
VertexMask shortest_cycle(Rows adj, VertexMask alive) {
  VertexMask best = 0;
  int best_len = 65;
  int parent[64];
  int depth[64];
  int queue[64];
  for (VertexMask roots = alive; roots != 0; roots &= roots - 1) {
    const int root = std::countr_zero(roots);
    VertexMask seen = bit(root);
    int head = 0, tail = 0;
    queue[tail++] = root;
    parent[root] = -1;
    depth[root] = 0;
    bool found = false;
    while (head < tail && !found) {
      const int u = queue[head++];
      if (2 * depth[u] + 1 >= best_len) break;
      for (VertexMask r = adj[u] & alive; r != 0; r &= r - 1) {
        const int w = std::countr_zero(r);
        if (w == parent[u]) continue;
        if (seen & bit(w)) {
          VertexMask a = 0, b = 0;
          for (int x = u; x != -1; x = parent[x]) a |= bit(x);
          for (int x = w; x != -1; x = parent[x]) b |= bit(x);
          // Path union minus the shared tail above the meeting point.
          VertexMask shared = a & b;
          int lca = -1;
          for (int x = u; x != -1; x = parent[x]) {
            if (shared & bit(x)) {
              lca = x;
              break;
            }
          }
          VertexMask cycle = (a ^ b) | bit(lca);
          const int len = std::popcount(cycle);
          if (len < best_len) {
            best_len = len;
            best = cycle;
          }
          found = true;
          break;
        }
        seen |= bit(w);
        parent[w] = u;
        depth[w] = depth[u] + 1;
        queue[tail++] = w;
      }
    }
    if (best_len == 3) break;
  }
  return best;
}

bool fvs_search(Rows adj, VertexMask alive, int k) {
  alive = strip_forest_parts(adj, alive);
  if (alive == 0) return true;
  if (k == 0) return false;
  const VertexMask cycle = shortest_cycle(adj, alive);
  // A degree-2 cycle vertex is dominated by its cycle neighbors: every cycle
  // through it passes through them.
  VertexMask branch = 0;
  for (VertexMask r = cycle; r != 0; r &= r - 1) {
    const int v = std::countr_zero(r);
    if (std::popcount(adj[v] & alive) >= 3) branch |= bit(v);
  }
  if (branch == 0) branch = cycle & (~cycle + 1);
  for (VertexMask r = branch; r != 0; r &= r - 1) {
    if (fvs_search(adj, alive & ~bit(std::countr_zero(r)), k - 1)) return true;
  }
  return false;
}

}  // namespace

bool fvs_at_most(const Graph& g, int k) {
  if (k < 0) return false;
  return fvs_search(g.rows(), g.all_vertices(), k);
}

int fvs_exact(const Graph& g) {
  int k = 0;
  while (!fvs_at_most(g, k)) ++k;
  return k;
}

int fes_exact(const Graph& g) {
  return g.size() - g.order() + component_count(g);
}

namespace {

// Decides every edge in turn (keep or remove); the state is the index of the
// next edge plus the connectivity partition of the kept edges. Keeping an
// edge inside one block would close a cycle and is not allowed.
class EdgeSubsetSolver {
 public:
  explicit EdgeSubsetSolver(const Graph& g) : n_(g.order()), edges_(g.edges()) {}

  int solve() {
    std::string block(n_, 0);
    for (int v = 0; v < n_; ++v) block[v] = static_cast<char>(v);
    return best(0, block);
  }

 private:
  int best(std::size_t i, const std::string& block) {
    if (i == edges_.size()) return 0;
    std::string key = block;
    key.push_back(static_cast<char>(i));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    int r = 1 + best(i + 1, block);
    const char a = block[edges_[i].u], b = block[edges_[i].v];
    if (a != b) {
      std::string merged = block;
      const char lo = std::min(a, b), hi = std::max(a, b);
      for (char& c : merged) {
        if (c == hi) c = lo;
      }
      r = std::min(r, best(i + 1, merged));
    }
    memo_.emplace(std::move(key), r);
    return r;
  }

  int n_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, int> memo_;
};

}  // namespace

int fes_bruteforce(const Graph& g) {
  if (g.order() > 10) {
    throw InputError("fes_bruteforce supports at most 10 vertices");
  }
  return EdgeSubsetSolver(g).solve();
}

bool member(const Graph& g, FamilyId f) {
  if (f.kind == FamilyKind::FES) return fes_exact(g) <= f.k;
  return fvs_at_most(g, f.k);
}

bool every_edge_in_triangle(const Graph& g) {
  for (const Edge& e : g.edges()) {
    if ((g.neighbors(e.u) & g.neighbors(e.v)) == 0) return false;
  }
  return true;
}

bool certify_obstruction(const Graph& g, FamilyId f) {
  if (g.order() > kMaxCertifyOrder) {
    throw InputError("graph of order " + std::to_string(g.order()) +
                     " exceeds certification scale");
  }
  bool result = !member(g, f);
  if (result) {
    for (int v = 0; v < g.order() && result; ++v) {
      if (g.degree(v) == 0) result = member(delete_vertex(g, v), f);
    }
    for (const Edge& e : g.edges()) {
      if (!result) break;
      result = member(delete_edge(g, e), f) && member(contract_edge(g, e), f);
    }
  }
  if (f.kind == FamilyKind::FES && g.order() > 0 && is_connected(g)) {
    const bool characterized =
        fes_exact(g) == f.k + 1 && every_edge_in_triangle(g);
    if (characterized != result) {
      throw std::logic_error("FES certification disagrees with the "
                             "contraction characterization");
    }
  }
  return result;
}

}  // namespace obstruct
