#include "obstruct/canonical.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>

namespace obstruct {

namespace {

using Cells = std::vector<std::vector<int>>;

// Individualization-refinement search for the least relabeled adjacency
// matrix. Pruning uses twin transpositions and automorphisms discovered at
// equal leaves; both only discard subtrees that are images of explored ones.
class LabelingSearch {
 public:
  LabelingSearch(const Graph& g, std::span<const int> colors)
      : g_(g), n_(g.order()) {
    twins_.assign(n_, 0);
    for (int u = 0; u < n_; ++u) {
      for (int v = u + 1; v < n_; ++v) {
        if ((g_.neighbors(u) & ~bit(v)) == (g_.neighbors(v) & ~bit(u))) {
          twins_[u] |= bit(v);
          twins_[v] |= bit(u);
        }
      }
    }
    Cells cells;
    if (colors.empty()) {
      if (n_ > 0) {
        cells.emplace_back(n_);
        std::iota(cells[0].begin(), cells[0].end(), 0);
      }
    } else {
      std::vector<int> order(n_);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return colors[a] < colors[b]; });
      for (int i = 0; i < n_; ++i) {
        if (i == 0 || colors[order[i]] != colors[order[i - 1]]) {
          cells.emplace_back();
        }
        cells.back().push_back(order[i]);
      }
    }
    std::vector<int> prefix;
    search(std::move(cells), prefix);
  }

  std::vector<int> labeling() const {
    std::vector<int> lab(n_);
    for (int pos = 0; pos < n_; ++pos) lab[best_order_[pos]] = pos;
    return lab;
  }

 private:
  void refine(Cells& cells) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t s = 0; s < cells.size(); ++s) {
        VertexMask splitter = 0;
        for (int v : cells[s]) splitter |= bit(v);
        for (std::size_t c = 0; c < cells.size(); ++c) {
          auto& cell = cells[c];
          if (cell.size() == 1) continue;
          auto count = [&](int v) {
            return std::popcount(g_.neighbors(v) & splitter);
          };
          const int first = count(cell[0]);
          bool uniform = true;
          for (int v : cell) {
            if (count(v) != first) {
              uniform = false;
              break;
            }
          }
          if (uniform) continue;
          std::vector<int> sorted = cell;
          std::stable_sort(sorted.begin(), sorted.end(),
                           [&](int a, int b) { return count(a) < count(b); });
          Cells parts;
          for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (i == 0 || count(sorted[i]) != count(sorted[i - 1])) {
              parts.emplace_back();
            }
            parts.back().push_back(sorted[i]);
          }
          cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(c));
          cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(c),
                       parts.begin(), parts.end());
          c += parts.size() - 1;
          changed = true;
        }
      }
    }
  }

  void leaf(const Cells& cells) {
    std::vector<int> order(n_);
    std::vector<int> pos(n_);
    for (int p = 0; p < n_; ++p) {
      order[p] = cells[p][0];
      pos[order[p]] = p;
    }
    std::vector<VertexMask> rows(n_, 0);
    for (int p = 0; p < n_; ++p) {
      for (VertexMask r = g_.neighbors(order[p]); r != 0; r &= r - 1) {
        rows[p] |= bit(pos[std::countr_zero(r)]);
      }
    }
    if (best_order_.empty()) {
      best_rows_ = std::move(rows);
      best_order_ = std::move(order);
      return;
    }
    if (rows < best_rows_) {
      best_rows_ = std::move(rows);
      best_order_ = std::move(order);
    } else if (rows == best_rows_ && automorphisms_.size() < 64) {
      // v -> best_order_[pos[v]] preserves adjacency.
      std::vector<int> gamma(n_);
      for (int v = 0; v < n_; ++v) gamma[v] = best_order_[pos[v]];
      automorphisms_.push_back(std::move(gamma));
    }
  }

  // Orbit representative of v under the known automorphisms fixing every
  // individualized vertex.
  std::vector<int> orbits(const std::vector<int>& prefix) const {
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& gamma : automorphisms_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(),
                               [&](int v) { return gamma[v] == v; });
      if (!fixes) continue;
      for (int v = 0; v < n_; ++v) {
        int a = find(v), b = find(gamma[v]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    for (int v = 0; v < n_; ++v) parent[v] = find(v);
    return parent;
  }

  void search(Cells cells, std::vector<int>& prefix) {
    refine(cells);
    std::size_t target = cells.size();
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].size() > 1) {
        target = c;
        break;
      }
    }
    if (target == cells.size()) {
      leaf(cells);
      return;
    }
    const std::vector<int> candidates = cells[target];
    std::vector<int> explored;
    for (int v : candidates) {
      bool skip = false;
      for (int u : explored) {
        if (twins_[u] & bit(v)) {
          skip = true;
          break;
        }
      }
      if (!skip && !explored.empty() && !automorphisms_.empty()) {
        const auto orbit = orbits(prefix);
        for (int u : explored) {
          if (orbit[u] == orbit[v]) {
            skip = true;
            break;
          }
        }
      }
      if (skip) continue;
      explored.push_back(v);
      Cells next = cells;
      std::vector<int> rest;
      for (int w : candidates) {
        if (w != v) rest.push_back(w);
      }
      next[target] = {v};
      next.insert(next.begin() + static_cast<std::ptrdiff_t>(target) + 1,
                  std::move(rest));
      prefix.push_back(v);
      search(std::move(next), prefix);
      prefix.pop_back();
    }
  }

  const Graph& g_;
  int n_;
  std::vector<VertexMask> twins_;
  std::vector<VertexMask> best_rows_;
  std::vector<int> best_order_;
  std::vector<std::vector<int>> automorphisms_;
};

}  // namespace

std::vector<int> canonical_labeling(const Graph& g,
                                    std::span<const int> colors) {
  if (!colors.empty() && static_cast<int>(colors.size()) != g.order()) {
    throw InputError("color vector size does not match graph order");
  }
  if (g.order() == 0) return {};
  return LabelingSearch(g, colors).labeling();
}

CanonicalForm canonical_form(const Graph& g, std::span<const int> colors) {
  const auto lab = canonical_labeling(g, colors);
  const int n = g.order();
  CanonicalForm form;
  form.bytes.push_back(static_cast<char>(n));
  if (!colors.empty()) {
    std::vector<int> by_pos(n);
    for (int v = 0; v < n; ++v) by_pos[lab[v]] = colors[v];
    for (int c : by_pos) {
      char buf[4];
      std::memcpy(buf, &c, 4);
      form.bytes.append(buf, 4);
    }
  }
  std::vector<VertexMask> rows(n, 0);
  for (int v = 0; v < n; ++v) {
    for (VertexMask r = g.neighbors(v); r != 0; r &= r - 1) {
      rows[lab[v]] |= bit(lab[std::countr_zero(r)]);
    }
  }
  const int row_bytes = (n + 7) / 8;
  for (VertexMask row : rows) {
    for (int b = 0; b < row_bytes; ++b) {
      form.bytes.push_back(static_cast<char>((row >> (8 * b)) & 0xff));
    }
  }
  return form;
}

Graph canonical_graph(const Graph& g) {
  const auto lab = canonical_labeling(g);
  return relabel(g, lab);
}

bool isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace obstruct
