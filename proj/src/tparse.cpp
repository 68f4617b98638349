#include "obstruct/tparse.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

namespace obstruct {

namespace {

constexpr int kMaxT = 15;

// Per-vertex lifetime in a parse: alive on the closed op-index interval
// [born, last]. Boundary vertices live to the final op.
struct Trace {
  BoundariedGraph bg;
  std::vector<int> born;
  std::vector<int> last;
};

Trace trace(const TParse& p) {
  const int len = static_cast<int>(p.length());
  std::vector<int> bound(p.boundary_size(), -1);
  std::vector<int> born;
  std::vector<int> last;
  std::vector<VertexMask> rows;
  for (int idx = 0; idx < len; ++idx) {
    const Operator op = p.ops()[idx];
    if (op.is_vertex()) {
      if (bound[op.i] >= 0) last[bound[op.i]] = idx - 1;
      const int v = static_cast<int>(rows.size());
      if (v >= Graph::kMaxOrder) {
        throw InputError("t-parse realizes more than 64 vertices");
      }
      rows.push_back(0);
      born.push_back(idx);
      last.push_back(-1);
      bound[op.i] = v;
    } else {
      const int a = bound[op.i], b = bound[op.j];
      rows[a] |= bit(b);
      rows[b] |= bit(a);
    }
  }
  for (int v : bound) last[v] = len - 1;
  Trace tr;
  tr.bg.graph = Graph::from_rows(std::move(rows));
  tr.bg.boundary = std::move(bound);
  tr.born = std::move(born);
  tr.last = std::move(last);
  return tr;
}

struct Lifetime {
  int first = 0;
  int last = 0;
};

// Builds a t-parse for a graph whose vertices carry lifetimes in which every
// edge's endpoints overlap and at most t+1 vertices are alive at once.
// `label_of` fixes labels for the vertices alive at the final time.
TParse rebuild(int t, int len, const Graph& g, std::vector<Lifetime> life,
               const std::vector<int>& label_of_final) {
  const int n = g.order();
  const int width = t + 1;
  if (n < width) throw std::logic_error("rebuild: fewer vertices than labels");
  std::vector<int> by_start(n);
  std::iota(by_start.begin(), by_start.end(), 0);
  std::stable_sort(by_start.begin(), by_start.end(), [&](int a, int b) {
    return life[a].first < life[b].first;
  });
  for (int r = 0; r < width; ++r) life[by_start[r]].first = -1;

  std::vector<int> label(n, -1);
  std::vector<char> used(width, 0);
  for (int v = 0; v < n; ++v) {
    if (label_of_final[v] >= 0) {
      label[v] = label_of_final[v];
      used[label[v]] = 1;
    }
  }
  std::vector<std::vector<int>> ends(len + 1), starts(len + 1);
  for (int v = 0; v < n; ++v) {
    ends[life[v].last + 1].push_back(v);
    starts[life[v].first + 1].push_back(v);
  }
  // Sweep time backwards; a label frees up once we pass its holder's start.
  for (int time = len - 1; time >= -1; --time) {
    if (time + 1 <= len - 1) {
      for (int v : starts[time + 2]) used[label[v]] = 0;
    }
    for (int v : ends[time + 1]) {
      if (label[v] >= 0) continue;
      int free = 0;
      while (free < width && used[free]) ++free;
      if (free == width) throw std::logic_error("rebuild: width exceeded");
      label[v] = free;
      used[free] = 1;
    }
  }

  std::vector<Operator> ops;
  ops.reserve(len + g.size());
  for (int l = 0; l < width; ++l) ops.push_back(Operator::vertex(l));
  auto emit_edges = [&](const std::vector<int>& fresh, int time) {
    std::vector<Operator> batch;
    for (int v : fresh) {
      for (VertexMask r = g.neighbors(v); r != 0; r &= r - 1) {
        const int w = std::countr_zero(r);
        const int other_start = life[w].first;
        if (other_start > time || (other_start == time && w > v)) continue;
        if (life[w].last < time) throw std::logic_error("rebuild: dead endpoint");
        batch.push_back(Operator::edge(label[v], label[w]));
      }
    }
    std::sort(batch.begin(), batch.end());
    batch.erase(std::unique(batch.begin(), batch.end()), batch.end());
    ops.insert(ops.end(), batch.begin(), batch.end());
  };
  emit_edges(starts[0], -1);
  for (int time = 0; time < len; ++time) {
    auto fresh = starts[time + 1];
    if (fresh.empty()) continue;
    std::sort(fresh.begin(), fresh.end());
    for (int v : fresh) ops.push_back(Operator::vertex(label[v]));
    emit_edges(fresh, time);
  }
  return TParse(t, std::move(ops));
}

int parse_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw InputError("bad label in t-parse token");
  }
  return value;
}

Operator parse_token(std::string_view tok) {
  if (tok.size() >= 2 && tok[0] == 'v') return Operator::vertex(parse_int(tok.substr(1)));
  if (tok.size() >= 4 && tok[0] == 'e') {
    const auto comma = tok.find(',');
    if (comma == std::string_view::npos) throw InputError("bad edge token");
    return Operator::edge(parse_int(tok.substr(1, comma - 1)),
                          parse_int(tok.substr(comma + 1)));
  }
  throw InputError("unknown t-parse token '" + std::string(tok) + "'");
}

}  // namespace

Operator Operator::vertex(int label) {
  if (label < 0 || label > kMaxT) throw InputError("label out of range");
  Operator op;
  op.kind = Kind::Vertex;
  op.i = static_cast<std::int8_t>(label);
  op.j = 0;
  return op;
}

Operator Operator::edge(int a, int b) {
  if (a == b) throw InputError("edge operator needs two distinct labels");
  if (a < 0 || b < 0 || a > kMaxT || b > kMaxT) {
    throw InputError("label out of range");
  }
  Operator op;
  op.kind = Kind::Edge;
  op.i = static_cast<std::int8_t>(std::min(a, b));
  op.j = static_cast<std::int8_t>(std::max(a, b));
  return op;
}

std::string to_string(Operator op) {
  if (op.is_vertex()) return "v" + std::to_string(op.i);
  return "e" + std::to_string(op.i) + "," + std::to_string(op.j);
}

std::string to_string(std::span<const Operator> ops) {
  std::string out;
  for (const Operator& op : ops) {
    if (!out.empty()) out.push_back(' ');
    out += to_string(op);
  }
  return out;
}

TParse::TParse(int t, std::vector<Operator> ops) : t_(t), ops_(std::move(ops)) {
  if (t < 1 || t > kMaxT) {
    throw InputError("t must lie in [1, " + std::to_string(kMaxT) + "]");
  }
  if (ops_.size() < static_cast<std::size_t>(t + 1)) {
    throw InputError("t-parse shorter than its initial prefix");
  }
  for (int l = 0; l <= t; ++l) {
    if (ops_[l] != Operator::vertex(l)) {
      throw InputError("t-parse must begin with v0 ... v" + std::to_string(t));
    }
  }
  for (const Operator& op : ops_) {
    if (op.i > t || (op.is_edge() && op.j > t)) {
      throw InputError("operator " + to_string(op) + " exceeds t=" +
                       std::to_string(t));
    }
  }
}

TParse TParse::initial(int t) {
  std::vector<Operator> ops;
  for (int l = 0; l <= t; ++l) ops.push_back(Operator::vertex(l));
  return TParse(t, std::move(ops));
}

TParse TParse::prefix(std::size_t len) const {
  len = std::min(len, ops_.size());
  return TParse(t_, std::vector<Operator>(ops_.begin(), ops_.begin() + len));
}

std::strong_ordering TParse::operator<=>(const TParse& other) const {
  if (auto c = std::lexicographical_compare_three_way(
          ops_.begin(), ops_.end(), other.ops_.begin(), other.ops_.end());
      c != 0) {
    return c;
  }
  return t_ <=> other.t_;
}

std::string to_string(const TParse& p) { return to_string(p.ops()); }

TParse parse_tparse(std::string_view text, std::optional<int> t) {
  std::vector<Operator> ops;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) ops.push_back(parse_token(tok));
  if (!t) {
    int run = 0;
    while (run < static_cast<int>(ops.size()) && ops[run] == Operator::vertex(run)) {
      ++run;
    }
    if (run < 2) throw InputError("t-parse must begin with v0 v1 ...");
    t = run - 1;
  }
  return TParse(*t, std::move(ops));
}

BoundariedGraph::BoundariedGraph(Graph g, std::vector<int> labels)
    : graph(std::move(g)), boundary(std::move(labels)) {
  VertexMask seen = 0;
  for (int v : boundary) {
    if (v < 0 || v >= graph.order()) {
      throw InputError("boundary label bound to a missing vertex");
    }
    if (seen & bit(v)) throw InputError("boundary labeling is not injective");
    seen |= bit(v);
  }
}

VertexMask BoundariedGraph::boundary_mask() const {
  VertexMask m = 0;
  for (int v : boundary) m |= bit(v);
  return m;
}

std::vector<int> BoundariedGraph::colors() const {
  std::vector<int> c(graph.order(), boundary_size());
  for (int l = 0; l < boundary_size(); ++l) c[boundary[l]] = l;
  return c;
}

CanonicalForm boundaried_form(const BoundariedGraph& g) {
  const auto c = g.colors();
  return canonical_form(g.graph, c);
}

BoundariedGraph realize(const TParse& p) { return trace(p).bg; }

TParse concat(const TParse& p, std::span<const Operator> z) {
  std::vector<Operator> ops(p.ops().begin(), p.ops().end());
  ops.insert(ops.end(), z.begin(), z.end());
  return TParse(p.t(), std::move(ops));
}

TParse concat(const TParse& p, const TParse& z) {
  if (p.t() != z.t()) throw InputError("concatenation of different t");
  return concat(p, z.ops());
}

Graph circle_plus(const BoundariedGraph& g, const BoundariedGraph& h) {
  if (g.boundary_size() != h.boundary_size()) {
    throw InputError("circle plus needs equal label sets");
  }
  const VertexMask hb = h.boundary_mask();
  std::vector<int> map(h.graph.order(), -1);
  for (int l = 0; l < h.boundary_size(); ++l) map[h.boundary[l]] = g.boundary[l];
  int next = g.graph.order();
  for (int v = 0; v < h.graph.order(); ++v) {
    if (!(hb & bit(v))) map[v] = next++;
  }
  if (next > Graph::kMaxOrder) throw InputError("glued graph exceeds 64 vertices");
  std::vector<VertexMask> rows(g.graph.rows().begin(), g.graph.rows().end());
  rows.resize(next, 0);
  for (int v = 0; v < h.graph.order(); ++v) {
    for (VertexMask r = h.graph.neighbors(v); r != 0; r &= r - 1) {
      rows[map[v]] |= bit(map[std::countr_zero(r)]);
    }
  }
  return Graph::from_rows(std::move(rows));
}

std::vector<TParse> one_step_boundary_minors(const TParse& p) {
  const Trace tr = trace(p);
  const Graph& g = tr.bg.graph;
  const int n = g.order();
  const int len = static_cast<int>(p.length());
  const VertexMask boundary = tr.bg.boundary_mask();
  std::vector<int> final_label(n, -1);
  for (int l = 0; l < tr.bg.boundary_size(); ++l) final_label[tr.bg.boundary[l]] = l;
  std::vector<Lifetime> life(n);
  for (int v = 0; v < n; ++v) life[v] = {tr.born[v], tr.last[v]};

  std::map<CanonicalForm, TParse> out;
  auto add = [&](const Graph& m, std::vector<Lifetime> lm, std::vector<int> labels) {
    TParse q = rebuild(p.t(), len, m, std::move(lm), labels);
    CanonicalForm key = boundaried_form(realize(q));
    out.try_emplace(std::move(key), std::move(q));
  };
  auto drop = [](const auto& vec, int v) {
    auto copy = vec;
    copy.erase(copy.begin() + v);
    return copy;
  };

  for (int v = 0; v < n; ++v) {
    if ((boundary & bit(v)) || g.degree(v) != 0) continue;
    add(delete_vertex(g, v), drop(life, v), drop(final_label, v));
  }
  for (const Edge& e : g.edges()) {
    add(delete_edge(g, e), life, final_label);
  }
  for (const Edge& e : g.edges()) {
    const bool ub = boundary & bit(e.u), vb = boundary & bit(e.v);
    if (ub && vb) continue;
    // Survivor: the boundary endpoint, else the one created first (lower id).
    int keep = e.u, gone = e.v;
    if (vb) std::swap(keep, gone);
    std::vector<Lifetime> lm = life;
    lm[keep] = {std::min(life[keep].first, life[gone].first),
                std::max(life[keep].last, life[gone].last)};
    // contract_edge keeps the lower index; relabel so `keep` survives.
    std::vector<VertexMask> rows(g.rows().begin(), g.rows().end());
    const VertexMask merged = (rows[keep] | rows[gone]) & ~bit(keep) & ~bit(gone);
    rows[keep] = merged;
    for (VertexMask r = merged; r != 0; r &= r - 1) {
      const int w = std::countr_zero(r);
      rows[w] = (rows[w] & ~bit(gone)) | bit(keep);
    }
    rows[gone] = 0;
    for (int w = 0; w < n; ++w) rows[w] &= ~bit(gone);
    Graph with_isolated = Graph::from_rows(std::move(rows));
    Graph m = delete_vertex(with_isolated, gone);
    add(m, drop(lm, gone), drop(final_label, gone));
  }
  std::vector<TParse> result;
  result.reserve(out.size());
  for (auto& [key, q] : out) result.push_back(std::move(q));
  return result;
}

void apply_operator(BoundariedGraph& g, Operator op) {
  if (op.is_vertex()) {
    if (g.graph.order() >= Graph::kMaxOrder) throw InputError("t-parse realizes more than 64 vertices");
    g.boundary[op.i] = g.graph.add_vertex();
  } else if (g.boundary[op.i] != g.boundary[op.j]) {
    g.graph.add_edge(g.boundary[op.i], g.boundary[op.j]);
  }
}

std::vector<Operator> canonic_extensions(const BoundariedGraph& g,
                                         std::optional<Operator> last) {
  std::vector<Operator> out;
  canonic_extensions(g, last, out);
  return out;
}

void canonic_extensions(const BoundariedGraph& g, std::optional<Operator> last,
                        std::vector<Operator>& out) {
  const int b = g.boundary_size();
  out.clear();
  for (int l = 0; l < b; ++l) {
    const Operator op = Operator::vertex(l);
    if (!last || *last != op) out.push_back(op);
  }
  for (int i = 0; i < b; ++i) {
    for (int j = i + 1; j < b; ++j) {
      const Operator op = Operator::edge(i, j);
      if (g.graph.has_edge(g.boundary[i], g.boundary[j])) continue;
      if (last && last->is_edge() && !(*last < op)) continue;
      out.push_back(op);
    }
  }
}

std::vector<Operator> canonic_extensions(const TParse& p) {
  const std::size_t last = p.length() - 1;
  return canonic_extensions(realize(p), p.in_prefix(last) ? std::nullopt
                                                          : std::optional(p.ops()[last]));
}

bool is_canonic(const TParse& p) {
  const int len = static_cast<int>(p.length());
  std::vector<int> bound(p.boundary_size(), -1);
  std::vector<VertexMask> rows;
  for (int idx = 0; idx < len; ++idx) {
    const Operator op = p.ops()[idx];
    const Operator prev = idx > 0 ? p.ops()[idx - 1] : op;
    const bool prev_in_prefix = idx - 1 <= p.t();
    if (op.is_vertex()) {
      if (!prev_in_prefix && prev == op) return false;
      bound[op.i] = static_cast<int>(rows.size());
      rows.push_back(0);
    } else {
      const int a = bound[op.i], b = bound[op.j];
      if (rows[a] & bit(b)) return false;
      if (!prev_in_prefix && prev.is_edge() && !(prev < op)) return false;
      rows[a] |= bit(b);
      rows[b] |= bit(a);
    }
  }
  return true;
}

}  // namespace obstruct
