#include "obstruct/congruence.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "obstruct/solvers.hpp"

namespace obstruct {

namespace {

struct Forest {
  std::vector<int> label;
  std::vector<VertexMask> adj;

  int add_vertex(int lab) {
    if (label.size() >= 64) throw InputError("park exceeds 64 vertices");
    label.push_back(lab);
    adj.push_back(0);
    return static_cast<int>(label.size()) - 1;
  }
  void join(int a, int b) {
    adj[a] |= bit(b);
    adj[b] |= bit(a);
  }
  int find_label(int lab) const {
    for (std::size_t v = 0; v < label.size(); ++v) {
      if (label[v] == lab) return static_cast<int>(v);
    }
    throw std::logic_error("park has no label " + std::to_string(lab));
  }
  VertexMask all() const {
    return label.size() == 64 ? ~VertexMask{0} : bit(static_cast<int>(label.size())) - 1;
  }
};

VertexMask reach(const Forest& f, int from, VertexMask alive) {
  VertexMask seen = bit(from), todo = bit(from);
  while (todo) {
    const int v = std::countr_zero(todo);
    todo &= todo - 1;
    const VertexMask fresh = f.adj[v] & alive & ~seen;
    seen |= fresh;
    todo |= fresh;
  }
  return seen;
}

// Applies the reduction rules; returns the surviving vertices. Trees without
// labels vanish because their leaves are interior.
VertexMask reduce(Forest& f) {
  VertexMask alive = f.all();
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexMask r = alive; r != 0; r &= r - 1) {
      const int v = std::countr_zero(r);
      if (f.label[v] >= 0) continue;
      const VertexMask nb = f.adj[v] & alive;
      const int d = std::popcount(nb);
      if (d <= 1) {
        alive &= ~bit(v);
        changed = true;
      } else if (d == 2) {
        const int a = std::countr_zero(nb);
        const int c = std::countr_zero(nb & (nb - 1));
        if (f.label[a] < 0 || f.label[c] < 0) {
          alive &= ~bit(v);
          f.adj[a] &= ~bit(v);
          f.adj[c] &= ~bit(v);
          f.join(a, c);
          changed = true;
        }
      }
    }
  }
  return alive;
}

std::string encode_tree(const Forest& f, int v, int parent, VertexMask alive) {
  std::vector<std::string> kids;
  for (VertexMask r = f.adj[v] & alive; r != 0; r &= r - 1) {
    const int w = std::countr_zero(r);
    if (w != parent) kids.push_back(encode_tree(f, w, v, alive));
  }
  std::sort(kids.begin(), kids.end());
  std::string s(1, f.label[v] < 0 ? '.' : static_cast<char>('A' + f.label[v]));
  if (!kids.empty()) {
    s.push_back('(');
    for (const auto& k : kids) s += k;
    s.push_back(')');
  }
  return s;
}

ParkCode encode(const Forest& f, VertexMask alive) {
  std::vector<std::string> trees;
  VertexMask left = alive;
  while (left) {
    const VertexMask comp = reach(f, std::countr_zero(left), alive);
    left &= ~comp;
    int root = -1;
    for (VertexMask r = comp; r != 0; r &= r - 1) {
      const int v = std::countr_zero(r);
      if (f.label[v] >= 0 && (root < 0 || f.label[v] < f.label[root])) root = v;
    }
    if (root < 0) throw std::logic_error("park tree without labels");
    trees.push_back(encode_tree(f, root, -1, alive));
  }
  std::sort(trees.begin(), trees.end());
  std::string out;
  for (const auto& t : trees) out += t;
  return out;
}

int decode_node(std::string_view s, std::size_t& pos, Forest& f, int parent) {
  if (pos >= s.size()) throw InputError("truncated park code");
  const char c = s[pos++];
  int lab = -1;
  if (c != '.') {
    if (c < 'A' || c > 'A' + 15) throw InputError("bad park code symbol");
    lab = c - 'A';
  }
  const int v = f.add_vertex(lab);
  if (parent >= 0) f.join(v, parent);
  if (pos < s.size() && s[pos] == '(') {
    ++pos;
    while (pos < s.size() && s[pos] != ')') decode_node(s, pos, f, v);
    if (pos >= s.size()) throw InputError("unbalanced park code");
    ++pos;
  }
  return v;
}

Forest decode(std::string_view code) {
  Forest f;
  std::size_t pos = 0;
  while (pos < code.size()) decode_node(code, pos, f, -1);
  return f;
}

// Operation caches; parks are few, so hits dominate.
thread_local std::unordered_map<std::string, std::optional<ParkCode>> edge_cache;
thread_local std::unordered_map<std::string, ParkCode> interior_cache;
thread_local std::unordered_map<std::string, ParkCode> isolated_cache;

std::string cache_key(const ParkCode& park, int a, int b) {
  std::string key = park;
  key.push_back('#');
  key.push_back(static_cast<char>('A' + a));
  key.push_back(static_cast<char>('A' + b));
  return key;
}

}  // namespace

ParkCode park_reduce(const Graph& forest, std::span<const int> labels) {
  if (static_cast<int>(labels.size()) != forest.order()) {
    throw InputError("park_reduce: one label entry per vertex required");
  }
  if (!is_acyclic(forest)) throw InputError("park_reduce: input has a cycle");
  Forest f;
  unsigned seen = 0;
  for (int v = 0; v < forest.order(); ++v) {
    if (labels[v] >= 16) throw InputError("park label out of range");
    if (labels[v] >= 0) {
      if (seen & (1u << labels[v])) throw InputError("park label repeated");
      seen |= 1u << labels[v];
    }
    f.add_vertex(labels[v] < 0 ? -1 : labels[v]);
  }
  for (const Edge& e : forest.edges()) f.join(e.u, e.v);
  const VertexMask alive = reduce(f);
  return encode(f, alive);
}

std::pair<Graph, std::vector<int>> park_graph(const ParkCode& park) {
  Forest f = decode(park);
  return {Graph::from_rows(f.adj), f.label};
}

int park_order(const ParkCode& park) {
  return static_cast<int>(std::count_if(park.begin(), park.end(), [](char c) {
    return c != '(' && c != ')';
  }));
}

std::optional<ParkCode> park_add_edge(const ParkCode& park, int i, int j) {
  const std::string key = cache_key(park, i, j);
  if (auto it = edge_cache.find(key); it != edge_cache.end()) return it->second;
  Forest f = decode(park);
  const int a = f.find_label(i), b = f.find_label(j);
  std::optional<ParkCode> out;
  if (f.adj[a] & bit(b)) {
    out = park;
  } else if (!(reach(f, a, f.all()) & bit(b))) {
    f.join(a, b);
    out = encode(f, f.all());
  }
  edge_cache.emplace(key, out);
  return out;
}

ParkCode park_make_interior(const ParkCode& park, int i) {
  const std::string key = cache_key(park, i, i);
  if (auto it = interior_cache.find(key); it != interior_cache.end()) return it->second;
  Forest f = decode(park);
  f.label[f.find_label(i)] = -1;
  const VertexMask alive = reduce(f);
  ParkCode out = encode(f, alive);
  interior_cache.emplace(key, out);
  return out;
}

ParkCode park_add_isolated(const ParkCode& park, int i) {
  const std::string key = cache_key(park, i, i);
  if (auto it = isolated_cache.find(key); it != isolated_cache.end()) return it->second;
  Forest f = decode(park);
  f.add_vertex(i);
  ParkCode out = encode(f, f.all());
  isolated_cache.emplace(key, out);
  return out;
}

FvsState::FvsState(int boundary_size, int k) : b_(boundary_size), k_(k) {
  if (boundary_size < 1 || boundary_size > 16) {
    throw InputError("boundary size must lie in [1, 16]");
  }
  if (k < 0) throw InputError("k must be >= 0");
  classes_.resize(std::size_t{1} << b_);
}

int FvsState::f_value(unsigned subset) const {
  int best = k_ + 1;
  for (const ParkClass& c : classes_[subset]) best = std::min(best, c.size);
  return best;
}

int FvsState::min_value() const {
  int best = k_ + 1;
  for (unsigned s = 0; s < subset_count(); ++s) best = std::min(best, f_value(s));
  return best;
}

void FvsState::add(unsigned subset, ParkCode park, int size) {
  if (size > k_) return;
  auto& list = classes_[subset];
  auto it = std::lower_bound(list.begin(), list.end(), park,
                             [](const ParkClass& c, const ParkCode& p) { return c.park < p; });
  if (it != list.end() && it->park == park) {
    it->size = std::min(it->size, size);
  } else {
    list.insert(it, ParkClass{std::move(park), size});
  }
}

std::string FvsState::serialize() const {
  std::string out = std::to_string(b_) + "," + std::to_string(k_);
  for (const auto& list : classes_) {
    out.push_back(';');
    bool first = true;
    for (const ParkClass& c : list) {
      if (!first) out.push_back(',');
      first = false;
      out += c.park;
      out.push_back(':');
      out += std::to_string(c.size);
    }
  }
  return out;
}

FvsState FvsState::deserialize(std::string_view text) {
  auto number = [](std::string_view s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
      throw InputError("bad number in serialized state");
    }
    return v;
  };
  const auto semi = text.find(';');
  const auto head = text.substr(0, semi);
  const auto comma = head.find(',');
  if (comma == std::string_view::npos) throw InputError("bad state header");
  FvsState s(number(head.substr(0, comma)), number(head.substr(comma + 1)));
  std::string_view rest = semi == std::string_view::npos ? "" : text.substr(semi + 1);
  for (unsigned subset = 0; subset < s.subset_count(); ++subset) {
    const auto end = rest.find(';');
    const bool last = subset + 1 == s.subset_count();
    if (last != (end == std::string_view::npos)) {
      throw InputError("serialized state has the wrong number of subsets");
    }
    std::string_view part = rest.substr(0, end);
    while (!part.empty()) {
      const auto sep = part.find(',');
      const auto item = part.substr(0, sep);
      const auto colon = item.rfind(':');
      if (colon == std::string_view::npos) throw InputError("bad park class");
      s.add(subset, ParkCode(item.substr(0, colon)), number(item.substr(colon + 1)));
      part = sep == std::string_view::npos ? "" : part.substr(sep + 1);
    }
    rest = last ? "" : rest.substr(end + 1);
  }
  return s;
}

FvsState initial_state(int t, int k) {
  return state_from_scratch(realize(TParse::initial(t)), k);
}

FvsState state_apply(const FvsState& state, Operator op) {
  const int b = state.boundary_size();
  if (op.i >= b || (op.is_edge() && op.j >= b)) {
    throw InputError("operator label outside the state's boundary");
  }
  FvsState out(b, state.k());
  for (unsigned s = 0; s < state.subset_count(); ++s) {
    for (const ParkClass& c : state.classes(s)) {
      if (op.is_edge()) {
        if (s & ((1u << op.i) | (1u << op.j))) {
          out.add(s, c.park, c.size);
        } else if (auto np = park_add_edge(c.park, op.i, op.j)) {
          out.add(s, std::move(*np), c.size);
        }
        continue;
      }
      const unsigned li = 1u << op.i;
      const ParkCode base = (s & li) ? c.park : park_make_interior(c.park, op.i);
      const unsigned rest = s & ~li;
      out.add(rest | li, base, c.size + 1);
      out.add(rest, park_add_isolated(base, op.i), c.size);
    }
  }
  return out;
}

FvsState state_of(const TParse& p, int k) {
  FvsState s = initial_state(p.t(), k);
  for (std::size_t idx = p.boundary_size(); idx < p.length(); ++idx) {
    s = state_apply(s, p.ops()[idx]);
  }
  return s;
}

FvsState state_from_scratch(const BoundariedGraph& g, int k) {
  const int n = g.graph.order();
  if (n > 40) throw InputError("state_from_scratch supports at most 40 vertices");
  FvsState out(g.boundary_size(), k);
  std::vector<int> label_of(n, -1);
  for (int l = 0; l < g.boundary_size(); ++l) label_of[g.boundary[l]] = l;

  std::vector<int> chosen;
  auto visit = [&](auto&& self, int from) -> void {
    VertexMask removed = 0;
    unsigned subset = 0;
    for (int v : chosen) {
      removed |= bit(v);
      if (label_of[v] >= 0) subset |= 1u << label_of[v];
    }
    const VertexMask keep = g.graph.all_vertices() & ~removed;
    const Graph rest = induced_subgraph(g.graph, keep);
    if (is_acyclic(rest)) {
      std::vector<int> labels;
      for (VertexMask r = keep; r != 0; r &= r - 1) {
        labels.push_back(label_of[std::countr_zero(r)]);
      }
      out.add(subset, park_reduce(rest, labels), static_cast<int>(chosen.size()));
    }
    if (static_cast<int>(chosen.size()) == k) return;
    for (int v = from; v < n; ++v) {
      chosen.push_back(v);
      self(self, v + 1);
      chosen.pop_back();
    }
  };
  visit(visit, 0);
  return out;
}

bool states_equal(const FvsState& a, const FvsState& b) {
  if (a.boundary_size() != b.boundary_size() || a.k() != b.k()) {
    throw InputError("comparing states of different shape");
  }
  return a == b;
}

std::set<ParkCode> parks_of(const FvsState& state) {
  std::set<ParkCode> out;
  for (unsigned s = 0; s < state.subset_count(); ++s) {
    for (const ParkClass& c : state.classes(s)) out.insert(c.park);
  }
  return out;
}

std::uint64_t text_digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

StateCache::StateCache(int t, int k) : k_(k) { intern(initial_state(t, k)); }

int StateCache::intern(FvsState s) {
  std::string key = s.serialize();
  if (auto it = ids_.find(key); it != ids_.end()) return it->second;
  const int id = static_cast<int>(states_.size());
  in_family_.push_back(s.in_family() ? 1 : 0);
  digests_.push_back(text_digest(key));
  states_.push_back(std::move(s));
  ids_.emplace(std::move(key), id);
  return id;
}

int StateCache::apply(int id, Operator op) {
  const std::uint64_t key =
      static_cast<std::uint64_t>(id) * 1024 +
      (static_cast<unsigned>(op.i) * 16 + static_cast<unsigned>(op.j)) * 2 +
      (op.is_edge() ? 1 : 0);
  FvsState from;
  {
    std::lock_guard lock(mu_);
    if (auto it = transitions_.find(key); it != transitions_.end()) return it->second;
    from = states_[id];
  }
  FvsState next = state_apply(from, op);
  std::lock_guard lock(mu_);
  const int to = intern(std::move(next));
  transitions_.emplace(key, to);
  return to;
}

int StateCache::fold(const TParse& p) {
  int id = initial();
  for (std::size_t idx = p.boundary_size(); idx < p.length(); ++idx) {
    id = apply(id, p.ops()[idx]);
  }
  return id;
}

FvsState StateCache::state(int id) const {
  std::lock_guard lock(mu_);
  return states_.at(id);
}

bool StateCache::in_family(int id) const {
  std::lock_guard lock(mu_);
  return in_family_.at(id) != 0;
}

std::uint64_t StateCache::digest(int id) const {
  std::lock_guard lock(mu_);
  return digests_.at(id);
}

std::size_t StateCache::size() const {
  std::lock_guard lock(mu_);
  return states_.size();
}

std::string fes_state(const BoundariedGraph& g, int k) {
  if (fes_exact(g.graph) > k) return "out";
  const auto comps = components(g.graph);
  const VertexMask boundary = g.boundary_mask();
  int free_comps = 0;
  for (VertexMask c : comps) {
    if (!(c & boundary)) ++free_comps;
  }
  const int excess = g.graph.size() - g.graph.order() + free_comps;
  std::string out = std::to_string(excess) + "|";
  std::vector<int> block_of_comp(comps.size(), -1);
  int blocks = 0;
  for (int l = 0; l < g.boundary_size(); ++l) {
    const int v = g.boundary[l];
    std::size_t c = 0;
    while (!(comps[c] & bit(v))) ++c;
    if (block_of_comp[c] < 0) block_of_comp[c] = blocks++;
    out += std::to_string(block_of_comp[c]);
    out.push_back('.');
  }
  out.push_back('|');
  for (int a = 0; a < g.boundary_size(); ++a) {
    for (int b = a + 1; b < g.boundary_size(); ++b) {
      if (g.graph.has_edge(g.boundary[a], g.boundary[b])) {
        out += std::to_string(a) + "-" + std::to_string(b) + ",";
      }
    }
  }
  return out;
}

bool fvs_direct_nonminimal(const TParse& p, int) {
  const BoundariedGraph bg = realize(p);
  for (VertexMask r = bg.interior_mask(); r != 0; r &= r - 1) {
    if (bg.graph.degree(std::countr_zero(r)) <= 1) return true;
  }
  return false;
}

bool fes_direct_nonminimal(const TParse& p, int) {
  const BoundariedGraph bg = realize(p);
  const VertexMask interior = bg.interior_mask();
  for (VertexMask r = interior; r != 0; r &= r - 1) {
    const int v = std::countr_zero(r);
    if (bg.graph.degree(v) <= 1) return true;
    for (VertexMask q = bg.graph.neighbors(v) & interior; q != 0; q &= q - 1) {
      const int w = std::countr_zero(q);
      if ((bg.graph.neighbors(v) & bg.graph.neighbors(w)) == 0) return true;
    }
  }
  return false;
}

}  // namespace obstruct
