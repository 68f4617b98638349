#include "obstruct/testset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_set>

#include "obstruct/canonical.hpp"

namespace obstruct {

namespace {

// A tree under construction; color[v] is the label, or `interior` for
// unlabeled vertices.
struct Draft {
  std::vector<VertexMask> rows;
  std::vector<int> color;

  int add(int c) {
    rows.push_back(0);
    color.push_back(c);
    return static_cast<int>(rows.size()) - 1;
  }
  void join(int a, int b) {
    rows[a] |= bit(b);
    rows[b] |= bit(a);
  }
  void cut(int a, int b) {
    rows[a] &= ~bit(b);
    rows[b] &= ~bit(a);
  }
};

Draft draft_of(const Graph& g, int labels, int interior) {
  Draft d;
  for (int v = 0; v < g.order(); ++v) d.add(v < labels ? v : interior);
  for (const Edge& e : g.edges()) d.join(e.u, e.v);
  return d;
}

// Relabels so that label l sits on vertex l, and files it under its
// label-preserving canonical form.
void collect(std::map<CanonicalForm, Graph>& out, const Draft& d) {
  const Graph g = Graph::from_rows(d.rows);
  const auto perm = canonical_labeling(g, d.color);
  Graph normal = relabel(g, perm);
  std::vector<int> colors(d.color.size());
  for (std::size_t v = 0; v < d.color.size(); ++v) colors[perm[v]] = d.color[v];
  out.try_emplace(canonical_form(normal, colors), std::move(normal));
}

// Trees whose leaves are labeled and whose interior vertices have degree
// >= 3.
const std::vector<Graph>& skeletons(int m) {
  static std::mutex mu;
  static std::map<int, std::vector<Graph>> memo;
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(m); it != memo.end()) return it->second;
  }
  std::vector<Graph> result;
  if (m == 1) {
    result.push_back(Graph(1));
  } else if (m == 2) {
    result.push_back(Graph(2, {Edge(0, 1)}));
  } else {
    const int fresh = m - 1;
    std::map<CanonicalForm, Graph> found;
    for (const Graph& s : skeletons(m - 1)) {
      const Draft base = draft_of(s, fresh, m);
      const int n = s.order();
      for (int x = 0; x < n; ++x) {
        Draft d = base;
        d.join(x, d.add(fresh));
        collect(found, d);
      }
      for (const Edge& e : s.edges()) {
        Draft d = base;
        d.cut(e.u, e.v);
        const int l = d.add(fresh);
        d.join(e.u, l);
        d.join(l, e.v);
        collect(found, d);

        Draft d2 = base;
        d2.cut(e.u, e.v);
        const int z = d2.add(m);
        d2.join(e.u, z);
        d2.join(z, e.v);
        d2.join(z, d2.add(fresh));
        collect(found, d2);
      }
      for (int z = fresh; z < n; ++z) {
        Draft d = base;
        d.color[z] = fresh;
        collect(found, d);
      }
    }
    for (auto& [form, g] : found) result.push_back(std::move(g));
  }
  std::lock_guard lock(mu);
  return memo.emplace(m, std::move(result)).first->second;
}

void set_partitions(int n, std::vector<int>& block, int used,
                    const std::function<void(int)>& emit) {
  const int pos = static_cast<int>(block.size());
  if (pos == n) {
    emit(used);
    return;
  }
  for (int b = 0; b <= used; ++b) {
    block.push_back(b);
    set_partitions(n, block, std::max(used, b + 1), emit);
    block.pop_back();
  }
}

}  // namespace

std::vector<Graph> reduced_trees(int m) {
  if (m < 1) throw InputError("reduced trees need at least one label");
  std::map<CanonicalForm, Graph> found;
  for (const Graph& s : skeletons(m)) {
    std::vector<Edge> bb;
    for (const Edge& e : s.edges()) {
      if (e.v < m) bb.push_back(e);
    }
    for (unsigned mask = 0; mask < (1u << bb.size()); ++mask) {
      Draft d = draft_of(s, m, m);
      for (std::size_t i = 0; i < bb.size(); ++i) {
        if (!(mask & (1u << i))) continue;
        d.cut(bb[i].u, bb[i].v);
        const int x = d.add(m);
        d.join(bb[i].u, x);
        d.join(x, bb[i].v);
      }
      collect(found, d);
    }
  }
  std::vector<Graph> out;
  for (auto& [form, g] : found) out.push_back(std::move(g));
  return out;
}

TestSet generate_testset(int boundary_size, int k, FamilyKind kind) {
  if (boundary_size < 1 || boundary_size > 16) {
    throw InputError("boundary size must lie in [1, 16]");
  }
  if (k < 0) throw InputError("k must be >= 0");
  TestSet ts;
  ts.boundary_size = boundary_size;
  ts.k = k;
  ts.kind = kind;
  const int b = boundary_size;
  std::map<int, std::vector<Graph>> trees;
  for (int m = 2; m <= b; ++m) trees[m] = reduced_trees(m);

  std::vector<int> boundary(b);
  for (int l = 0; l < b; ++l) boundary[l] = l;
  std::unordered_set<CanonicalForm> seen;

  for (unsigned pinned = 0; pinned < (1u << b); ++pinned) {
    const int npinned = std::popcount(pinned);
    if (npinned > k || (kind == FamilyKind::FES && npinned > 0)) continue;
    std::vector<int> loose;
    for (int l = 0; l < b; ++l) {
      if (!(pinned & (1u << l))) loose.push_back(l);
    }
    for (int free = 0; free + npinned <= k; ++free) {
      std::vector<int> block;
      set_partitions(static_cast<int>(loose.size()), block, 0, [&](int nblocks) {
        std::vector<std::vector<int>> parts(nblocks);
        for (std::size_t i = 0; i < loose.size(); ++i) parts[block[i]].push_back(loose[i]);
        std::vector<std::size_t> pick(nblocks, 0);
        while (true) {
          std::vector<Edge> edges;
          int n = b;
          for (int p = 0; p < nblocks; ++p) {
            const auto& labels = parts[p];
            const int m = static_cast<int>(labels.size());
            if (m < 2) continue;
            const Graph& tree = trees[m][pick[p]];
            std::vector<int> name(tree.order());
            for (int v = 0; v < tree.order(); ++v) name[v] = v < m ? labels[v] : n++;
            for (const Edge& e : tree.edges()) edges.emplace_back(name[e.u], name[e.v]);
          }
          for (int l = 0; l < b; ++l) {
            if (!(pinned & (1u << l))) continue;
            edges.emplace_back(l, n);
            edges.emplace_back(n, n + 1);
            edges.emplace_back(n + 1, l);
            n += 2;
          }
          for (int f = 0; f < free; ++f) {
            edges.emplace_back(n, n + 1);
            edges.emplace_back(n + 1, n + 2);
            edges.emplace_back(n, n + 2);
            n += 3;
          }
          BoundariedGraph test(Graph(n, edges), boundary);
          if (seen.insert(boundaried_form(test)).second) ts.tests.push_back(std::move(test));

          int p = 0;
          for (; p < nblocks; ++p) {
            const int m = static_cast<int>(parts[p].size());
            if (m < 2) continue;
            if (++pick[p] < trees[m].size()) break;
            pick[p] = 0;
          }
          if (p == nblocks) break;
        }
      });
    }
  }
  return ts;
}

std::vector<std::string> audit_test(const BoundariedGraph& test, int k,
                                    FamilyKind kind) {
  std::vector<std::string> bad;
  const Graph& g = test.graph;
  const VertexMask boundary = test.boundary_mask();
  if (!fvs_at_most(g, k)) bad.push_back("not a k-FVS member");
  if (g.order() > test_vertex_bound(test.boundary_size(), k)) {
    bad.push_back("too many vertices");
  }
  for (VertexMask comp : components(g)) {
    const Graph c = induced_subgraph(g, comp);
    const int labels = std::popcount(comp & boundary);
    const bool triangle = c.order() == 3 && c.size() == 3;
    if (triangle) {
      if (labels > 1) bad.push_back("triangle with several labels");
      if (kind == FamilyKind::FES && labels > 0) bad.push_back("labeled triangle in FES test");
      continue;
    }
    if (!is_acyclic(c)) {
      bad.push_back("component neither tree nor triangle");
      continue;
    }
    if (labels == 0) bad.push_back("tree without labels");
    if (labels == 1 && c.order() > 1) bad.push_back("tree with a single label");
    for (VertexMask r = comp & ~boundary; r != 0; r &= r - 1) {
      const int v = std::countr_zero(r);
      const int d = g.degree(v);
      if (d <= 1) bad.push_back("interior vertex of degree <= 1");
      if (d == 2 && (g.neighbors(v) & ~boundary)) {
        bad.push_back("interior degree-2 vertex with interior neighbor");
      }
    }
  }
  return bad;
}

std::string test_signature(const BoundariedGraph& test) {
  const Graph& g = test.graph;
  const VertexMask boundary = test.boundary_mask();
  std::vector<std::string> parts;
  for (VertexMask comp : components(g)) {
    const int labels = std::popcount(comp & boundary);
    const int order = std::popcount(comp);
    if (order == 1) {
      parts.push_back("I");
    } else if (order == 3 && induced_subgraph(g, comp).size() == 3) {
      parts.push_back(labels ? "P" : "K");
    } else {
      parts.push_back("T" + std::to_string(labels));
    }
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out.push_back(',');
    out += p;
  }
  return out;
}

std::map<std::string, std::size_t> testset_census(const TestSet& ts) {
  std::map<std::string, std::size_t> out;
  for (const auto& t : ts.tests) ++out[test_signature(t)];
  return out;
}

bool distinguishes(const BoundariedGraph& test, const BoundariedGraph& g,
                   const BoundariedGraph& h, FamilyId f) {
  return member(circle_plus(g, test), f) != member(circle_plus(h, test), f);
}

std::vector<std::uint64_t> testset_signature(const BoundariedGraph& g,
                                             FamilyId f, const TestSet& ts) {
  std::vector<std::uint64_t> bits((ts.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (member(circle_plus(g, ts.tests[i]), f)) bits[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return bits;
}

std::optional<std::size_t> first_distinguishing_test(const BoundariedGraph& g,
                                                     const BoundariedGraph& h,
                                                     FamilyId f,
                                                     const TestSet& ts) {
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (distinguishes(ts.tests[i], g, h, f)) return i;
  }
  return std::nullopt;
}

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::NonminimalDirect: return "nonminimal-direct";
    case VerdictStatus::NonminimalCongruence: return "nonminimal-congruence";
    case VerdictStatus::NonminimalTestset: return "nonminimal-testset";
    case VerdictStatus::Minimal: return "minimal";
  }
  return "?";
}

MinimalityVerdict testset_verdict(const TParse& p,
                                  const std::vector<TParse>& minors,
                                  FamilyId f, const TestSet& ts) {
  if (ts.boundary_size != p.boundary_size() || ts.k != f.k || ts.kind != f.kind) {
    throw InputError("testset does not match the family or boundary size");
  }
  MinimalityVerdict v;
  v.stage = Stage::Testset;
  const BoundariedGraph g = realize(p);
  for (const TParse& m : minors) {
    auto idx = first_distinguishing_test(g, realize(m), f, ts);
    if (!idx) {
      v.status = VerdictStatus::NonminimalTestset;
      v.witness = m;
      v.distinguishers.clear();
      return v;
    }
    v.distinguishers.push_back({m, std::nullopt, idx});
  }
  v.status = VerdictStatus::Minimal;
  return v;
}

std::optional<Extension> random_distinguisher(const TParse& p,
                                              const TParse& minor, FamilyId f,
                                              int budget, int len_max,
                                              std::uint64_t seed) {
  const BoundariedGraph gm = realize(minor);
  if (!member(gm.graph, f)) return std::nullopt;
  const BoundariedGraph gp = realize(p);
  const std::size_t end = p.length() - 1;
  const std::optional<Operator> tail =
      p.in_prefix(end) ? std::nullopt : std::optional(p.ops()[end]);
  std::mt19937_64 rng(seed);
  Extension z;
  BoundariedGraph cur, cur_minor;
  std::vector<Operator> choices;
  for (int attempt = 0; attempt < budget; ++attempt) {
    z.clear();
    cur = gp;
    cur_minor = gm;
    if (attempt > 0 && len_max > 0) {
      const int len = std::uniform_int_distribution<int>(1, len_max)(rng);
      std::optional<Operator> last = tail;
      for (int i = 0; i < len; ++i) {
        canonic_extensions(cur, last, choices);
        if (choices.empty()) break;
        const Operator op =
            choices[std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng)];
        z.push_back(op);
        apply_operator(cur, op);
        apply_operator(cur_minor, op);
        last = op;
      }
    }
    if (!member(cur.graph, f) && member(cur_minor.graph, f)) return z;
  }
  return std::nullopt;
}

void write_testset(std::ostream& out, const TestSet& ts) {
  out << "# testset " << to_string(ts.kind) << " boundary=" << ts.boundary_size
      << " k=" << ts.k << " count=" << ts.size() << '\n';
  for (const auto& t : ts.tests) {
    const int b = t.boundary_size();
    out << b;
    for (const Edge& e : t.graph.edges()) {
      auto name = [b](int v) {
        return v < b ? "b" + std::to_string(v) : "x" + std::to_string(v - b);
      };
      out << ' ' << name(e.u) << '-' << name(e.v);
    }
    out << '\n';
  }
}

namespace {

int parse_vertex(std::string_view tok, int b) {
  if (tok.size() < 2 || (tok[0] != 'b' && tok[0] != 'x')) {
    throw InputError("bad vertex token in testset");
  }
  int idx = 0;
  auto [p, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), idx);
  if (ec != std::errc() || p != tok.data() + tok.size() || idx < 0) {
    throw InputError("bad vertex index in testset");
  }
  if (tok[0] == 'b') {
    if (idx >= b) throw InputError("boundary token beyond boundary size");
    return idx;
  }
  return b + idx;
}

}  // namespace

TestSet read_testset(std::istream& in, int k, FamilyKind kind) {
  TestSet ts;
  ts.k = k;
  ts.kind = kind;
  ts.boundary_size = -1;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream is(line);
    int b = 0;
    if (!(is >> b) || b < 1 || b > 16) throw InputError("bad boundary size in testset");
    if (ts.boundary_size < 0) ts.boundary_size = b;
    if (b != ts.boundary_size) throw InputError("mixed boundary sizes in testset");
    std::vector<Edge> edges;
    int n = b;
    std::string tok;
    while (is >> tok) {
      const auto dash = tok.find('-');
      if (dash == std::string::npos) throw InputError("bad edge token in testset");
      const int u = parse_vertex(std::string_view(tok).substr(0, dash), b);
      const int v = parse_vertex(std::string_view(tok).substr(dash + 1), b);
      if (u == v) throw InputError("self-loop in testset");
      n = std::max({n, u + 1, v + 1});
      edges.emplace_back(u, v);
    }
    if (n > Graph::kMaxOrder) throw InputError("test exceeds 64 vertices");
    std::vector<int> boundary(b);
    for (int l = 0; l < b; ++l) boundary[l] = l;
    ts.tests.emplace_back(Graph(n, edges), std::move(boundary));
  }
  if (ts.boundary_size < 0) throw InputError("empty testset file");
  return ts;
}

TestSet load_or_generate_testset(const std::filesystem::path& dir,
                                 int boundary_size, int k, FamilyKind kind) {
  if (dir.empty()) return generate_testset(boundary_size, k, kind);
  const auto file = dir / ("testset_" + to_string(kind) + "_b" +
                           std::to_string(boundary_size) + "_k" +
                           std::to_string(k) + ".txt");
  if (std::ifstream in(file); in) {
    TestSet ts = read_testset(in, k, kind);
    if (ts.boundary_size == boundary_size) return ts;
  }
  TestSet ts = generate_testset(boundary_size, k, kind);
  std::filesystem::create_directories(dir);
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    write_testset(out, ts);
  }
  std::filesystem::rename(tmp, file);
  return ts;
}

}  // namespace obstruct
