#include "obstruct/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "obstruct/canonical.hpp"
#include "obstruct/checkpoint.hpp"
#include "obstruct/graph_io.hpp"
#include "obstruct/obstructions.hpp"

namespace obstruct {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

BoundariedGraph without_vertex(const BoundariedGraph& bg, int v) {
  std::vector<int> boundary = bg.boundary;
  for (int& b : boundary) b -= b > v ? 1 : 0;
  return BoundariedGraph(delete_vertex(bg.graph, v), std::move(boundary));
}

// The one-step ∂-minor that the direct test says is congruent, if any.
std::optional<BoundariedGraph> direct_minor(const BoundariedGraph& bg, FamilyKind kind) {
  const Graph& g = bg.graph;
  const VertexMask interior = bg.interior_mask();
  for (VertexMask r = interior; r != 0; r &= r - 1) {
    const int v = std::countr_zero(r);
    if (g.degree(v) == 0) return without_vertex(bg, v);
    if (g.degree(v) == 1) {
      const int w = std::countr_zero(g.neighbors(v));
      return BoundariedGraph(delete_edge(g, Edge(v, w)), bg.boundary);
    }
  }
  if (kind == FamilyKind::FES) {
    for (VertexMask r = interior; r != 0; r &= r - 1) {
      const int v = std::countr_zero(r);
      for (VertexMask q = g.neighbors(v) & interior; q != 0; q &= q - 1) {
        const int w = std::countr_zero(q);
        if (g.neighbors(v) & g.neighbors(w)) continue;
        const Edge e(v, w);
        std::vector<int> boundary = bg.boundary;
        for (int& b : boundary) b -= b > e.v ? 1 : 0;
        return BoundariedGraph(contract_edge(g, e), std::move(boundary));
      }
    }
  }
  return std::nullopt;
}

bool sampled(const std::string& key, double rate) {
  if (rate <= 0) return false;
  return static_cast<double>(splitmix(fnv1a(key)) % 1000000) < rate * 1e6;
}

}  // namespace

std::string node_key(const TParse& p) {
  std::string key = boundaried_form(realize(p)).bytes;
  key.push_back('|');
  if (!p.in_prefix(p.length() - 1)) key += to_string(p.ops().back());
  return key;
}

Evaluator::Evaluator(FamilyId f, int t, const TestSet& ts, const Config& cfg)
    : f_(f), t_(t), ts_(ts), cfg_(cfg) {
  if (ts.boundary_size != t + 1 || ts.k != f.k || ts.kind != f.kind) {
    throw InputError("testset does not match the family or boundary size");
  }
  if (f.kind == FamilyKind::FVS) states_ = std::make_unique<StateCache>(t, f.k);
}

std::string Evaluator::congruence_key(const TParse& p, const BoundariedGraph& bg) {
  if (states_) return "s" + std::to_string(states_->fold(p));
  return "e" + fes_state(bg, f_.k);
}

std::vector<std::uint64_t> Evaluator::signature(const std::string& key,
                                                const BoundariedGraph& bg) {
  {
    std::lock_guard lock(mu_);
    if (auto it = signatures_.find(key); it != signatures_.end()) return it->second;
  }
  auto bits = testset_signature(bg, f_, ts_);
  std::lock_guard lock(mu_);
  signatures_.emplace(key, bits);
  return bits;
}

std::uint64_t Evaluator::node_seed(const TParse& p, std::size_t minor) const {
  return splitmix(cfg_.seed ^ splitmix(fnv1a(to_string(p)) + minor));
}

std::size_t Evaluator::congruence_states() const {
  if (states_) return states_->size();
  std::lock_guard lock(mu_);
  return signatures_.size();
}

Evaluator::Outcome Evaluator::evaluate(const TParse& p) {
  Outcome out;
  MinimalityVerdict& v = out.verdict;
  const BoundariedGraph bg = realize(p);
  const std::string key = congruence_key(p, bg);
  if (states_) {
    const int id = std::stoi(key.substr(1));
    out.in_family = states_->in_family(id);
    out.congruence_class = states_->digest(id);
  } else {
    out.in_family = fes_exact(bg.graph) <= f_.k;
    out.congruence_class = text_digest(key);
  }
  const std::vector<TParse> minors = one_step_boundary_minors(p);

  const bool direct = f_.kind == FamilyKind::FVS ? fvs_direct_nonminimal(p, f_.k)
                                                 : fes_direct_nonminimal(p, f_.k);
  if (direct) {
    const auto target = direct_minor(bg, f_.kind);
    if (!target) throw std::logic_error("direct test fired without a witness");
    const CanonicalForm form = boundaried_form(*target);
    for (const TParse& m : minors) {
      if (boundaried_form(realize(m)) == form) {
        v.status = VerdictStatus::NonminimalDirect;
        v.stage = Stage::Direct;
        v.witness = m;
        return out;
      }
    }
    throw std::logic_error("direct witness missing from the one-step minors");
  }

  std::vector<BoundariedGraph> minor_graphs;
  std::vector<std::string> minor_keys;
  for (const TParse& m : minors) {
    minor_graphs.push_back(realize(m));
    minor_keys.push_back(congruence_key(m, minor_graphs.back()));
    if (minor_keys.back() == key) {
      v.status = VerdictStatus::NonminimalCongruence;
      v.stage = Stage::Congruence;
      v.witness = m;
      return out;
    }
  }

  std::vector<std::optional<Extension>> found(minors.size());
  if (!minors.empty() && cfg_.random_max_minors > 0 &&
      minors.size() <= static_cast<std::size_t>(cfg_.random_max_minors)) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < minors.size(); ++i) {
      found[i] = random_distinguisher(p, minors[i], f_, cfg_.random_budget,
                                      cfg_.extension_length(), node_seed(p, i));
      if (!found[i]) break;
      ++hits;
    }
    if (hits == minors.size()) {
      v.status = VerdictStatus::Minimal;
      v.stage = Stage::Random;
      for (std::size_t i = 0; i < minors.size(); ++i) {
        v.distinguishers.push_back({minors[i], found[i], std::nullopt});
      }
      return out;
    }
  }

  const auto sig = minors.empty() ? std::vector<std::uint64_t>{} : signature(key, bg);
  v.stage = Stage::Testset;
  for (std::size_t i = 0; i < minors.size(); ++i) {
    if (found[i]) {
      v.distinguishers.push_back({minors[i], found[i], std::nullopt});
      continue;
    }
    const auto other = signature(minor_keys[i], minor_graphs[i]);
    std::optional<std::size_t> test;
    for (std::size_t w = 0; w < sig.size() && !test; ++w) {
      if (const std::uint64_t diff = sig[w] ^ other[w]) {
        test = w * 64 + std::countr_zero(diff);
      }
    }
    if (!test) {
      v.status = VerdictStatus::NonminimalTestset;
      v.witness = minors[i];
      v.distinguishers.clear();
      return out;
    }
    v.distinguishers.push_back({minors[i], std::nullopt, test});
  }
  v.status = VerdictStatus::Minimal;
  return out;
}

bool Evaluator::audit(const TParse& p, const MinimalityVerdict& v) const {
  if (v.minimal() && v.stage == Stage::Random) {
    for (const Distinguisher& d : v.distinguishers) {
      if (!d.extension) return false;
      if (member(realize(concat(p, *d.extension)).graph, f_) ||
          !member(realize(concat(d.minor, *d.extension)).graph, f_)) {
        return false;
      }
    }
    return true;
  }
  const MinimalityVerdict direct = testset_verdict(p, one_step_boundary_minors(p), f_, ts_);
  return direct.minimal() == v.minimal();
}

MinimalityVerdict evaluate_node(const TParse& p, FamilyId f, const TestSet& ts,
                                const Config& cfg) {
  Evaluator ev(f, p.t(), ts, cfg);
  return ev.evaluate(p).verdict;
}

namespace {

struct Work {
  std::string key;
  VerdictStatus status = VerdictStatus::Minimal;
  Stage stage = Stage::Testset;
  bool in_family = true;
  std::uint64_t congruence_class = 0;
  std::vector<int> extension_lengths;
  std::vector<std::pair<std::string, TParse>> children;
  bool audited = false;
  bool audit_ok = true;
};

// Frontier nodes are evaluated in chunks so per-node verdicts do not pile up.
constexpr std::size_t kChunk = 4096;

void run_level(SearchState& st, Evaluator& ev, const Config& cfg) {
  const auto& frontier = st.frontier;
  std::vector<Work> work;
  auto job = [&](std::size_t i, Work& w) {
    const TParse& p = frontier[i];
    w.key = node_key(p);
    const Evaluator::Outcome out = ev.evaluate(p);
    const MinimalityVerdict& v = out.verdict;
    w.status = v.status;
    w.stage = v.stage;
    w.in_family = out.in_family;
    w.congruence_class = out.congruence_class;
    for (const Distinguisher& d : v.distinguishers) {
      if (d.extension) w.extension_lengths.push_back(static_cast<int>(d.extension->size()));
    }
    if (sampled(w.key, cfg.audit_rate)) {
      w.audited = true;
      w.audit_ok = ev.audit(p, v);
    }
    if (v.minimal() && out.in_family) {
      for (const Operator& op : canonic_extensions(p)) {
        TParse child = concat(p, std::span<const Operator>(&op, 1));
        w.children.emplace_back(node_key(child), std::move(child));
      }
    }
  };
  auto run_chunk = [&](std::size_t from, std::size_t to) {
    work.assign(to - from, Work{});
    if (cfg.threads > 1 && to - from > 1) {
      std::atomic<std::size_t> next{from};
      std::vector<std::thread> pool;
      std::exception_ptr error;
      std::mutex error_mu;
      for (int i = 0; i < cfg.threads; ++i) {
        pool.emplace_back([&] {
          try {
            for (std::size_t j; (j = next++) < to;) job(j, work[j - from]);
          } catch (...) {
            std::lock_guard lock(error_mu);
            if (!error) error = std::current_exception();
            next = to;
          }
        });
      }
      for (auto& th : pool) th.join();
      if (error) std::rethrow_exception(error);
    } else {
      for (std::size_t i = from; i < to; ++i) job(i, work[i - from]);
    }
  };

  std::map<std::string, TParse> next;
  SearchStats& s = st.stats;
  for (std::size_t from = 0; from < frontier.size(); from += kChunk) {
    const std::size_t to = std::min(frontier.size(), from + kChunk);
    run_chunk(from, to);
    for (std::size_t i = from; i < to; ++i) {
      Work& w = work[i - from];
      st.log[node_digest(w.key)] = NodeLog{w.status, w.in_family};
      st.congruence_classes.insert(w.congruence_class);
      ++s.evaluated;
      ++s.by_status[to_string(w.status)];
      ++s.by_stage[static_cast<int>(w.stage)];
      for (int len : w.extension_lengths) ++s.extension_lengths[len];
      if (w.audited) {
        ++s.audited;
        if (!w.audit_ok) ++s.audit_disagreements;
      }
      if (w.status != VerdictStatus::Minimal) continue;
      if (!w.in_family) {
        st.boundary_obstructions.push_back(frontier[i]);
        continue;
      }
      ++s.expanded;
      for (auto& [key, child] : w.children) {
        ++s.children;
        if (st.log.count(node_digest(key))) {
          ++s.duplicates;
          continue;
        }
        auto [it, fresh] = next.try_emplace(std::move(key), std::move(child));
        if (!fresh) {
          ++s.duplicates;
          if (child < it->second) it->second = std::move(child);
        }
      }
    }
  }
  s.level_sizes.push_back(frontier.size());
  std::vector<TParse> upcoming;
  upcoming.reserve(next.size());
  for (auto& [key, p] : next) upcoming.push_back(std::move(p));
  next.clear();
  std::sort(upcoming.begin(), upcoming.end());
  st.frontier = std::move(upcoming);
  ++st.level;
}

}  // namespace

NodeDigest node_digest(std::string_view key) {
  std::uint64_t poly = 0;
  for (unsigned char c : key) poly = poly * 0x100000001b3ull + c + 1;
  return {fnv1a(key), splitmix(poly ^ key.size())};
}

ObstructionReport search(const Config& cfg, const TestSet* ts, std::ostream* log) {
  const auto start = std::chrono::steady_clock::now();
  if (cfg.t < 1) throw ConfigError({"t"}, "t must be >= 1");
  TestSet owned;
  if (!ts) {
    owned = load_or_generate_testset(cfg.testset_cache, cfg.t + 1, cfg.family.k,
                                     cfg.family.kind);
    ts = &owned;
  }
  SearchState st;
  if (!cfg.resume.empty()) {
    st = load_checkpoint(cfg.resume);
    if (!(st.family == cfg.family) || st.t != cfg.t || st.seed != cfg.seed) {
      throw ConfigError({"resume"}, "checkpoint belongs to a different search");
    }
  } else {
    st.family = cfg.family;
    st.t = cfg.t;
    st.seed = cfg.seed;
    st.frontier = {TParse::initial(cfg.t)};
  }

  Evaluator ev(cfg.family, cfg.t, *ts, cfg);
  ObstructionReport r;
  r.config = cfg;
  r.testset_size = ts->size();
  while (!st.frontier.empty()) {
    if (cfg.max_nodes > 0 && st.stats.evaluated >= cfg.max_nodes) {
      r.checkpoint_written =
          cfg.checkpoint.empty() ? cfg.out_dir / "checkpoint.json" : cfg.checkpoint;
      save_checkpoint(r.checkpoint_written, st);
      break;
    }
    run_level(st, ev, cfg);
    if (log) {
      *log << "level " << st.level << ": evaluated " << st.stats.level_sizes.back()
           << ", next " << st.frontier.size() << ", boundary obstructions "
           << st.boundary_obstructions.size() << ", total " << st.stats.evaluated << std::endl;
    }
  }
  r.complete = st.frontier.empty();

  std::sort(st.boundary_obstructions.begin(), st.boundary_obstructions.end());
  r.boundary_obstructions = st.boundary_obstructions;
  r.obstructions = derive_final(r.boundary_obstructions, cfg.family, &r.rejected);
  for (const TParse& p : r.boundary_obstructions) {
    for (std::size_t len = p.boundary_size() + 1; len < p.length(); ++len) {
      ++r.prefix_audit_checked;
      auto it = st.log.find(node_digest(node_key(p.prefix(len))));
      if (it == st.log.end() || it->second.status != VerdictStatus::Minimal ||
          !it->second.in_family) {
        ++r.prefix_audit_failures;
      }
    }
  }
  r.stats = st.stats;
  r.congruence_states = st.congruence_classes.size();
  r.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string report_json(const ObstructionReport& r) {
  using nlohmann::json;
  json config = json::object();
  for (const auto& [k, v] : config_echo(r.config)) config[k] = v;
  json obstructions = json::array();
  for (const Graph& g : r.obstructions) {
    obstructions.push_back({{"graph6", to_graph6(g)},
                            {"order", g.order()},
                            {"size", g.size()},
                            {"connected", is_connected(g)}});
  }
  json boundary = json::array();
  for (const TParse& p : r.boundary_obstructions) boundary.push_back(to_string(p));
  json by_status = json::object(), by_stage = json::object(), lengths = json::object();
  for (const auto& [k, v] : r.stats.by_status) by_status[k] = v;
  for (const auto& [k, v] : r.stats.by_stage) by_stage[std::to_string(k)] = v;
  for (const auto& [k, v] : r.stats.extension_lengths) lengths[std::to_string(k)] = v;
  json j = {
      {"schema_version", 1},
      {"tool_version", OBSTRUCT_VERSION},
      {"family", to_string(r.config.family)},
      {"t", r.config.t},
      {"complete", r.complete},
      {"search_envelope",
       "obstructions of pathwidth at most " + std::to_string(r.config.t) +
           " (boundary size " + std::to_string(r.config.t + 1) +
           "); obstructions of larger pathwidth are outside this run"},
      {"config", config},
      {"testset_size", r.testset_size},
      {"obstructions", obstructions},
      {"rejected_candidates", r.rejected},
      {"boundary_obstructions", boundary},
      {"statistics",
       {{"nodes_evaluated", r.stats.evaluated},
        {"nodes_expanded", r.stats.expanded},
        {"children_generated", r.stats.children},
        {"duplicates", r.stats.duplicates},
        {"verdicts_by_status", by_status},
        {"verdicts_by_stage", by_stage},
        {"distinguisher_lengths", lengths},
        {"level_sizes", r.stats.level_sizes},
        {"congruence_classes", r.congruence_states}}},
      {"audits",
       {{"sampled_verdicts", r.stats.audited},
        {"sampled_disagreements", r.stats.audit_disagreements},
        {"prefix_checks", r.prefix_audit_checked},
        {"prefix_failures", r.prefix_audit_failures}}},
      {"elapsed_seconds", r.elapsed_seconds},
  };
  if (!r.checkpoint_written.empty()) j["checkpoint"] = r.checkpoint_written.string();
  return j.dump(2) + "\n";
}

void write_outputs(const ObstructionReport& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "obstructions.g6");
    write_graph6_stream(out, r.obstructions);
  }
  {
    std::ofstream out(dir / "boundary_obstructions.tparse");
    for (const TParse& p : r.boundary_obstructions) out << to_string(p) << '\n';
  }
  std::ofstream out(dir / "report.json");
  out << report_json(r);
}

}  // namespace obstruct
