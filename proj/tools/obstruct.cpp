// Command-line front end: search, certify, testset, predict.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "obstruct/config.hpp"
#include "obstruct/graph_io.hpp"
#include "obstruct/obstructions.hpp"
#include "obstruct/search.hpp"
#include "obstruct/solvers.hpp"
#include "obstruct/testset.hpp"

using namespace obstruct;

namespace {

std::vector<Graph> read_graphs(const std::string& path) {
  if (path == "-") return read_graph6_stream(std::cin);
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_graph6_stream(in);
}

struct Flags {
  std::string family, config_file, out, checkpoint, resume, cache;
  int k = -1, t = -1, budget = 0, threads = 0, ext_len = 0;
  std::uint64_t seed = 0, max_nodes = 0;
  double audit_rate = -1;
  bool verbose = false;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minor-order obstruction sets for k-FVS and k-FES"};
  app.set_version_flag("--version", std::string(OBSTRUCT_VERSION));
  app.require_subcommand(1);
  Flags f;

  auto* search_cmd = app.add_subcommand("search", "search t-parses for obstructions");
  auto* fam = search_cmd->add_option("--family", f.family, "fvs or fes");
  auto* kk = search_cmd->add_option("--k", f.k, "family bound");
  auto* tt = search_cmd->add_option("--t", f.t, "t-parse width (boundary size t+1); default k+2");
  auto* seed = search_cmd->add_option("--seed", f.seed, "random seed");
  auto* budget = search_cmd->add_option("--budget", f.budget, "random distinguisher attempts per minor");
  auto* ext = search_cmd->add_option("--max-extension-length", f.ext_len, "longest random extension");
  auto* threads = search_cmd->add_option("--threads", f.threads, "worker threads");
  auto* max_nodes = search_cmd->add_option("--max-nodes", f.max_nodes, "stop and checkpoint after this many nodes");
  auto* audit = search_cmd->add_option("--audit-rate", f.audit_rate, "fraction of verdicts re-checked");
  auto* ckpt = search_cmd->add_option("--checkpoint", f.checkpoint, "checkpoint file");
  auto* resume = search_cmd->add_option("--resume", f.resume, "resume from checkpoint");
  auto* cache = search_cmd->add_option("--testset-cache", f.cache, "directory caching testsets");
  auto* out = search_cmd->add_option("--out", f.out, "output directory");
  search_cmd->add_option("--config", f.config_file, "key=value config file");
  search_cmd->add_flag("-v,--verbose", f.verbose, "per-level progress on stderr");

  std::string file;
  auto* certify_cmd = app.add_subcommand("certify", "certify graphs as obstructions");
  certify_cmd->add_option("--family", f.family)->required();
  certify_cmd->add_option("--k", f.k)->required();
  certify_cmd->add_option("graphs", file, "graph6 file ('-' for stdin)")->required();

  bool count_only = false, census = false;
  int boundary = -1;
  auto* testset_cmd = app.add_subcommand("testset", "generate a testset");
  testset_cmd->add_option("--family", f.family)->required();
  testset_cmd->add_option("--k", f.k)->required();
  testset_cmd->add_option("--t", f.t, "t-parse width; tests get t+1 labels");
  testset_cmd->add_option("--boundary", boundary, "boundary size (overrides --t)");
  testset_cmd->add_flag("--count-only", count_only);
  testset_cmd->add_flag("--census", census, "count tests by component signature");

  auto* predict_cmd = app.add_subcommand("predict", "grow (k+1)-FES candidates");
  predict_cmd->add_option("--family", f.family)->required();
  predict_cmd->add_option("--k", f.k)->required();
  predict_cmd->add_option("graphs", file, "graph6 file of k-FES obstructions")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*search_cmd) {
      ConfigValues flags;
      auto set = [&](CLI::Option* o, const std::string& key, const std::string& value) {
        if (o->count()) flags[key] = value;
      };
      set(fam, "family", f.family);
      set(kk, "k", std::to_string(f.k));
      set(tt, "t", std::to_string(f.t));
      set(seed, "seed", std::to_string(f.seed));
      set(budget, "budget", std::to_string(f.budget));
      set(ext, "max_extension_length", std::to_string(f.ext_len));
      set(threads, "threads", std::to_string(f.threads));
      set(max_nodes, "max_nodes", std::to_string(f.max_nodes));
      set(audit, "audit_rate", std::to_string(f.audit_rate));
      set(ckpt, "checkpoint", f.checkpoint);
      set(resume, "resume", f.resume);
      set(cache, "testset_cache", f.cache);
      set(out, "out", f.out);
      std::optional<std::filesystem::path> cfg_file;
      if (!f.config_file.empty()) cfg_file = f.config_file;
      const Config cfg = load_config(flags, cfg_file);
      const ObstructionReport r = search(cfg, nullptr, f.verbose ? &std::cerr : nullptr);
      write_outputs(r, cfg.out_dir);
      std::cout << to_string(cfg.family) << " t=" << cfg.t << ": "
                << r.obstructions.size() << " obstructions from "
                << r.boundary_obstructions.size() << " boundary obstructions, "
                << r.stats.evaluated << " nodes";
      if (!r.complete) {
        std::cout << " (incomplete, checkpoint " << r.checkpoint_written.string() << ")\n";
        return 2;
      }
      std::cout << '\n';
      return 0;
    }

    const FamilyId family(parse_family_kind(f.family), f.k);
    if (*certify_cmd) {
      for (const Graph& g : read_graphs(file)) {
        std::cout << to_graph6(g) << ' '
                  << (certify_obstruction(g, family) ? "obstruction" : "not-obstruction")
                  << '\n';
      }
      return 0;
    }
    if (*testset_cmd) {
      if (boundary < 0) {
        if (f.t < 1) throw InputError("testset needs --t >= 1 or --boundary");
        boundary = f.t + 1;
      }
      const TestSet ts = generate_testset(boundary, family.k, family.kind);
      if (census) {
        for (const auto& [sig, n] : testset_census(ts)) std::cout << sig << ' ' << n << '\n';
      }
      if (count_only) {
        std::cout << ts.size() << '\n';
      } else if (!census) {
        write_testset(std::cout, ts);
      }
      return 0;
    }
    if (*predict_cmd) {
      if (family.kind != FamilyKind::FES) throw InputError("predict supports --family fes only");
      const auto graphs = read_graphs(file);
      for (const Graph& g : graphs) {
        if (!is_connected(g) || !certify_obstruction(g, family)) {
          throw InputError(to_graph6(g) + " is not a connected " + to_string(family) +
                           " obstruction");
        }
      }
      for (const Graph& g : predict_fes_next(graphs)) std::cout << to_graph6(g) << '\n';
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
