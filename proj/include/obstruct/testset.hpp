#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "obstruct/solvers.hpp"
#include "obstruct/tparse.hpp"

namespace obstruct {

/// Boundaried test graphs for one family and boundary size. In every test
/// vertex l carries label l; interior vertices follow.
struct TestSet {
  int boundary_size = 0;
  int k = 0;
  FamilyKind kind = FamilyKind::FVS;
  std::vector<BoundariedGraph> tests;

  std::size_t size() const { return tests.size(); }
};

/// Trees on labels 0..m-1 whose leaves are all labeled and whose interior
/// vertices have degree >= 3, or degree 2 with two labeled neighbors. Up to
/// label-preserving isomorphism; vertex l carries label l.
std::vector<Graph> reduced_trees(int m);

/// Forests of reduced trees (isolated labels allowed) plus at most k
/// triangles, each free or sharing exactly one labeled vertex. FES sets omit
/// the labeled triangles.
TestSet generate_testset(int boundary_size, int k, FamilyKind kind);

/// Largest test order: a caterpillar b0-x-b1-...-x-b(b-1) plus k triangles.
inline int test_vertex_bound(int boundary_size, int k) {
  return 2 * boundary_size - 1 + 3 * k;
}

/// Violated test properties (empty when the test is well-formed).
std::vector<std::string> audit_test(const BoundariedGraph& test, int k,
                                    FamilyKind kind);

/// Component signature such as "I,I,T2,K" (isolated label, tree with two
/// labels, free triangle, labeled triangle P).
std::string test_signature(const BoundariedGraph& test);
std::map<std::string, std::size_t> testset_census(const TestSet& ts);

bool distinguishes(const BoundariedGraph& test, const BoundariedGraph& g,
                   const BoundariedGraph& h, FamilyId f);

/// Bit i is member(g ⊕ test i).
std::vector<std::uint64_t> testset_signature(const BoundariedGraph& g,
                                             FamilyId f, const TestSet& ts);

/// Index of the first test on which g and h disagree.
std::optional<std::size_t> first_distinguishing_test(const BoundariedGraph& g,
                                                     const BoundariedGraph& h,
                                                     FamilyId f,
                                                     const TestSet& ts);

enum class Stage { Direct = 1, Congruence = 2, Random = 3, Testset = 4 };
enum class VerdictStatus {
  NonminimalDirect,
  NonminimalCongruence,
  NonminimalTestset,
  Minimal
};

std::string to_string(VerdictStatus s);

/// How one one-step ∂-minor was told apart from its parent.
struct Distinguisher {
  TParse minor;
  std::optional<Extension> extension;
  std::optional<std::size_t> test_index;
};

struct MinimalityVerdict {
  VerdictStatus status = VerdictStatus::Minimal;
  Stage stage = Stage::Testset;
  /// The congruent minor when nonminimal.
  std::optional<TParse> witness;
  /// One entry per minor when minimal.
  std::vector<Distinguisher> distinguishers;

  bool minimal() const { return status == VerdictStatus::Minimal; }
};

MinimalityVerdict testset_verdict(const TParse& p,
                                  const std::vector<TParse>& minors,
                                  FamilyId f, const TestSet& ts);

/// Random extensions Z drawn from canonic operators; succeeds when
/// p·Z is outside f and minor·Z inside. The empty extension is tried first.
std::optional<Extension> random_distinguisher(const TParse& p,
                                              const TParse& minor, FamilyId f,
                                              int budget, int len_max,
                                              std::uint64_t seed);

void write_testset(std::ostream& out, const TestSet& ts);
/// Throws InputError on malformed lines.
TestSet read_testset(std::istream& in, int k, FamilyKind kind);
/// Reads `dir/testset_<kind>_b<b>_k<k>.txt` when present, otherwise
/// generates and writes it. An empty dir disables caching.
TestSet load_or_generate_testset(const std::filesystem::path& dir,
                                 int boundary_size, int k, FamilyKind kind);

}  // namespace obstruct
