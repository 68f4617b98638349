#pragma once

#include <string>

#include "obstruct/graph.hpp"

namespace obstruct {

enum class FamilyKind { FVS, FES };

/// k-FVS or k-FES: graphs with a feedback vertex (edge) set of size <= k.
struct FamilyId {
  FamilyKind kind = FamilyKind::FVS;
  int k = 0;

  FamilyId() = default;
  /// Throws InputError for negative k.
  FamilyId(FamilyKind kind, int k);

  bool operator==(const FamilyId&) const = default;
};

std::string to_string(FamilyKind kind);
std::string to_string(FamilyId f);
FamilyKind parse_family_kind(const std::string& text);

/// Largest order accepted by certify_obstruction.
inline constexpr int kMaxCertifyOrder = 30;

/// Exact minimum feedback vertex set size (branching on a shortest cycle).
int fvs_exact(const Graph& g);
/// Decision version: is there a feedback vertex set with at most k vertices?
bool fvs_at_most(const Graph& g, int k);

/// |E| - |V| + number of components.
int fes_exact(const Graph& g);
/// Definitional minimum over edge subsets whose removal leaves a forest
/// (keep/remove search memoized on the kept connectivity). Throws InputError
/// above 10 vertices.
int fes_bruteforce(const Graph& g);

bool member(const Graph& g, FamilyId f);

/// True iff g is outside f while every one-step minor is inside. For FES on
/// connected graphs the answer is cross-checked against the contraction
/// characterization (FES = k+1 and adjacent vertices always share a
/// neighbor); disagreement throws std::logic_error. Throws InputError above
/// kMaxCertifyOrder vertices.
bool certify_obstruction(const Graph& g, FamilyId f);

/// Every pair of adjacent vertices has a common neighbor.
bool every_edge_in_triangle(const Graph& g);

}  // namespace obstruct
