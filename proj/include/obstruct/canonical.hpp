#pragma once

#include <compare>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "obstruct/graph.hpp"

namespace obstruct {

/// Isomorphism-invariant encoding. Two graphs (with vertex colors, when
/// given) have equal forms iff they are isomorphic by a color-preserving map.
struct CanonicalForm {
  std::string bytes;

  auto operator<=>(const CanonicalForm&) const = default;
};

/// Canonical labeling: result[v] is the new name of vertex v. Colors restrict
/// the allowed isomorphisms to color-preserving ones; an empty span means
/// uncolored. Vertices of smaller color receive smaller new names.
std::vector<int> canonical_labeling(const Graph& g,
                                    std::span<const int> colors = {});

CanonicalForm canonical_form(const Graph& g, std::span<const int> colors = {});

/// The canonical representative: g relabeled by canonical_labeling.
Graph canonical_graph(const Graph& g);

bool isomorphic(const Graph& a, const Graph& b);

}  // namespace obstruct

template <>
struct std::hash<obstruct::CanonicalForm> {
  std::size_t operator()(const obstruct::CanonicalForm& f) const noexcept {
    return std::hash<std::string>{}(f.bytes);
  }
};
