#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "obstruct/graph.hpp"
#include "obstruct/solvers.hpp"
#include "obstruct/tparse.hpp"

namespace obstruct {

/// Canonical representatives, one per isomorphism class, sorted by
/// canonical form.
std::vector<Graph> dedup_isomorphic(std::span<const Graph> graphs);

/// Contracts every listed edge at once (connected groups merge into their
/// smallest vertex).
Graph contract_edges(const Graph& g, std::span<const Edge> edges);
Graph remove_isolated(const Graph& g);

/// Final obstructions from boundary obstructions: every subset of
/// boundary-boundary edges is contracted, isolated vertices are dropped, and
/// what certifies survives. Rejected candidates are appended to `rejected`
/// (graph6) when given.
std::vector<Graph> derive_final(std::span<const TParse> boundary_obstructions,
                                FamilyId f,
                                std::vector<std::string>* rejected = nullptr);

/// Disjoint unions of at least two connected obstructions, drawn from the
/// families j with sum (j+1) = k+1, that certify for f. conn maps j to the
/// connected obstructions of the j-family of the same kind.
std::vector<Graph> compose_disconnected(const std::map<int, std::vector<Graph>>& conn,
                                        FamilyId f);

/// All edge sets of size FES(g) whose removal leaves a forest.
std::vector<std::vector<Edge>> minimum_feedback_edge_sets(const Graph& g);

/// Candidate (k+1)-FES obstructions grown from connected k-FES obstructions:
/// a new vertex joined to both ends of an edge, a triangle hung on a vertex,
/// or an edge between non-adjacent vertices joined by a path of length >= 2
/// after removing any minimum feedback edge set. Only certified candidates
/// are returned.
std::vector<Graph> predict_fes_next(std::span<const Graph> obs_k);

}  // namespace obstruct
