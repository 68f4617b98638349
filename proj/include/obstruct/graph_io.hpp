#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "obstruct/graph.hpp"

namespace obstruct {

// graph6: standard ASCII format (bytes 63..126), upper triangle column-wise.
std::string to_graph6(const Graph& g);
Graph from_graph6(std::string_view text);
/// One graph per non-empty line; an optional ">>graph6<<" header is skipped.
std::vector<Graph> read_graph6_stream(std::istream& in);
void write_graph6_stream(std::ostream& out, const std::vector<Graph>& graphs);

// Edge list: "n m" header then m lines "u v".
std::string to_edge_list(const Graph& g);
Graph from_edge_list(std::string_view text);

std::string to_dot(const Graph& g, std::string_view name = "G");

}  // namespace obstruct
