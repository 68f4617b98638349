#include "obstruct/graph_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace obstruct {

std::string to_graph6(const Graph& g) {
  const int n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    out.push_back(126);
    out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
    out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
    out.push_back(static_cast<char>((n & 63) + 63));
  }
  int acc = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) {
    out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  }
  return out;
}

Graph from_graph6(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (text.starts_with(">>graph6<<")) text.remove_prefix(10);
  if (text.empty()) throw InputError("empty graph6 string");
  for (char c : text) {
    if (c < 63 || c > 126) throw InputError("graph6 byte out of range");
  }
  std::size_t pos = 0;
  long n = 0;
  if (text[0] != 126) {
    n = text[0] - 63;
    pos = 1;
  } else {
    if (text.size() < 4 || text[1] == 126) {
      throw InputError("graph6 order beyond supported range");
    }
    n = (long(text[1] - 63) << 12) | (long(text[2] - 63) << 6) |
        long(text[3] - 63);
    pos = 4;
  }
  if (n > Graph::kMaxOrder) {
    throw InputError("graph6 order " + std::to_string(n) + " exceeds 64");
  }
  const long bits = n * (n - 1) / 2;
  const long need = (bits + 5) / 6;
  if (static_cast<long>(text.size() - pos) != need) {
    throw InputError("graph6 length does not match order");
  }
  std::vector<Edge> edges;
  long k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const int byte = text[pos + k / 6] - 63;
      if ((byte >> (5 - k % 6)) & 1) edges.emplace_back(i, j);
    }
  }
  if (k % 6 != 0) {
    const int byte = text[pos + k / 6] - 63;
    if ((byte & ((1 << (6 - k % 6)) - 1)) != 0) {
      throw InputError("graph6 padding bits are not zero");
    }
  }
  return Graph(static_cast<int>(n), edges);
}

std::vector<Graph> read_graph6_stream(std::istream& in) {
  std::vector<Graph> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out.push_back(from_graph6(line));
  }
  return out;
}

void write_graph6_stream(std::ostream& out, const std::vector<Graph>& graphs) {
  for (const Graph& g : graphs) out << to_graph6(g) << '\n';
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  const auto edges = g.edges();
  os << g.order() << ' ' << edges.size() << '\n';
  for (const Edge& e : edges) os << e.u << ' ' << e.v << '\n';
  return os.str();
}

Graph from_edge_list(std::string_view text) {
  std::istringstream is{std::string(text)};
  long n = -1, m = -1;
  if (!(is >> n >> m) || n < 0 || m < 0) {
    throw InputError("edge list header must be 'n m'");
  }
  if (n > Graph::kMaxOrder) throw InputError("edge list order exceeds 64");
  std::vector<Edge> edges;
  for (long i = 0; i < m; ++i) {
    long u = -1, v = -1;
    if (!(is >> u >> v)) throw InputError("edge list truncated");
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw InputError("edge list endpoint out of range");
    }
    if (u == v) throw InputError("edge list contains a self-loop");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  std::string extra;
  if (is >> extra) throw InputError("trailing data after edge list");
  Graph g(static_cast<int>(n), edges);
  if (g.size() != m) throw InputError("edge list contains repeated edges");
  return g;
}

std::string to_dot(const Graph& g, std::string_view name) {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (int v = 0; v < g.order(); ++v) os << "  " << v << ";\n";
  for (const Edge& e : g.edges()) os << "  " << e.u << " -- " << e.v << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace obstruct
