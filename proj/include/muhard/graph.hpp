#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace muhard {

/// Undirected edge {a, b} with 1-based endpoints and a < b.
struct Edge {
  std::size_t a;
  std::size_t b;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple graph on vertices 1..n. Edges are kept sorted lexicographically and
/// deduplicated; the j-th edge in this order owns slack index n + j of the
/// coloring gadget.
class Graph {
 public:
  Graph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Connected components as sorted vertex lists, ordered by lowest vertex.
  std::vector<std::vector<std::size_t>> components() const;

  std::string to_dimacs() const;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
};

/// Parses the DIMACS .col subset: `c` comments, one `p edge <n> <m>` header,
/// `e <a> <b>` lines. Throws ParseError with the offending line number.
Graph parse_dimacs(std::string_view text);

Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph petersen_graph();

/// Color in {0, 1, 2} for each vertex 1..n (stored 0-based).
struct Coloring {
  std::vector<std::uint8_t> colors;

  std::uint8_t of(std::size_t vertex) const { return colors.at(vertex - 1); }
  friend bool operator==(const Coloring&, const Coloring&) = default;
};

/// First edge whose endpoints share a color, if any. Throws DimensionError
/// when the coloring does not cover exactly the graph's vertices.
std::optional<Edge> find_conflict(const Graph& graph, const Coloring& coloring);

/// Exhaustive backtracking 3-coloring; nullopt when none exists.
std::optional<Coloring> find_three_coloring(const Graph& graph);

}  // namespace muhard
