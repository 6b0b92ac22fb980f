#include "muhard/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <numeric>
#include <sstream>

#include "muhard/error.hpp"

namespace muhard {

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges) : n_(vertex_count), edges_(std::move(edges)) {
  if (n_ == 0) throw PreconditionError("graph needs at least one vertex");
  for (auto& e : edges_) {
    if (e.a == e.b) throw PreconditionError("self-loop at vertex " + std::to_string(e.a));
    if (e.a > e.b) std::swap(e.a, e.b);
    if (e.a < 1 || e.b > n_) {
      throw PreconditionError("edge {" + std::to_string(e.a) + "," + std::to_string(e.b) + "} outside 1.." +
                              std::to_string(n_));
    }
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

std::vector<std::vector<std::size_t>> Graph::components() const {
  std::vector<std::size_t> parent(n_ + 1);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : edges_) {
    std::size_t ra = find(e.a), rb = find(e.b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<std::vector<std::size_t>> groups(n_ + 1);
  for (std::size_t v = 1; v <= n_; ++v) groups[find(v)].push_back(v);
  std::vector<std::vector<std::size_t>> out;
  for (auto& g : groups)
    if (!g.empty()) out.push_back(std::move(g));
  return out;
}

std::string Graph::to_dimacs() const {
  std::ostringstream os;
  os << "p edge " << n_ << ' ' << edges_.size() << '\n';
  for (const auto& e : edges_) os << "e " << e.a << ' ' << e.b << '\n';
  return os.str();
}

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::size_t parse_count(std::string_view token, std::size_t line) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

Graph parse_dimacs(std::string_view text) {
  std::optional<std::size_t> vertices;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto tokens = split_tokens(line);
    if (tokens.empty() || tokens[0] == "c") {
      if (end == text.size()) break;
      continue;
    }
    if (tokens[0] == "p") {
      if (vertices) throw ParseError(line_no, "duplicate problem line");
      if (tokens.size() != 4 || tokens[1] != "edge") throw ParseError(line_no, "expected 'p edge <n> <m>'");
      vertices = parse_count(tokens[2], line_no);
      parse_count(tokens[3], line_no);
      if (*vertices == 0) throw ParseError(line_no, "graph needs at least one vertex");
    } else if (tokens[0] == "e") {
      if (!vertices) throw ParseError(line_no, "edge line before the problem line");
      if (tokens.size() != 3) throw ParseError(line_no, "expected 'e <a> <b>'");
      std::size_t a = parse_count(tokens[1], line_no);
      std::size_t b = parse_count(tokens[2], line_no);
      if (a == b) throw ParseError(line_no, "self-loop at vertex " + std::to_string(a));
      if (a < 1 || b < 1 || a > *vertices || b > *vertices) {
        throw ParseError(line_no, "endpoint out of range 1.." + std::to_string(*vertices));
      }
      edges.push_back({std::min(a, b), std::max(a, b)});
    } else {
      throw ParseError(line_no, "unknown line type '" + std::string(tokens[0]) + "'");
    }
    if (end == text.size()) break;
  }
  if (!vertices) throw ParseError(line_no, "missing 'p edge' problem line");
  return Graph(*vertices, std::move(edges));
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t a = 1; a <= n; ++a)
    for (std::size_t b = a + 1; b <= n; ++b) edges.push_back({a, b});
  return Graph(n, std::move(edges));
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw PreconditionError("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.push_back({v, v + 1});
  edges.push_back({1, n});
  return Graph(n, std::move(edges));
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.push_back({v, v + 1});
  return Graph(n, std::move(edges));
}

Graph petersen_graph() {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < 5; ++i) {
    edges.push_back({1 + i, 1 + (i + 1) % 5});      // outer cycle
    edges.push_back({1 + i, 6 + i});                // spokes
    edges.push_back({6 + i, 6 + (i + 2) % 5});      // inner pentagram
  }
  return Graph(10, std::move(edges));
}

std::optional<Edge> find_conflict(const Graph& graph, const Coloring& coloring) {
  if (coloring.colors.size() != graph.vertex_count()) {
    throw DimensionError("coloring covers " + std::to_string(coloring.colors.size()) + " vertices, graph has " +
                         std::to_string(graph.vertex_count()));
  }
  for (const auto& e : graph.edges()) {
    if (coloring.of(e.a) > 2 || coloring.of(e.b) > 2) throw PreconditionError("color outside {0,1,2}");
    if (coloring.of(e.a) == coloring.of(e.b)) return e;
  }
  return std::nullopt;
}

std::optional<Coloring> find_three_coloring(const Graph& graph) {
  const std::size_t n = graph.vertex_count();
  std::vector<std::vector<std::size_t>> adj(n + 1);
  for (const auto& e : graph.edges()) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<int> color(n + 1, -1);
  std::function<bool(std::size_t)> assign = [&](std::size_t v) {
    if (v > n) return true;
    for (int c = 0; c < 3; ++c) {
      bool ok = std::none_of(adj[v].begin(), adj[v].end(), [&](std::size_t w) { return color[w] == c; });
      if (!ok) continue;
      color[v] = c;
      if (assign(v + 1)) return true;
    }
    color[v] = -1;
    return false;
  };
  if (!assign(1)) return std::nullopt;
  Coloring out;
  for (std::size_t v = 1; v <= n; ++v) out.colors.push_back(static_cast<std::uint8_t>(color[v]));
  return out;
}

}  // namespace muhard
