#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rrcolor {

class graph_parse_error : public std::runtime_error {
 public:
  graph_parse_error(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Static undirected simple graph. Immutable after construction; adjacency
// lists are sorted, symmetric, deduplicated, and self-loop free.
class Graph {
 public:
  // edges are 0-based pairs; duplicates (in either orientation) collapse.
  static Graph from_edges(int node_count, const std::vector<std::pair<int, int>>& edges);

  int node_count() const { return node_count_; }
  int edge_count() const { return edge_count_; }
  int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }
  int max_degree() const { return max_degree_; }
  std::span<const int> neighbors(int v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  bool has_edge(int u, int v) const;

 private:
  int node_count_ = 0;
  int edge_count_ = 0;
  int max_degree_ = 0;
  std::vector<int> offsets_;
  std::vector<int> adj_;
};

// DIMACS-like format: "c" comment lines, one "p edge <n> <m>" header, then
// "e <u> <v>" lines with 1-based endpoints. LF or CRLF. Errors carry the
// offending line number.
Graph parse_graph(std::istream& in);
Graph parse_graph_file(const std::string& path);

// Deterministic generators. Only random_regular consumes the seed (pairing
// model with whole-pairing restart on any self-loop or duplicate edge).
Graph make_cycle(int n);
Graph make_path(int n);
Graph make_complete(int n);
Graph make_grid(int rows, int cols);
Graph make_random_regular(int n, int d, std::uint64_t seed);

// Mini-syntax used by the CLI: "cycle:8", "path:5", "complete:4",
// "grid:4,5", "random_regular:50,3".
Graph generate_from_spec(const std::string& spec, std::uint64_t seed);

}  // namespace rrcolor
