#include "rrcolor/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "rrcolor/bit_source.hpp"

namespace rrcolor {

Graph Graph::from_edges(int node_count, const std::vector<std::pair<int, int>>& edges) {
  if (node_count <= 0) throw std::invalid_argument("Graph: node_count must be positive");
  std::set<std::pair<int, int>> unique;
  for (auto [u, v] : edges) {
    if (u < 0 || u >= node_count || v < 0 || v >= node_count) {
      throw std::invalid_argument("Graph: node id out of range");
    }
    if (u == v) throw std::invalid_argument("Graph: self-loop");
    unique.emplace(std::min(u, v), std::max(u, v));
  }

  Graph g;
  g.node_count_ = node_count;
  g.edge_count_ = static_cast<int>(unique.size());
  std::vector<int> deg(node_count, 0);
  for (auto [u, v] : unique) {
    ++deg[u];
    ++deg[v];
  }
  g.offsets_.assign(node_count + 1, 0);
  for (int v = 0; v < node_count; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.adj_.resize(g.offsets_[node_count]);
  std::vector<int> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [u, v] : unique) {
    g.adj_[cursor[u]++] = v;
    g.adj_[cursor[v]++] = u;
  }
  for (int v = 0; v < node_count; ++v) {
    auto nb = g.adj_.begin() + g.offsets_[v];
    std::sort(nb, g.adj_.begin() + g.offsets_[v + 1]);
    g.max_degree_ = std::max(g.max_degree_, deg[v]);
  }
  return g;
}

bool Graph::has_edge(int u, int v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

int parse_int(const std::string& s, int line_no, const char* what) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing");
    if (v < 0 || v > INT32_MAX) throw std::out_of_range("range");
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw graph_parse_error(line_no, std::string("bad ") + what + " '" + s + "'");
  }
}

}  // namespace

Graph parse_graph(std::istream& in) {
  std::string line;
  int line_no = 0;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tok = tokens(line);
    if (tok.empty()) continue;
    if (tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (n >= 0) throw graph_parse_error(line_no, "duplicate problem header");
      if (tok.size() != 4 || tok[1] != "edge") {
        throw graph_parse_error(line_no, "expected 'p edge <n> <m>'");
      }
      n = parse_int(tok[2], line_no, "node count");
      if (n <= 0) throw graph_parse_error(line_no, "node count must be positive");
      parse_int(tok[3], line_no, "edge count");
      continue;
    }
    if (tok[0] == "e") {
      if (n < 0) throw graph_parse_error(line_no, "edge before 'p edge' header");
      if (tok.size() != 3) throw graph_parse_error(line_no, "expected 'e <u> <v>'");
      const int u = parse_int(tok[1], line_no, "node id");
      const int v = parse_int(tok[2], line_no, "node id");
      if (u < 1 || u > n || v < 1 || v > n) {
        throw graph_parse_error(line_no, "node id out of range 1.." + std::to_string(n));
      }
      if (u == v) throw graph_parse_error(line_no, "self-loop");
      edges.emplace_back(u - 1, v - 1);
      continue;
    }
    throw graph_parse_error(line_no, "unrecognized line '" + line + "'");
  }
  if (n < 0) throw graph_parse_error(line_no, "missing 'p edge' header");
  return Graph::from_edges(n, edges);
}

Graph parse_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return parse_graph(in);
}

Graph make_cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle: need n >= 3");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, e);
}

Graph make_path(int n) {
  if (n < 1) throw std::invalid_argument("path: need n >= 1");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, e);
}

Graph make_complete(int n) {
  if (n < 1) throw std::invalid_argument("complete: need n >= 1");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

Graph make_grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid: need rows, cols >= 1");
  std::vector<std::pair<int, int>> e;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) e.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  return Graph::from_edges(rows * cols, e);
}

Graph make_random_regular(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 0 || d >= n || (static_cast<long long>(n) * d) % 2 != 0) {
    throw std::invalid_argument("random_regular: need 0 <= d < n and n*d even");
  }
  if (d == 0) return Graph::from_edges(n, {});
  BitSource rng(seed);
  std::vector<int> stubs(static_cast<std::size_t>(n) * d);
  for (;;) {
    for (int v = 0; v < n; ++v)
      for (int j = 0; j < d; ++j) stubs[static_cast<std::size_t>(v) * d + j] = v;
    // Fisher-Yates, then pair consecutive stubs.
    for (std::size_t i = 0; i + 1 < stubs.size(); ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.uniform_int(stubs.size() - i));
      std::swap(stubs[i], stubs[j]);
    }
    std::set<std::pair<int, int>> seen;
    bool ok = true;
    for (std::size_t i = 0; i < stubs.size(); i += 2) {
      const int u = stubs[i], v = stubs[i + 1];
      if (u == v || !seen.emplace(std::min(u, v), std::max(u, v)).second) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;  // restart the whole pairing
    std::vector<std::pair<int, int>> e(seen.begin(), seen.end());
    return Graph::from_edges(n, e);
  }
}

Graph generate_from_spec(const std::string& spec, std::uint64_t seed) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  std::vector<int> params;
  if (colon != std::string::npos) {
    std::string rest = spec.substr(colon + 1);
    std::istringstream ss(rest);
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        params.push_back(std::stoi(part));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad generator parameter '" + part + "' in '" + spec + "'");
      }
    }
  }
  auto want = [&](std::size_t count) {
    if (params.size() != count) {
      throw std::invalid_argument("generator '" + kind + "' takes " + std::to_string(count) +
                                  " parameter(s)");
    }
  };
  if (kind == "cycle") {
    want(1);
    return make_cycle(params[0]);
  }
  if (kind == "path") {
    want(1);
    return make_path(params[0]);
  }
  if (kind == "complete") {
    want(1);
    return make_complete(params[0]);
  }
  if (kind == "grid") {
    want(2);
    return make_grid(params[0], params[1]);
  }
  if (kind == "random_regular") {
    want(2);
    return make_random_regular(params[0], params[1], seed);
  }
  throw std::invalid_argument("unknown generator kind '" + kind + "'");
}

}  // namespace rrcolor
