#include "gravfm/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "gravfm/error.hpp"
#include "gravfm/rng.hpp"

namespace gravfm {

Graph::Graph(std::vector<EdgeIndex> offsets, std::vector<VertexId> neighbors,
             std::optional<std::vector<double>> weights)
    : offsets_(std::move(offsets)), neighbors_(std::move(neighbors)), weights_(std::move(weights)) {
  if (offsets_.empty() || offsets_.front() != 0) {
    throw InvalidArgument("graph offsets must start with 0");
  }
  if (offsets_.back() != neighbors_.size()) {
    throw InvalidArgument("last offset must equal the number of edges");
  }
  if (!std::is_sorted(offsets_.begin(), offsets_.end())) {
    throw InvalidArgument("graph offsets must be non-decreasing");
  }
  const auto n = num_vertices();
  for (VertexId u : neighbors_) {
    if (u >= n) throw InvalidArgument("neighbor id " + std::to_string(u) + " out of range");
  }
  if (weights_ && weights_->size() != neighbors_.size()) {
    throw InvalidArgument("weight array length must equal the number of edges");
  }
}

Graph Graph::from_edges(std::size_t num_vertices, std::span<const Edge> edges, bool weighted) {
  if (num_vertices > std::numeric_limits<VertexId>::max()) {
    throw InvalidArgument("too many vertices for a 32-bit vertex id");
  }
  std::vector<EdgeIndex> offsets(num_vertices + 1, 0);
  for (const Edge& e : edges) {
    if (e.src >= num_vertices || e.dst >= num_vertices) {
      throw InvalidArgument("edge endpoint out of range");
    }
    ++offsets[e.src + 1];
  }
  for (std::size_t v = 0; v < num_vertices; ++v) offsets[v + 1] += offsets[v];

  std::vector<VertexId> neighbors(edges.size());
  std::optional<std::vector<double>> weights;
  if (weighted) weights.emplace(edges.size());
  std::vector<EdgeIndex> cursor(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : edges) {
    const EdgeIndex at = cursor[e.src]++;
    neighbors[at] = e.dst;
    if (weights) (*weights)[at] = e.weight;
  }
  return Graph(std::move(offsets), std::move(neighbors), std::move(weights));
}

Graph symmetrize(const Graph& g) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  pairs.reserve(2 * g.num_edges());
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    for (VertexId w : g.neighbors(u)) {
      pairs.emplace_back(u, w);
      pairs.emplace_back(w, u);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [a, b] : pairs) edges.push_back({a, b, 0.0});
  return Graph::from_edges(g.num_vertices(), edges, false);
}

DegreeStats degree_stats(const Graph& g) {
  DegreeStats s;
  s.num_vertices = g.num_vertices();
  s.num_edges = g.num_edges();
  if (s.num_vertices == 0) return s;
  s.avg_degree = static_cast<double>(s.num_edges) / static_cast<double>(s.num_vertices);
  s.min_outdegree = std::numeric_limits<std::size_t>::max();
  for (VertexId v = 0; v < s.num_vertices; ++v) {
    const auto d = g.outdegree(v);
    s.max_outdegree = std::max(s.max_outdegree, d);
    s.min_outdegree = std::min(s.min_outdegree, d);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Edge-list I/O

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t parse_id(std::string_view field, std::size_t line_no, std::uint64_t limit) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec == std::errc::result_out_of_range) {
    throw FormatError("vertex id '" + std::string(field) + "' overflows", line_no);
  }
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw FormatError("expected an unsigned vertex id, got '" + std::string(field) + "'", line_no);
  }
  if (value >= limit) {
    throw FormatError("vertex id " + std::string(field) + " does not fit the configured id width",
                      line_no);
  }
  return value;
}

double parse_weight(std::string_view field, std::size_t line_no) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
    throw FormatError("malformed edge weight '" + std::string(field) + "'", line_no);
  }
  return value;
}

}  // namespace

Graph load_edge_list(std::istream& in, const LoadOptions& opts) {
  if (opts.vertex_id_bits == 0 || opts.vertex_id_bits > 32) {
    throw InvalidArgument("vertex id width must be between 1 and 32 bits");
  }
  const std::uint64_t limit = std::uint64_t{1} << opts.vertex_id_bits;

  std::vector<Edge> edges;
  std::optional<bool> weighted;
  std::uint64_t num_vertices = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    auto first = view.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (view[first] == '#') {
      auto fields = split_fields(view.substr(first + 1));
      if (fields.size() == 2 && fields[0] == "vertices:") {
        num_vertices = std::max(num_vertices, parse_id(fields[1], line_no, limit + 1));
      }
      continue;
    }
    auto fields = split_fields(view);
    if (fields.size() != 2 && fields.size() != 3) {
      throw FormatError("expected 'src dst' or 'src dst weight'", line_no);
    }
    const bool has_weight = fields.size() == 3;
    if (weighted && *weighted != has_weight) {
      throw FormatError("weight column present on some lines but not others", line_no);
    }
    weighted = has_weight;
    Edge e;
    e.src = static_cast<VertexId>(parse_id(fields[0], line_no, limit));
    e.dst = static_cast<VertexId>(parse_id(fields[1], line_no, limit));
    if (has_weight) e.weight = parse_weight(fields[2], line_no);
    num_vertices = std::max<std::uint64_t>(num_vertices, std::max(e.src, e.dst) + std::uint64_t{1});
    edges.push_back(e);
  }
  return Graph::from_edges(static_cast<std::size_t>(num_vertices), edges, weighted.value_or(false));
}

Graph load_edge_list_file(const std::string& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open edge list '" + path + "'");
  return load_edge_list(in, opts);
}

void save_edge_list(const Graph& g, std::ostream& out) {
  out << "# vertices: " << g.num_vertices() << '\n';
  char buf[64];
  std::string line;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    auto nbrs = g.neighbors(v);
    auto wts = g.weights(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      line.clear();
      line += std::to_string(v);
      line += ' ';
      line += std::to_string(nbrs[i]);
      if (g.weighted()) {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, wts[i]);
        line += ' ';
        line.append(buf, ptr);
      }
      line += '\n';
      out << line;
    }
  }
}

void save_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write edge list '" + path + "'");
  save_edge_list(g, out);
}

// ---------------------------------------------------------------------------
// Generators

Graph generate_uniform(std::size_t num_vertices, std::size_t num_edges, std::uint64_t seed) {
  if (num_vertices == 0) throw InvalidArgument("uniform graph needs at least one vertex");
  SplitMix64 rng(seed);
  std::vector<Edge> edges(num_edges);
  for (auto& e : edges) {
    e.src = static_cast<VertexId>(rng.below(num_vertices));
    e.dst = static_cast<VertexId>(rng.below(num_vertices));
  }
  return Graph::from_edges(num_vertices, edges);
}

Graph generate_rmat(unsigned scale, std::size_t edgefactor, std::uint64_t seed,
                    const RmatProbs& probs) {
  if (scale < 1 || scale > 31) throw InvalidArgument("RMAT scale must be in [1, 31]");
  double sum = 0;
  for (double p : probs) {
    if (p < 0) throw InvalidArgument("RMAT probabilities must be non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument("RMAT probabilities must sum to 1");

  const std::size_t n = std::size_t{1} << scale;
  const double ab = probs[0] + probs[1];
  const double abc = ab + probs[2];
  SplitMix64 rng(seed);
  std::vector<Edge> edges(edgefactor * n);
  for (auto& e : edges) {
    VertexId src = 0, dst = 0;
    for (unsigned bit = scale; bit-- > 0;) {
      const double u = rng.unit();
      if (u < probs[0]) {
      } else if (u < ab) {
        dst |= VertexId{1} << bit;
      } else if (u < abc) {
        src |= VertexId{1} << bit;
      } else {
        src |= VertexId{1} << bit;
        dst |= VertexId{1} << bit;
      }
    }
    e.src = src;
    e.dst = dst;
  }
  return Graph::from_edges(n, edges);
}

Graph generate_layered(std::size_t width, std::size_t depth, std::size_t target_degree,
                       std::uint64_t seed) {
  if (width == 0 || depth == 0) throw InvalidArgument("layered graph needs width, depth >= 1");
  if (target_degree < 1) {
    throw InvalidArgument("target degree " + std::to_string(target_degree) +
                          " is below the tree-edge minimum of 1");
  }
  const std::size_t n = 1 + width * depth;
  auto id = [width](std::size_t layer, std::size_t pos) {
    return static_cast<VertexId>(1 + (layer - 1) * width + pos);
  };

  SplitMix64 rng(seed);
  std::vector<Edge> edges;
  edges.reserve(target_degree * (n - 1));
  for (std::size_t j = 0; j < width; ++j) edges.push_back({0, id(1, j)});
  const std::size_t extra_per_vertex = target_degree - 1;
  for (std::size_t layer = 1; layer <= depth; ++layer) {
    for (std::size_t j = 0; j < width; ++j) {
      if (layer < depth) edges.push_back({id(layer, j), id(layer + 1, j)});
    }
    for (std::size_t k = 0; k < extra_per_vertex; ++k) {
      for (std::size_t j = 0; j < width; ++j) {
        edges.push_back({id(layer, j), id(layer, rng.below(width))});
      }
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace gravfm
