#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gravfm {

using VertexId = std::uint32_t;
using EdgeIndex = std::uint64_t;

struct Edge {
  VertexId src = 0;
  VertexId dst = 0;
  double weight = 0.0;
};

/// Immutable directed multigraph in compressed adjacency form.
///
/// Neighbors of a vertex keep the order in which their edges were supplied.
/// Duplicate edges and self-loops are kept.
class Graph {
 public:
  Graph() : offsets_{0} {}

  /// Validates the invariants and throws InvalidArgument on violation.
  Graph(std::vector<EdgeIndex> offsets, std::vector<VertexId> neighbors,
        std::optional<std::vector<double>> weights = std::nullopt);

  /// Builds the adjacency from an edge sequence (stable per source vertex).
  static Graph from_edges(std::size_t num_vertices, std::span<const Edge> edges,
                          bool weighted = false);

  std::size_t num_vertices() const { return offsets_.size() - 1; }
  std::size_t num_edges() const { return neighbors_.size(); }
  bool weighted() const { return weights_.has_value(); }

  std::size_t outdegree(VertexId v) const {
    return static_cast<std::size_t>(offsets_[v + 1] - offsets_[v]);
  }
  std::span<const VertexId> neighbors(VertexId v) const {
    return {neighbors_.data() + offsets_[v], outdegree(v)};
  }
  /// Empty span for unweighted graphs.
  std::span<const double> weights(VertexId v) const {
    if (!weights_) return {};
    return {weights_->data() + offsets_[v], outdegree(v)};
  }

  const std::vector<EdgeIndex>& offsets() const { return offsets_; }
  const std::vector<VertexId>& neighbor_array() const { return neighbors_; }
  const std::optional<std::vector<double>>& weight_array() const { return weights_; }

  bool operator==(const Graph&) const = default;

 private:
  std::vector<EdgeIndex> offsets_;
  std::vector<VertexId> neighbors_;
  std::optional<std::vector<double>> weights_;
};

struct DegreeStats {
  std::size_t num_vertices = 0;
  std::size_t num_edges = 0;
  double avg_degree = 0.0;  // num_edges / num_vertices
  std::size_t max_outdegree = 0;
  std::size_t min_outdegree = 0;
};

DegreeStats degree_stats(const Graph& g);

/// Adds the reverse of every edge and drops duplicate (src, dst) pairs;
/// neighbor lists come out sorted. Weights are dropped. Connected-component
/// labelling over out-edges needs this form.
Graph symmetrize(const Graph& g);

// ---------------------------------------------------------------------------
// Edge-list text format
//
//   # comment
//   # vertices: N        (optional directive; raises |V| to at least N)
//   src dst [weight]
//
// Ids are 0-based decimal. |V| is max(id) + 1 unless the directive asks for
// more, so trailing isolated vertices survive a save/load round trip.
// ---------------------------------------------------------------------------

struct LoadOptions {
  unsigned vertex_id_bits = 32;  // ids must be < 2^vertex_id_bits
};

Graph load_edge_list(std::istream& in, const LoadOptions& opts = {});
Graph load_edge_list_file(const std::string& path, const LoadOptions& opts = {});
void save_edge_list(const Graph& g, std::ostream& out);
void save_edge_list_file(const Graph& g, const std::string& path);

// ---------------------------------------------------------------------------
// Generators. All draw from SplitMix64(seed) and are deterministic per seed.
// ---------------------------------------------------------------------------

/// num_edges edges whose endpoints are drawn uniformly: for each edge,
/// src = below(|V|) then dst = below(|V|).
Graph generate_uniform(std::size_t num_vertices, std::size_t num_edges, std::uint64_t seed);

/// Quadrant probabilities (a, b, c, d) for the recursive matrix generator.
using RmatProbs = std::array<double, 4>;
inline constexpr RmatProbs kDefaultRmatProbs{0.57, 0.19, 0.19, 0.05};

/// 2^scale vertices, edgefactor * 2^scale edges. For every edge and every bit
/// from the most significant down, one unit() draw u picks the quadrant:
/// u < a keeps both bits 0, u < a+b sets the dst bit, u < a+b+c sets the src
/// bit, otherwise both. No vertex relabelling is applied.
Graph generate_rmat(unsigned scale, std::size_t edgefactor, std::uint64_t seed,
                    const RmatProbs& probs = kDefaultRmatProbs);

/// Layered latency graph: vertex 0 is the root, layer i (1..depth) holds
/// vertices 1 + (i-1)*width .. i*width. Tree edges run from the root to all of
/// layer 1 and from (layer i, position j) to (layer i+1, position j). Extra
/// same-layer edges bring the edge count to target_degree * (|V| - 1); they are
/// spread round-robin over the sources of each layer with a uniformly drawn
/// destination in the same layer.
Graph generate_layered(std::size_t width, std::size_t depth, std::size_t target_degree,
                       std::uint64_t seed);

}  // namespace gravfm
