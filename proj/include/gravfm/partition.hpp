#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gravfm/graph.hpp"

namespace gravfm {

using PeId = std::uint32_t;
using FpgaId = std::uint32_t;

/// Vertex -> global PE assignment. PE ids are laid out FPGA-major:
/// pe = fpga * pes_per_fpga + local_pe.
class PlacementMap {
 public:
  PlacementMap() = default;
  PlacementMap(std::size_t n_fpga, std::size_t pes_per_fpga, std::vector<PeId> assignment);

  std::size_t n_fpga() const { return n_fpga_; }
  std::size_t pes_per_fpga() const { return pes_per_fpga_; }
  std::size_t n_pe() const { return n_fpga_ * pes_per_fpga_; }
  std::size_t num_vertices() const { return assignment_.size(); }

  PeId pe_of(VertexId v) const { return assignment_[v]; }
  FpgaId fpga_of(VertexId v) const { return static_cast<FpgaId>(assignment_[v] / pes_per_fpga_); }
  FpgaId fpga_of_pe(PeId p) const { return static_cast<FpgaId>(p / pes_per_fpga_); }

  const std::vector<PeId>& assignment() const { return assignment_; }

  /// Vertices hosted by each PE, ascending.
  std::vector<std::vector<VertexId>> vertices_by_pe() const;

  bool operator==(const PlacementMap&) const = default;

 private:
  std::size_t n_fpga_ = 1;
  std::size_t pes_per_fpga_ = 1;
  std::vector<PeId> assignment_;
};

PlacementMap partition_round_robin(const Graph& g, std::size_t n_fpga, std::size_t pes_per_fpga);

/// Vertices in id order, each to the PE with the smallest running outdegree
/// sum; ties go to the lowest PE id. No degree sort is applied.
PlacementMap partition_greedy_edges(const Graph& g, std::size_t n_fpga, std::size_t pes_per_fpga);

/// FPGA level taken from fpga_assignment (one entry per vertex); the PE level
/// inside each FPGA is chosen by the greedy edge heuristic.
PlacementMap import_partition(const Graph& g, std::span<const FpgaId> fpga_assignment,
                             std::size_t n_fpga, std::size_t pes_per_fpga);

/// One FPGA id per line; line i belongs to vertex i (METIS .part layout).
std::vector<FpgaId> load_partition_file(std::istream& in);
std::vector<FpgaId> load_partition_file(const std::string& path);
void save_assignment(std::span<const std::uint32_t> ids, std::ostream& out);

/// For PE p and every vertex v of the graph, the neighbors of v hosted on p,
/// in graph order. Stored as one compressed array per PE.
class PeEdgeSublists {
 public:
  PeEdgeSublists(const Graph& g, const PlacementMap& placement);

  std::size_t n_pe() const { return per_pe_.size(); }
  std::span<const VertexId> sublist(PeId p, VertexId v) const {
    const auto& s = per_pe_[p];
    return {s.neighbors.data() + s.offsets[v], static_cast<std::size_t>(s.offsets[v + 1] - s.offsets[v])};
  }
  std::span<const double> weights(PeId p, VertexId v) const {
    const auto& s = per_pe_[p];
    if (s.weights.empty()) return {};
    return {s.weights.data() + s.offsets[v], static_cast<std::size_t>(s.offsets[v + 1] - s.offsets[v])};
  }
  /// Number of edges stored on PE p.
  std::size_t edges_on(PeId p) const { return per_pe_[p].neighbors.size(); }

 private:
  struct PerPe {
    std::vector<EdgeIndex> offsets;
    std::vector<VertexId> neighbors;
    std::vector<double> weights;
  };
  std::vector<PerPe> per_pe_;
};

inline PeEdgeSublists build_pe_edge_sublists(const Graph& g, const PlacementMap& placement) {
  return PeEdgeSublists(g, placement);
}

/// bits[v][f] = 1 iff v has an out-neighbor hosted on FPGA f.
class NeighborFilterBitmap {
 public:
  NeighborFilterBitmap(const Graph& g, const PlacementMap& placement);

  bool test(VertexId v, FpgaId f) const { return bits_[static_cast<std::size_t>(v) * n_fpga_ + f] != 0; }
  std::size_t n_fpga() const { return n_fpga_; }
  std::size_t num_vertices() const { return n_fpga_ ? bits_.size() / n_fpga_ : 0; }

 private:
  std::size_t n_fpga_;
  std::vector<std::uint8_t> bits_;
};

inline NeighborFilterBitmap build_filter_bitmap(const Graph& g, const PlacementMap& placement) {
  return NeighborFilterBitmap(g, placement);
}

enum class BalanceLevel { pe, fpga };

/// Outgoing-edge load per PE or per FPGA.
std::vector<std::uint64_t> edge_loads(const Graph& g, const PlacementMap& placement, BalanceLevel level);

/// (max load - min load) / mean load; 0 when the mean is 0.
double imbalance(const Graph& g, const PlacementMap& placement, BalanceLevel level);

}  // namespace gravfm
