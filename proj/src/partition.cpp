#include "gravfm/partition.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "gravfm/error.hpp"

namespace gravfm {

PlacementMap::PlacementMap(std::size_t n_fpga, std::size_t pes_per_fpga, std::vector<PeId> assignment)
    : n_fpga_(n_fpga), pes_per_fpga_(pes_per_fpga), assignment_(std::move(assignment)) {
  if (n_fpga_ == 0 || pes_per_fpga_ == 0) throw InvalidArgument("FPGA and PE counts must be >= 1");
  for (PeId p : assignment_) {
    if (p >= n_pe()) throw InvalidArgument("PE id " + std::to_string(p) + " out of range");
  }
}

std::vector<std::vector<VertexId>> PlacementMap::vertices_by_pe() const {
  std::vector<std::vector<VertexId>> out(n_pe());
  for (VertexId v = 0; v < assignment_.size(); ++v) out[assignment_[v]].push_back(v);
  return out;
}

namespace {

void check_counts(std::size_t n_fpga, std::size_t pes_per_fpga) {
  if (n_fpga == 0 || pes_per_fpga == 0) throw InvalidArgument("FPGA and PE counts must be >= 1");
}

// Index of the smallest load, lowest index on ties.
std::size_t argmin_load(std::span<const std::uint64_t> loads) {
  return static_cast<std::size_t>(std::min_element(loads.begin(), loads.end()) - loads.begin());
}

}  // namespace

PlacementMap partition_round_robin(const Graph& g, std::size_t n_fpga, std::size_t pes_per_fpga) {
  check_counts(n_fpga, pes_per_fpga);
  const std::size_t n_pe = n_fpga * pes_per_fpga;
  std::vector<PeId> a(g.num_vertices());
  for (VertexId v = 0; v < a.size(); ++v) a[v] = static_cast<PeId>(v % n_pe);
  return PlacementMap(n_fpga, pes_per_fpga, std::move(a));
}

PlacementMap partition_greedy_edges(const Graph& g, std::size_t n_fpga, std::size_t pes_per_fpga) {
  check_counts(n_fpga, pes_per_fpga);
  // A linear scan beats a heap here: PE counts are small and the scan gives
  // the lowest-id tie-break for free.
  std::vector<std::uint64_t> loads(n_fpga * pes_per_fpga, 0);
  std::vector<PeId> a(g.num_vertices());
  for (VertexId v = 0; v < a.size(); ++v) {
    const auto p = argmin_load(loads);
    a[v] = static_cast<PeId>(p);
    loads[p] += g.outdegree(v);
  }
  return PlacementMap(n_fpga, pes_per_fpga, std::move(a));
}

PlacementMap import_partition(const Graph& g, std::span<const FpgaId> fpga_assignment,
                             std::size_t n_fpga, std::size_t pes_per_fpga) {
  check_counts(n_fpga, pes_per_fpga);
  if (fpga_assignment.size() != g.num_vertices()) {
    throw InvalidArgument("partition has " + std::to_string(fpga_assignment.size()) +
                          " entries for " + std::to_string(g.num_vertices()) + " vertices");
  }
  std::vector<std::uint64_t> loads(n_fpga * pes_per_fpga, 0);
  std::vector<PeId> a(g.num_vertices());
  for (VertexId v = 0; v < a.size(); ++v) {
    const FpgaId f = fpga_assignment[v];
    if (f >= n_fpga) {
      throw InvalidArgument("vertex " + std::to_string(v) + " assigned to FPGA " + std::to_string(f) +
                            " but only " + std::to_string(n_fpga) + " FPGAs exist");
    }
    std::span<const std::uint64_t> local(loads.data() + f * pes_per_fpga, pes_per_fpga);
    const auto p = f * pes_per_fpga + argmin_load(local);
    a[v] = static_cast<PeId>(p);
    loads[p] += g.outdegree(v);
  }
  return PlacementMap(n_fpga, pes_per_fpga, std::move(a));
}

std::vector<FpgaId> load_partition_file(std::istream& in) {
  std::vector<FpgaId> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    std::string_view field(line.data() + b, e - b + 1);
    FpgaId value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      throw FormatError("expected one FPGA id per line", line_no);
    }
    out.push_back(value);
  }
  return out;
}

std::vector<FpgaId> load_partition_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open partition file '" + path + "'");
  return load_partition_file(in);
}

void save_assignment(std::span<const std::uint32_t> ids, std::ostream& out) {
  for (auto id : ids) out << id << '\n';
}

PeEdgeSublists::PeEdgeSublists(const Graph& g, const PlacementMap& placement) {
  if (placement.num_vertices() != g.num_vertices()) {
    throw InvalidArgument("placement does not match the graph's vertex count");
  }
  const std::size_t n = g.num_vertices();
  per_pe_.resize(placement.n_pe());
  for (auto& s : per_pe_) s.offsets.assign(n + 1, 0);
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId u : g.neighbors(v)) ++per_pe_[placement.pe_of(u)].offsets[v + 1];
  }
  for (auto& s : per_pe_) {
    for (std::size_t v = 0; v < n; ++v) s.offsets[v + 1] += s.offsets[v];
    s.neighbors.resize(s.offsets[n]);
    if (g.weighted()) s.weights.resize(s.offsets[n]);
  }
  std::vector<EdgeIndex> fill(placement.n_pe(), 0);
  for (VertexId v = 0; v < n; ++v) {
    for (std::size_t p = 0; p < per_pe_.size(); ++p) fill[p] = per_pe_[p].offsets[v];
    auto nbrs = g.neighbors(v);
    auto wts = g.weights(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const PeId p = placement.pe_of(nbrs[i]);
      auto& s = per_pe_[p];
      s.neighbors[fill[p]] = nbrs[i];
      if (!wts.empty()) s.weights[fill[p]] = wts[i];
      ++fill[p];
    }
  }
}

NeighborFilterBitmap::NeighborFilterBitmap(const Graph& g, const PlacementMap& placement)
    : n_fpga_(placement.n_fpga()), bits_(g.num_vertices() * placement.n_fpga(), 0) {
  if (placement.num_vertices() != g.num_vertices()) {
    throw InvalidArgument("placement does not match the graph's vertex count");
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    for (VertexId u : g.neighbors(v)) bits_[static_cast<std::size_t>(v) * n_fpga_ + placement.fpga_of(u)] = 1;
  }
}

std::vector<std::uint64_t> edge_loads(const Graph& g, const PlacementMap& placement, BalanceLevel level) {
  std::vector<std::uint64_t> loads(level == BalanceLevel::pe ? placement.n_pe() : placement.n_fpga(), 0);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const auto slot = level == BalanceLevel::pe ? placement.pe_of(v) : placement.fpga_of(v);
    loads[slot] += g.outdegree(v);
  }
  return loads;
}

double imbalance(const Graph& g, const PlacementMap& placement, BalanceLevel level) {
  const auto loads = edge_loads(g, placement, level);
  const auto [lo, hi] = std::minmax_element(loads.begin(), loads.end());
  double total = 0;
  for (auto l : loads) total += static_cast<double>(l);
  const double mean = total / static_cast<double>(loads.size());
  if (mean == 0) return 0.0;
  return static_cast<double>(*hi - *lo) / mean;
}

}  // namespace gravfm
