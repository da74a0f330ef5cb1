#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gravfm/endpoint.hpp"
#include "gravfm/error.hpp"
#include "gravfm/graph.hpp"
#include "gravfm/kernels.hpp"
#include "gravfm/partition.hpp"

namespace gravfm {

using Cycle = std::uint64_t;

enum class DeliveryMode { broadcast_updates, unicast_messages };

std::string to_string(DeliveryMode m);
DeliveryMode parse_delivery_mode(std::string_view s);

/// System shape and timing parameters of a simulated run.
struct SimConfig {
  std::size_t n_fpga = 1;
  std::size_t n_pe_per_fpga = 1;
  double f_clk = 187.5e6;
  DeliveryMode delivery_mode = DeliveryMode::broadcast_updates;
  bool filter_enabled = true;
  unsigned channels = 2;

  double link_bandwidth_bits_per_cycle = 128.0;  // per inter-FPGA link direction
  Cycle link_latency_cycles = 150;
  Cycle crossbar_latency_cycles = 4;
  Cycle network_jitter_cycles = 0;  // seeded extra delay per hop; reorders tokens

  Cycle scatter_memory_latency_cycles = 0;  // 0 models on-chip edge storage
  std::size_t scatter_max_outstanding = 64;
  Cycle gather_hazard_depth_cycles = 4;
  Cycle apply_latency_cycles = 1;
  std::size_t update_queue_capacity = 0;  // 0: vertices hosted by the PE

  unsigned vertex_id_bits = 32;
  unsigned count_bits = 32;
  std::uint64_t rng_seed = 0;
  Superstep max_supersteps = 1'000'000;

  std::size_t n_pe() const { return n_fpga * n_pe_per_fpga; }
  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
};

/// Simulation aborted: queue overflow, deadlock or superstep cap.
class SimulationError : public Error {
 public:
  using Error::Error;
};

struct SuperstepStats {
  Superstep superstep = 0;
  std::uint64_t updates = 0;
  std::uint64_t messages = 0;
  std::uint64_t inter_fpga_tokens = 0;
  std::uint64_t inter_fpga_payload_bits = 0;
  Cycle end_cycle = 0;  // last barrier release (or termination) of this superstep
  Cycle cycles = 0;     // end_cycle minus the previous superstep's end_cycle
};

struct RunReport {
  static constexpr int kSchemaVersion = 1;

  std::string kernel;
  DeliveryMode delivery_mode = DeliveryMode::broadcast_updates;
  bool filter_enabled = false;
  std::size_t n_fpga = 1;
  std::size_t n_pe_per_fpga = 1;
  std::size_t num_vertices = 0;
  std::size_t num_edges = 0;
  std::uint64_t rng_seed = 0;

  Superstep supersteps = 0;    // supersteps whose barrier was released
  Superstep apply_phases = 0;  // supersteps + the final, quiescent apply
  std::uint64_t messages_generated = 0;
  std::uint64_t updates_emitted = 0;

  std::uint64_t inter_fpga_tokens = 0;  // update or message tokens crossing FPGAs
  std::uint64_t inter_fpga_payload_bits = 0;
  std::uint64_t inter_fpga_wire_bits = 0;
  std::uint64_t inter_fpga_barrier_tokens = 0;
  std::uint64_t inter_fpga_barrier_bits = 0;

  Cycle simulated_cycles = 0;
  double f_clk = 0.0;
  double wall_equivalent_seconds = 0.0;
  double teps = 0.0;
  double cpe_effective = 0.0;
  std::uint64_t pe_active_cycles = 0;
  std::uint64_t scatter_reset_cycles = 0;
  std::uint64_t hazard_stall_cycles = 0;
  std::uint64_t max_update_queue_occupancy = 0;
  std::uint64_t separation_violations = 0;

  std::vector<Superstep> termination_superstep_by_pe;
  std::vector<Cycle> termination_cycle_by_pe;
  std::vector<SuperstepStats> per_superstep;
  std::uint64_t state_digest = 0;
};

/// messages / (cycles / f_clk); 0 when nothing was traversed.
double compute_teps(std::uint64_t messages, Cycle cycles, double f_clk);

template <VertexKernel K>
struct SimResult {
  RunReport report;
  std::vector<typename K::State> states;
};

/// Runs the kernel to distributed termination. The delivery mode comes from
/// the config: broadcast_updates scatters at the receiver over per-PE edge
/// sublists, unicast_messages scatters at the sender and routes each message.
template <VertexKernel K>
SimResult<K> simulate(const Graph& g, const PlacementMap& placement, const K& kernel, const SimConfig& config);

/// The unicast baseline: same as simulate with delivery_mode forced.
template <VertexKernel K>
SimResult<K> run_baseline_unicast(const Graph& g, const PlacementMap& placement, const K& kernel,
                                  SimConfig config) {
  config.delivery_mode = DeliveryMode::unicast_messages;
  return simulate(g, placement, kernel, config);
}

/// Messages PE p generates from one received update: one per entry of
/// sublist(p, sender), scattered with the sender's full-graph outdegree.
template <VertexKernel K>
std::vector<Message<typename K::MessagePayload>> scatter_expand(const K& kernel,
                                                                const Update<typename K::UpdatePayload>& upd,
                                                                const PeEdgeSublists& sublists, PeId pe,
                                                                const Graph& g) {
  std::vector<Message<typename K::MessagePayload>> out;
  auto sub = sublists.sublist(pe, upd.sender);
  auto wts = sublists.weights(pe, upd.sender);
  out.reserve(sub.size());
  for (std::size_t i = 0; i < sub.size(); ++i) {
    std::optional<double> w;
    if (!wts.empty()) w = wts[i];
    out.push_back(kernel.scatter(upd, sub[i], g.outdegree(upd.sender), w));
  }
  return out;
}

template <VertexKernel K>
std::uint64_t state_digest(const K& kernel, const std::vector<typename K::State>& states) {
  StateHasher h;
  for (const auto& s : states) kernel.hash_state(s, h);
  return h.value();
}

}  // namespace gravfm

#include "gravfm/engine_impl.hpp"

namespace gravfm {
extern template SimResult<WccKernel> simulate(const Graph&, const PlacementMap&, const WccKernel&, const SimConfig&);
extern template SimResult<BfsKernel> simulate(const Graph&, const PlacementMap&, const BfsKernel&, const SimConfig&);
extern template SimResult<PageRankKernel> simulate(const Graph&, const PlacementMap&, const PageRankKernel&,
                                                   const SimConfig&);
}  // namespace gravfm
