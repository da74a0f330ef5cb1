#include "gravfm/engine.hpp"

namespace gravfm {

std::string to_string(DeliveryMode m) {
  return m == DeliveryMode::broadcast_updates ? "broadcast" : "unicast";
}

DeliveryMode parse_delivery_mode(std::string_view s) {
  if (s == "broadcast" || s == "broadcast_updates") return DeliveryMode::broadcast_updates;
  if (s == "unicast" || s == "unicast_messages") return DeliveryMode::unicast_messages;
  throw InvalidArgument("unknown delivery mode '" + std::string(s) + "' (expected broadcast or unicast)");
}

void SimConfig::validate() const {
  if (n_fpga < 1 || n_pe_per_fpga < 1) throw InvalidArgument("need at least one FPGA and one PE per FPGA");
  if (!(f_clk > 0)) throw InvalidArgument("f_clk must be positive");
  if (channels < 2) throw InvalidArgument("at least two channels are required");
  if (!(link_bandwidth_bits_per_cycle > 0)) throw InvalidArgument("link bandwidth must be positive");
  if (scatter_max_outstanding < 1) throw InvalidArgument("scatter_max_outstanding must be >= 1");
  if (vertex_id_bits < 1 || vertex_id_bits > 32) throw InvalidArgument("vertex_id_bits must be in [1, 32]");
  if (count_bits < 1) throw InvalidArgument("count_bits must be >= 1");
  if (max_supersteps < 1) throw InvalidArgument("max_supersteps must be >= 1");
}

double compute_teps(std::uint64_t messages, Cycle cycles, double f_clk) {
  if (messages == 0 || cycles == 0) return 0.0;
  return static_cast<double>(messages) / (static_cast<double>(cycles) / f_clk);
}

template SimResult<WccKernel> simulate(const Graph&, const PlacementMap&, const WccKernel&, const SimConfig&);
template SimResult<BfsKernel> simulate(const Graph&, const PlacementMap&, const BfsKernel&, const SimConfig&);
template SimResult<PageRankKernel> simulate(const Graph&, const PlacementMap&, const PageRankKernel&,
                                            const SimConfig&);

}  // namespace gravfm
