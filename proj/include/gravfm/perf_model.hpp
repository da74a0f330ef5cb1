#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gravfm/kernels.hpp"

namespace gravfm {

/// Platform description. Bandwidths are bits/s, capacities bits.
struct PlatformParams {
  double f_clk = 0;       // Hz
  double cpe = 1;         // cycles per traversed edge of one PE
  double bw_if = 0;       // total per-FPGA network interface bandwidth (send + receive)
  double bw_network = 0;  // total bandwidth of the inter-FPGA network
  double bw_mem = 0;      // per-FPGA memory interface bandwidth
  double m_board = 0;     // memory capacity per FPGA
  double m_memword = 0;   // bits per memory access
  std::size_t n_pe_max = 1;
  std::size_t n_pe_min = 1;

  void validate() const;
};

struct AlgorithmParams {
  double m_vertex = 0;
  double m_update = 0;
  double m_message = 0;
  double m_edge = 0;
  // Messages per traversed edge. Reserved: carried for completeness, always 1
  // in the limits below.
  double p_msg_per_te = 1;

  static AlgorithmParams from_kernel(const KernelSpec& spec);
  void validate() const;
};

struct DatasetParams {
  double num_vertices = 1;
  double num_edges = 0;

  double avg_degree() const { return num_edges / num_vertices; }
  void validate() const;
};

enum class Limit { pe, mem, interface, network };
std::string to_string(Limit l);

struct LimitBreakdown {
  std::size_t n_fpga = 1;
  std::size_t n_pe_per_fpga = 1;
  double l_pe = 0;
  double l_mem = 0;
  std::optional<double> l_if;   // undefined for a single FPGA
  std::optional<double> l_net;  // undefined for a single FPGA
  double t_sys = 0;
  std::vector<Limit> binding;   // every limit equal to t_sys
};

/// n_fpga * n_pe_per_fpga * f_clk / cpe
double limit_pe(const PlatformParams& p, std::size_t n_fpga, std::size_t n_pe_per_fpga);

/// n_fpga * bw_mem / m_edge, or with granularity_aware the worst-case
/// partially-used last word of every per-PE edge list:
///   n_fpga * bw_mem / (m_edge + min(1, |V|/|E| * n_pe) * (m_memword - m_edge))
/// where n_pe = n_fpga * n_pe_per_fpga is the number of edge lists per vertex.
double limit_mem(const PlatformParams& p, const AlgorithmParams& a, const DatasetParams& d, std::size_t n_fpga,
                 std::size_t n_pe_per_fpga, bool granularity_aware = false);

/// bw_if / (2 m_update) * n/(n-1) * |E|/|V|; requires n_fpga >= 2.
double limit_if(const PlatformParams& p, const AlgorithmParams& a, const DatasetParams& d, std::size_t n_fpga);

/// bw_network / ((n-1) m_update) * |E|/|V|; requires n_fpga >= 2.
double limit_net(const PlatformParams& p, const AlgorithmParams& a, const DatasetParams& d, std::size_t n_fpga);

struct UnicastLimits {
  double l_if = 0;
  double l_net = 0;
};

/// Network limits of the message-unicast design:
///   l_if  = bw_if / (2 m_message) * n^2/(n-1)
///   l_net = bw_network * n / ((n-1) m_message)
UnicastLimits baseline_limits_unicast(const PlatformParams& p, const AlgorithmParams& a, std::size_t n_fpga);

/// limit_if / unicast l_if = (|E|/|V|) / n_fpga * m_message / m_update.
/// The two sizes are equal for the built-in kernels. With update filtering
/// enabled the effective gain never drops below 1; this returns the
/// unfiltered ratio.
double speedup_vs_unicast(const AlgorithmParams& a, const DatasetParams& d, std::size_t n_fpga);

/// ceil(|V| m_vertex / m_board), at least 1.
std::size_t min_fpgas(const PlatformParams& p, const AlgorithmParams& a, const DatasetParams& d);

LimitBreakdown predict(const PlatformParams& p, const AlgorithmParams& a, const DatasetParams& d,
                       std::size_t n_fpga, std::size_t n_pe_per_fpga, bool granularity_aware = false);

struct SystemChoice {
  std::size_t n_fpga = 1;
  std::size_t n_pe_per_fpga = 1;
  double t_sys = 0;
  LimitBreakdown breakdown;
};

/// Picks n_fpga in [n_fpga_lo, n_fpga_hi] maximizing throughput with n_pe_max
/// PEs per FPGA, then lowers the PE count to the smallest value that keeps
/// that throughput. Ties prefer fewer FPGAs. Throws InvalidArgument if no
/// FPGA count in the range can hold the dataset.
SystemChoice optimize_system(const PlatformParams& p, const AlgorithmParams& a, const DatasetParams& d,
                             std::size_t n_fpga_lo, std::size_t n_fpga_hi, bool granularity_aware = false);

}  // namespace gravfm
