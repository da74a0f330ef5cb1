#include "gravfm/perf_model.hpp"

#include <algorithm>
#include <cmath>

#include "gravfm/error.hpp"

namespace gravfm {

void PlatformParams::validate() const {
  if (!(f_clk > 0) || !(cpe > 0) || !(bw_if > 0) || !(bw_network > 0) || !(bw_mem > 0) || !(m_board > 0) ||
      !(m_memword > 0)) {
    throw InvalidArgument("platform parameters must all be positive");
  }
  if (n_pe_min < 1 || n_pe_min > n_pe_max) throw InvalidArgument("need 1 <= n_pe_min <= n_pe_max");
}

AlgorithmParams AlgorithmParams::from_kernel(const KernelSpec& spec) {
  AlgorithmParams a;
  a.m_vertex = spec.m_vertex;
  a.m_update = spec.m_update;
  a.m_message = spec.m_message;
  a.m_edge = spec.m_edge;
  return a;
}

void AlgorithmParams::validate() const {
  if (!(m_vertex > 0) || !(m_update > 0) || !(m_message > 0) || !(m_edge > 0)) {
    throw InvalidArgument("algorithm sizes must be positive");
  }
}

void DatasetParams::validate() const {
  if (!(num_vertices >= 1)) throw InvalidArgument("dataset needs at least one vertex");
  if (!(num_edges >= 0)) throw InvalidArgument("edge count must be non-negative");
}

std::string to_string(Limit l) {
  switch (l) {
    case Limit::pe: return "pe";
    case Limit::mem: return "mem";
    case Limit::interface: return "if";
    case Limit::network: return "net";
  }
  return "?";
}

namespace {
void require_multi_fpga(std::size_t n_fpga) {
  if (n_fpga < 2) throw InvalidArgument("network limits are undefined for a single FPGA");
}
}  // namespace

double limit_pe(const PlatformParams& p, std::size_t n_fpga, std::size_t n_pe_per_fpga) {
  return static_cast<double>(n_fpga) * static_cast<double>(n_pe_per_fpga) * p.f_clk / p.cpe;
}

double limit_mem(const PlatformParams& p, const AlgorithmParams& a, const DatasetParams& d, std::size_t n_fpga,
                 std::size_t n_pe_per_fpga, bool granularity_aware) {
  const double n = static_cast<double>(n_fpga);
  if (!granularity_aware) return n * p.bw_mem / a.m_edge;
  if (p.m_memword < a.m_edge) throw InvalidArgument("memory word smaller than an edge");
  const double n_pe = n * static_cast<double>(n_pe_per_fpga);
  const double spread = d.num_edges > 0 ? std::min(1.0, d.num_vertices / d.num_edges * n_pe) : 1.0;
  return n * p.bw_mem / (a.m_edge + spread * (p.m_memword - a.m_edge));
}

double limit_if(const PlatformParams& p, const AlgorithmParams& a, const DatasetParams& d, std::size_t n_fpga) {
  require_multi_fpga(n_fpga);
  const double n = static_cast<double>(n_fpga);
  return p.bw_if / (2.0 * a.m_update) * (n / (n - 1.0)) * d.avg_degree();
}

double limit_net(const PlatformParams& p, const AlgorithmParams& a, const DatasetParams& d, std::size_t n_fpga) {
  require_multi_fpga(n_fpga);
  const double n = static_cast<double>(n_fpga);
  return p.bw_network / ((n - 1.0) * a.m_update) * d.avg_degree();
}

UnicastLimits baseline_limits_unicast(const PlatformParams& p, const AlgorithmParams& a, std::size_t n_fpga) {
  require_multi_fpga(n_fpga);
  const double n = static_cast<double>(n_fpga);
  return {p.bw_if / (2.0 * a.m_message) * (n * n / (n - 1.0)), p.bw_network * n / ((n - 1.0) * a.m_message)};
}

double speedup_vs_unicast(const AlgorithmParams& a, const DatasetParams& d, std::size_t n_fpga) {
  return d.avg_degree() / static_cast<double>(n_fpga) * (a.m_message / a.m_update);
}

std::size_t min_fpgas(const PlatformParams& p, const AlgorithmParams& a, const DatasetParams& d) {
  const double need = d.num_vertices * a.m_vertex / p.m_board;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(need)));
}

LimitBreakdown predict(const PlatformParams& p, const AlgorithmParams& a, const DatasetParams& d,
                       std::size_t n_fpga, std::size_t n_pe_per_fpga, bool granularity_aware) {
  if (n_fpga < 1 || n_pe_per_fpga < 1) throw InvalidArgument("need at least one FPGA and one PE");
  LimitBreakdown b;
  b.n_fpga = n_fpga;
  b.n_pe_per_fpga = n_pe_per_fpga;
  b.l_pe = limit_pe(p, n_fpga, n_pe_per_fpga);
  b.l_mem = limit_mem(p, a, d, n_fpga, n_pe_per_fpga, granularity_aware);
  b.t_sys = std::min(b.l_pe, b.l_mem);
  if (n_fpga >= 2) {
    b.l_if = limit_if(p, a, d, n_fpga);
    b.l_net = limit_net(p, a, d, n_fpga);
    b.t_sys = std::min({b.t_sys, *b.l_if, *b.l_net});
  }
  if (b.l_pe == b.t_sys) b.binding.push_back(Limit::pe);
  if (b.l_mem == b.t_sys) b.binding.push_back(Limit::mem);
  if (b.l_if && *b.l_if == b.t_sys) b.binding.push_back(Limit::interface);
  if (b.l_net && *b.l_net == b.t_sys) b.binding.push_back(Limit::network);
  return b;
}

SystemChoice optimize_system(const PlatformParams& p, const AlgorithmParams& a, const DatasetParams& d,
                             std::size_t n_fpga_lo, std::size_t n_fpga_hi, bool granularity_aware) {
  p.validate();
  a.validate();
  d.validate();
  const std::size_t lo = std::max({n_fpga_lo, std::size_t{1}, min_fpgas(p, a, d)});
  const std::size_t hi = n_fpga_hi;
  if (lo > hi) throw InvalidArgument("no FPGA count in the domain can hold the dataset");

  auto throughput = [&](std::size_t n) { return predict(p, a, d, n, p.n_pe_max, granularity_aware).t_sys; };

  // Compute-side limits grow with n_fpga and network limits shrink, so on
  // n_fpga >= 2 the optimum sits where they cross. The single-FPGA system has
  // no network limits and is a separate candidate.
  std::vector<std::size_t> candidates;
  if (lo == 1) candidates.push_back(1);
  const std::size_t multi_lo = std::max<std::size_t>(lo, 2);
  if (multi_lo <= hi) {
    std::optional<std::size_t> crossing;
    for (std::size_t n = multi_lo; n <= hi; ++n) {
      const double compute = std::min(limit_pe(p, n, p.n_pe_max), limit_mem(p, a, d, n, p.n_pe_max, granularity_aware));
      const double network = std::min(limit_if(p, a, d, n), limit_net(p, a, d, n));
      if (compute >= network) {
        crossing = n;
        break;
      }
    }
    if (!crossing) {
      candidates.push_back(hi);
    } else {
      if (*crossing > multi_lo) candidates.push_back(*crossing - 1);
      candidates.push_back(*crossing);
    }
  }

  std::size_t best_n = candidates.front();
  double best_t = throughput(best_n);
  for (std::size_t n : candidates) {
    const double t = throughput(n);
    if (t > best_t || (t == best_t && n < best_n)) {
      best_t = t;
      best_n = n;
    }
  }

  // Fewest PEs that still sustain best_t: n_pe >= t_sys * cpe / (n_fpga * f_clk).
  const double bound = best_t * p.cpe / (static_cast<double>(best_n) * p.f_clk);
  std::size_t n_pe = static_cast<std::size_t>(std::max(0.0, std::floor(bound) - 1.0));
  n_pe = std::clamp(n_pe, p.n_pe_min, p.n_pe_max);
  while (n_pe < p.n_pe_max && predict(p, a, d, best_n, n_pe, granularity_aware).t_sys < best_t) ++n_pe;

  SystemChoice c;
  c.n_fpga = best_n;
  c.n_pe_per_fpga = n_pe;
  c.breakdown = predict(p, a, d, best_n, n_pe, granularity_aware);
  c.t_sys = c.breakdown.t_sys;
  return c;
}

}  // namespace gravfm
