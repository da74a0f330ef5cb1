#include "gravfm/report.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace gravfm {

namespace {

using ordered = nlohmann::ordered_json;

ordered limits_object(const LimitBreakdown& b) {
  ordered j;
  j["n_fpga"] = b.n_fpga;
  j["n_pe_per_fpga"] = b.n_pe_per_fpga;
  j["l_pe"] = b.l_pe;
  j["l_mem"] = b.l_mem;
  j["l_if"] = b.l_if ? ordered(*b.l_if) : ordered(nullptr);
  j["l_net"] = b.l_net ? ordered(*b.l_net) : ordered(nullptr);
  j["t_sys"] = b.t_sys;
  ordered binding = ordered::array();
  for (Limit l : b.binding) binding.push_back(to_string(l));
  j["binding"] = std::move(binding);
  return j;
}

}  // namespace

std::string to_json(const RunReport& r, int indent) {
  ordered j;
  j["schema_version"] = RunReport::kSchemaVersion;
  j["kernel"] = r.kernel;
  j["delivery_mode"] = to_string(r.delivery_mode);
  j["filter_enabled"] = r.filter_enabled;
  j["n_fpga"] = r.n_fpga;
  j["n_pe_per_fpga"] = r.n_pe_per_fpga;
  j["num_vertices"] = r.num_vertices;
  j["num_edges"] = r.num_edges;
  j["rng_seed"] = r.rng_seed;
  j["supersteps"] = r.supersteps;
  j["apply_phases"] = r.apply_phases;
  j["messages_generated"] = r.messages_generated;
  j["updates_emitted"] = r.updates_emitted;
  j["inter_fpga_tokens"] = r.inter_fpga_tokens;
  j["inter_fpga_payload_bits"] = r.inter_fpga_payload_bits;
  j["inter_fpga_wire_bits"] = r.inter_fpga_wire_bits;
  j["inter_fpga_barrier_tokens"] = r.inter_fpga_barrier_tokens;
  j["inter_fpga_barrier_bits"] = r.inter_fpga_barrier_bits;
  j["simulated_cycles"] = r.simulated_cycles;
  j["f_clk"] = r.f_clk;
  j["wall_equivalent_seconds"] = r.wall_equivalent_seconds;
  j["teps"] = r.teps;
  j["cpe_effective"] = r.cpe_effective;
  j["pe_active_cycles"] = r.pe_active_cycles;
  j["scatter_reset_cycles"] = r.scatter_reset_cycles;
  j["hazard_stall_cycles"] = r.hazard_stall_cycles;
  j["max_update_queue_occupancy"] = r.max_update_queue_occupancy;
  j["separation_violations"] = r.separation_violations;
  j["termination_superstep_by_pe"] = r.termination_superstep_by_pe;
  j["termination_cycle_by_pe"] = r.termination_cycle_by_pe;
  std::ostringstream digest;
  digest << std::hex << std::setw(16) << std::setfill('0') << r.state_digest;
  j["state_digest"] = digest.str();
  return j.dump(indent);
}

std::string to_json(const LimitBreakdown& b, int indent) { return limits_object(b).dump(indent); }

std::string to_json(const SystemChoice& c, int indent) {
  ordered j;
  j["n_fpga"] = c.n_fpga;
  j["n_pe_per_fpga"] = c.n_pe_per_fpga;
  j["t_sys"] = c.t_sys;
  j["breakdown"] = limits_object(c.breakdown);
  return j.dump(indent);
}

std::string to_json(const DegreeStats& s, int indent) {
  ordered j;
  j["num_vertices"] = s.num_vertices;
  j["num_edges"] = s.num_edges;
  j["avg_degree"] = s.avg_degree;
  j["max_outdegree"] = s.max_outdegree;
  j["min_outdegree"] = s.min_outdegree;
  return j.dump(indent);
}

void write_superstep_csv(std::ostream& out, const RunReport& r) {
  out << "superstep,updates,messages,inter_fpga_tokens,inter_fpga_payload_bits,end_cycle,cycles\n";
  for (const SuperstepStats& s : r.per_superstep) {
    out << s.superstep << ',' << s.updates << ',' << s.messages << ',' << s.inter_fpga_tokens << ','
        << s.inter_fpga_payload_bits << ',' << s.end_cycle << ',' << s.cycles << '\n';
  }
}

void write_limits_table(std::ostream& out, const LimitBreakdown& b) {
  auto row = [&](const char* name, std::optional<double> v) {
    out << std::left << std::setw(8) << name;
    if (v) {
      out << std::scientific << std::setprecision(4) << *v;
    } else {
      out << "n/a";
    }
    out << '\n';
  };
  out << "n_fpga=" << b.n_fpga << " n_pe_per_fpga=" << b.n_pe_per_fpga << '\n';
  row("l_pe", b.l_pe);
  row("l_mem", b.l_mem);
  row("l_if", b.l_if);
  row("l_net", b.l_net);
  row("t_sys", b.t_sys);
  out << "binding";
  for (Limit l : b.binding) out << ' ' << to_string(l);
  out << '\n';
  out << std::defaultfloat;
}

}  // namespace gravfm
