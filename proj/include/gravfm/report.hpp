#pragma once

#include <iosfwd>
#include <string>

#include "gravfm/engine.hpp"
#include "gravfm/graph.hpp"
#include "gravfm/perf_model.hpp"

namespace gravfm {

/// Deterministic JSON: fixed key order, shortest round-trip doubles.
std::string to_json(const RunReport& r, int indent = 2);
std::string to_json(const LimitBreakdown& b, int indent = 2);
std::string to_json(const SystemChoice& c, int indent = 2);
std::string to_json(const DegreeStats& s, int indent = 2);

/// superstep,updates,messages,inter_fpga_tokens,inter_fpga_payload_bits,end_cycle,cycles
void write_superstep_csv(std::ostream& out, const RunReport& r);

/// Human-readable limit table; undefined network limits print as "n/a".
void write_limits_table(std::ostream& out, const LimitBreakdown& b);

}  // namespace gravfm
