#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

#include "gravfm/engine.hpp"
#include "gravfm/perf_model.hpp"

namespace gravfm {

/// Dimension of a quantity; values are converted to Hz, bits/s or bits.
enum class Quantity { plain, frequency, bandwidth, size };

/// Parses "<number> [unit]". Bandwidth units: bit/s kbit/s Mbit/s Gbit/s
/// (also b/s Gb/s ...), B/s kB/s MB/s GB/s, KiB/s MiB/s GiB/s. Size units:
/// bit(s) b, B byte(s), kB MB GB, KiB MiB GiB. A bare number is taken in
/// base units. Throws InvalidArgument on a unit of the wrong dimension.
double parse_quantity(std::string_view text, Quantity kind);

/// "key = value" lines, '#' comments. Duplicate keys are an error.
class KeyValues {
 public:
  static KeyValues parse(std::istream& in);
  static KeyValues parse_file(const std::filesystem::path& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  const std::string& get(const std::string& key) const;
  void set(const std::string& key, std::string value) { entries_[key] = {std::move(value), 0}; }
  const std::map<std::string, std::pair<std::string, std::size_t>>& entries() const { return entries_; }

 private:
  std::map<std::string, std::pair<std::string, std::size_t>> entries_;  // value, line
};

/// Reads every platform key; all but n_pe_min are required.
PlatformParams platform_from(const KeyValues& kv);
/// Overwrites the SimConfig fields present in kv; unknown keys are ignored.
void apply_sim_config(const KeyValues& kv, SimConfig& cfg);

/// The four-board HMC platform: 187.5 MHz, cpe 1.05, 9 PEs per FPGA, 11.7 GiB/s
/// interface, 8.1 GiB/s memory in 128-bit words, 4 GiB per board. The network
/// figure is a lower bound.
PlatformParams reference_platform();

void write_platform(std::ostream& out, const PlatformParams& p);

}  // namespace gravfm
