#include "gravfm/params.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "gravfm/error.hpp"

namespace gravfm {

namespace {

struct Unit {
  std::string_view name;
  Quantity kind;
  double scale;
};

constexpr double kKi = 1024.0;
constexpr double kMi = kKi * kKi;
constexpr double kGi = kMi * kKi;

constexpr std::array kUnits{
    Unit{"Hz", Quantity::frequency, 1.0},       Unit{"kHz", Quantity::frequency, 1e3},
    Unit{"MHz", Quantity::frequency, 1e6},      Unit{"GHz", Quantity::frequency, 1e9},
    Unit{"bit/s", Quantity::bandwidth, 1.0},    Unit{"b/s", Quantity::bandwidth, 1.0},
    Unit{"kbit/s", Quantity::bandwidth, 1e3},   Unit{"kb/s", Quantity::bandwidth, 1e3},
    Unit{"Mbit/s", Quantity::bandwidth, 1e6},   Unit{"Mb/s", Quantity::bandwidth, 1e6},
    Unit{"Gbit/s", Quantity::bandwidth, 1e9},   Unit{"Gb/s", Quantity::bandwidth, 1e9},
    Unit{"B/s", Quantity::bandwidth, 8.0},      Unit{"kB/s", Quantity::bandwidth, 8e3},
    Unit{"MB/s", Quantity::bandwidth, 8e6},     Unit{"GB/s", Quantity::bandwidth, 8e9},
    Unit{"KiB/s", Quantity::bandwidth, 8 * kKi}, Unit{"MiB/s", Quantity::bandwidth, 8 * kMi},
    Unit{"GiB/s", Quantity::bandwidth, 8 * kGi}, Unit{"bit", Quantity::size, 1.0},
    Unit{"bits", Quantity::size, 1.0},          Unit{"b", Quantity::size, 1.0},
    Unit{"B", Quantity::size, 8.0},             Unit{"byte", Quantity::size, 8.0},
    Unit{"bytes", Quantity::size, 8.0},         Unit{"kB", Quantity::size, 8e3},
    Unit{"MB", Quantity::size, 8e6},            Unit{"GB", Quantity::size, 8e9},
    Unit{"KiB", Quantity::size, 8 * kKi},       Unit{"MiB", Quantity::size, 8 * kMi},
    Unit{"GiB", Quantity::size, 8 * kGi},
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double number(const KeyValues& kv, const std::string& key, Quantity kind) {
  return parse_quantity(kv.get(key), kind);
}

std::uint64_t integer(const KeyValues& kv, const std::string& key) {
  const std::string& text = kv.get(key);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InvalidArgument(key + ": expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

bool boolean(const KeyValues& kv, const std::string& key) {
  const std::string& text = kv.get(key);
  if (text == "true" || text == "1" || text == "on") return true;
  if (text == "false" || text == "0" || text == "off") return false;
  throw InvalidArgument(key + ": expected true or false, got '" + text + "'");
}

}  // namespace

double parse_quantity(std::string_view text, Quantity kind) {
  text = trim(text);
  double value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{}) throw InvalidArgument("not a number: '" + std::string(text) + "'");
  const std::string_view unit = trim(text.substr(static_cast<std::size_t>(ptr - text.data())));
  if (unit.empty()) return value;
  for (const Unit& u : kUnits) {
    if (u.name != unit) continue;
    if (u.kind != kind) throw InvalidArgument("unit '" + std::string(unit) + "' has the wrong dimension");
    return value * u.scale;
  }
  throw InvalidArgument("unknown unit '" + std::string(unit) + "'");
}

KeyValues KeyValues::parse(std::istream& in) {
  KeyValues kv;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw FormatError("expected 'key = value'", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) throw FormatError("empty key or value", line_no);
    if (!kv.entries_.emplace(key, std::pair{value, line_no}).second) {
      throw FormatError("duplicate key '" + key + "'", line_no);
    }
  }
  return kv;
}

KeyValues KeyValues::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return parse(in);
}

const std::string& KeyValues::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw InvalidArgument("missing key '" + key + "'");
  return it->second.first;
}

PlatformParams platform_from(const KeyValues& kv) {
  PlatformParams p;
  p.f_clk = number(kv, "f_clk", Quantity::frequency);
  p.cpe = number(kv, "cpe", Quantity::plain);
  p.bw_if = number(kv, "bw_if", Quantity::bandwidth);
  p.bw_network = number(kv, "bw_network", Quantity::bandwidth);
  p.bw_mem = number(kv, "bw_mem", Quantity::bandwidth);
  p.m_board = number(kv, "m_board", Quantity::size);
  p.m_memword = number(kv, "m_memword", Quantity::size);
  p.n_pe_max = integer(kv, "n_pe_max");
  p.n_pe_min = kv.has("n_pe_min") ? integer(kv, "n_pe_min") : 1;
  p.validate();
  return p;
}

void apply_sim_config(const KeyValues& kv, SimConfig& cfg) {
  if (kv.has("n_fpga")) cfg.n_fpga = integer(kv, "n_fpga");
  if (kv.has("n_pe_per_fpga")) cfg.n_pe_per_fpga = integer(kv, "n_pe_per_fpga");
  if (kv.has("f_clk")) cfg.f_clk = number(kv, "f_clk", Quantity::frequency);
  if (kv.has("delivery_mode")) cfg.delivery_mode = parse_delivery_mode(kv.get("delivery_mode"));
  if (kv.has("filter_enabled")) cfg.filter_enabled = boolean(kv, "filter_enabled");
  if (kv.has("channels")) cfg.channels = static_cast<unsigned>(integer(kv, "channels"));
  if (kv.has("link_bandwidth_bits_per_cycle")) {
    cfg.link_bandwidth_bits_per_cycle = number(kv, "link_bandwidth_bits_per_cycle", Quantity::plain);
  }
  if (kv.has("link_latency_cycles")) cfg.link_latency_cycles = integer(kv, "link_latency_cycles");
  if (kv.has("crossbar_latency_cycles")) cfg.crossbar_latency_cycles = integer(kv, "crossbar_latency_cycles");
  if (kv.has("network_jitter_cycles")) cfg.network_jitter_cycles = integer(kv, "network_jitter_cycles");
  if (kv.has("scatter_memory_latency_cycles")) {
    cfg.scatter_memory_latency_cycles = integer(kv, "scatter_memory_latency_cycles");
  }
  if (kv.has("scatter_max_outstanding")) cfg.scatter_max_outstanding = integer(kv, "scatter_max_outstanding");
  if (kv.has("gather_hazard_depth_cycles")) {
    cfg.gather_hazard_depth_cycles = integer(kv, "gather_hazard_depth_cycles");
  }
  if (kv.has("apply_latency_cycles")) cfg.apply_latency_cycles = integer(kv, "apply_latency_cycles");
  if (kv.has("update_queue_capacity")) cfg.update_queue_capacity = integer(kv, "update_queue_capacity");
  if (kv.has("vertex_id_bits")) cfg.vertex_id_bits = static_cast<unsigned>(integer(kv, "vertex_id_bits"));
  if (kv.has("count_bits")) cfg.count_bits = static_cast<unsigned>(integer(kv, "count_bits"));
  if (kv.has("rng_seed")) cfg.rng_seed = integer(kv, "rng_seed");
  if (kv.has("max_supersteps")) cfg.max_supersteps = integer(kv, "max_supersteps");
  cfg.validate();
}

PlatformParams reference_platform() {
  PlatformParams p;
  p.f_clk = 187.5e6;
  p.cpe = 1.05;
  p.bw_if = 1.00479e11;
  p.bw_network = 23.4 * kGi * 8;  // lower bound: never observed to bind
  p.bw_mem = 8.1 * kGi * 8;
  p.m_board = 4 * kGi * 8;
  p.m_memword = 128;
  p.n_pe_max = 9;
  p.n_pe_min = 1;
  return p;
}

void write_platform(std::ostream& out, const PlatformParams& p) {
  out << "f_clk = " << p.f_clk << " Hz\n"
      << "cpe = " << p.cpe << "\n"
      << "bw_if = " << p.bw_if << " bit/s\n"
      << "bw_network = " << p.bw_network << " bit/s\n"
      << "bw_mem = " << p.bw_mem << " bit/s\n"
      << "m_board = " << p.m_board << " bit\n"
      << "m_memword = " << p.m_memword << " bit\n"
      << "n_pe_max = " << p.n_pe_max << "\n"
      << "n_pe_min = " << p.n_pe_min << "\n";
}

}  // namespace gravfm
