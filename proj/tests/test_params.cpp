#include <doctest.h>

#include <sstream>

#include "gravfm/error.hpp"
#include "gravfm/params.hpp"
#include "gravfm/report.hpp"

using namespace gravfm;

TEST_CASE("quantities and units") {
  CHECK(parse_quantity("187.5 MHz", Quantity::frequency) == 187.5e6);
  CHECK(parse_quantity("2GHz", Quantity::frequency) == 2e9);
  CHECK(parse_quantity("11.7 GiB/s", Quantity::bandwidth) == 11.7 * 8 * 1024.0 * 1024 * 1024);
  CHECK(parse_quantity("1 GB/s", Quantity::bandwidth) == 8e9);
  CHECK(parse_quantity("100 Gbit/s", Quantity::bandwidth) == 100e9);
  CHECK(parse_quantity("4 GiB", Quantity::size) == 4.0 * 8 * 1024 * 1024 * 1024);
  CHECK(parse_quantity("512 bit", Quantity::size) == 512);
  CHECK(parse_quantity("64 B", Quantity::size) == 512);
  CHECK(parse_quantity("1e9", Quantity::bandwidth) == 1e9);
  CHECK_THROWS_AS(parse_quantity("3 MHz", Quantity::size), InvalidArgument);
  CHECK_THROWS_AS(parse_quantity("3 furlongs", Quantity::size), InvalidArgument);
  CHECK_THROWS_AS(parse_quantity("fast", Quantity::plain), InvalidArgument);
}

TEST_CASE("key value files") {
  std::istringstream in("# platform\nf_clk = 187.5 MHz\ncpe = 1.05 # WCC\n\nn_pe_max = 9\n");
  const auto kv = KeyValues::parse(in);
  CHECK(kv.get("cpe") == "1.05");
  CHECK_FALSE(kv.has("bw_if"));
  CHECK_THROWS_AS(kv.get("bw_if"), InvalidArgument);

  std::istringstream dup("a = 1\na = 2\n");
  CHECK_THROWS_AS(KeyValues::parse(dup), FormatError);
  std::istringstream bad("a 1\n");
  CHECK_THROWS_AS(KeyValues::parse(bad), FormatError);
}

TEST_CASE("platform file round trip") {
  const PlatformParams p = reference_platform();
  std::stringstream buf;
  write_platform(buf, p);
  const PlatformParams back = platform_from(KeyValues::parse(buf));
  CHECK(back.f_clk == doctest::Approx(p.f_clk));
  CHECK(back.bw_if == doctest::Approx(p.bw_if));
  CHECK(back.n_pe_max == p.n_pe_max);

  std::istringstream missing("f_clk = 1 GHz\n");
  CHECK_THROWS_AS(platform_from(KeyValues::parse(missing)), InvalidArgument);
}

TEST_CASE("simulator config file") {
  std::istringstream in("n_fpga = 4\nn_pe_per_fpga = 9\ndelivery_mode = unicast\nfilter_enabled = false\n"
                        "f_clk = 200 MHz\nlink_latency_cycles = 90\n");
  SimConfig cfg;
  apply_sim_config(KeyValues::parse(in), cfg);
  CHECK(cfg.n_pe() == 36);
  CHECK(cfg.delivery_mode == DeliveryMode::unicast_messages);
  CHECK_FALSE(cfg.filter_enabled);
  CHECK(cfg.f_clk == 200e6);
  CHECK(cfg.link_latency_cycles == 90);

  std::istringstream bad("channels = 1\n");
  SimConfig c2;
  CHECK_THROWS_AS(apply_sim_config(KeyValues::parse(bad), c2), InvalidArgument);
}

TEST_CASE("report serialization") {
  RunReport r;
  r.kernel = "wcc";
  r.per_superstep.push_back({0, 2, 3, 0, 0, 17, 17});
  r.state_digest = 0xabc;
  const std::string j = to_json(r);
  CHECK(j.find("\"schema_version\": 1") != std::string::npos);
  CHECK(j.find("\"state_digest\": \"0000000000000abc\"") != std::string::npos);
  CHECK(to_json(r) == j);

  std::ostringstream csv;
  write_superstep_csv(csv, r);
  CHECK(csv.str() ==
        "superstep,updates,messages,inter_fpga_tokens,inter_fpga_payload_bits,end_cycle,cycles\n0,2,3,0,0,17,17\n");

  LimitBreakdown b;
  b.l_pe = 1;
  b.l_mem = 2;
  b.t_sys = 1;
  b.binding = {Limit::pe};
  CHECK(to_json(b).find("\"l_if\": null") != std::string::npos);
  std::ostringstream table;
  write_limits_table(table, b);
  CHECK(table.str().find("n/a") != std::string::npos);
}
