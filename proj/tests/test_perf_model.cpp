#include <doctest.h>

#include <cmath>

#include "gravfm/error.hpp"
#include "gravfm/perf_model.hpp"
#include "gravfm/rng.hpp"

using namespace gravfm;

namespace {

PlatformParams platform() {
  PlatformParams p;
  p.f_clk = 187.5e6;
  p.cpe = 1.05;
  p.bw_if = 1.00479e11;
  p.bw_network = 2e11;
  p.bw_mem = 1e9;
  p.m_board = 4.0 * 8 * (1ULL << 30);
  p.m_memword = 128;
  p.n_pe_max = 9;
  return p;
}

AlgorithmParams algorithm(double m_update = 128, double m_message = 128) {
  AlgorithmParams a;
  a.m_vertex = 33;
  a.m_update = m_update;
  a.m_message = m_message;
  a.m_edge = 32;
  return a;
}

DatasetParams dataset(double degree) { return {1 << 20, degree * (1 << 20)}; }

}  // namespace

TEST_CASE("PE limit") {
  PlatformParams p = platform();
  p.f_clk = 1e8;
  p.cpe = 1;
  CHECK(limit_pe(p, 1, 1) == 1e8);
  CHECK(limit_pe(platform(), 4, 9) == doctest::Approx(6.4286e9).epsilon(1e-4));
  CHECK(limit_pe(platform(), 8, 9) == 2 * limit_pe(platform(), 4, 9));
}

TEST_CASE("memory limit") {
  PlatformParams p = platform();
  const auto a = algorithm();
  CHECK(limit_mem(p, a, dataset(32), 1, 1) == 3.125e7);

  // |V|/|E| * n_pe = 1: every edge costs a whole word.
  const DatasetParams d{1000, 36000};
  CHECK(limit_mem(p, a, d, 4, 9, true) == 4 * p.bw_mem / p.m_memword);
  CHECK(limit_mem(p, a, DatasetParams{1000, 8000}, 4, 9, true) == 4 * p.bw_mem / p.m_memword);
  CHECK(limit_mem(p, a, d, 4, 1, true) < limit_mem(p, a, d, 4, 1));
  CHECK(limit_mem(p, a, d, 4, 1, true) > limit_mem(p, a, d, 4, 9, true));

  p.m_memword = 16;
  CHECK_THROWS_AS(limit_mem(p, a, d, 4, 9, true), InvalidArgument);
}

TEST_CASE("network interface limit") {
  const auto p = platform();
  const auto a = algorithm();
  CHECK(limit_if(p, a, dataset(32), 4) == doctest::Approx(1.675e10).epsilon(1e-3));
  CHECK(limit_if(p, a, dataset(32), 2) / limit_if(p, a, dataset(32), 4) == doctest::Approx(1.5));
  CHECK(limit_if(p, a, dataset(64), 4) == doctest::Approx(2 * limit_if(p, a, dataset(32), 4)));
  CHECK_THROWS_AS(limit_if(p, a, dataset(32), 1), InvalidArgument);
}

TEST_CASE("network limit") {
  const auto p = platform();
  const auto a = algorithm();
  CHECK(limit_net(p, a, dataset(32), 4) == doctest::Approx(1.667e10).epsilon(1e-3));
  CHECK(limit_net(p, a, dataset(32), 2) == doctest::Approx(5e10));
  for (std::size_t n = 2; n < 16; ++n) CHECK(limit_net(p, a, dataset(32), n + 1) < limit_net(p, a, dataset(32), n));
  CHECK_THROWS_AS(limit_net(p, a, dataset(32), 1), InvalidArgument);
}

TEST_CASE("unicast baseline and speedup") {
  const auto p = platform();
  const auto a = algorithm();
  PlatformParams exact = p;
  exact.bw_if = 11.7 * 8 * double(1ULL << 30);
  CHECK(baseline_limits_unicast(exact, a, 4).l_if == doctest::Approx(2.0937e9).epsilon(1e-4));
  CHECK(baseline_limits_unicast(p, a, 4).l_if == doctest::Approx(2.0937e9).epsilon(5e-4));
  const auto two = baseline_limits_unicast(p, a, 2);
  CHECK(two.l_if == doctest::Approx(p.bw_if / 256 * 4));
  CHECK(speedup_vs_unicast(a, dataset(32), 4) == 8);
  CHECK(speedup_vs_unicast(a, dataset(4), 4) == 1);

  SplitMix64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const auto ai = algorithm(8 + 200 * rng.unit(), 8 + 200 * rng.unit());
    const auto di = dataset(1 + 100 * rng.unit());
    const std::size_t n = 2 + rng.below(30);
    const double ratio = limit_if(p, ai, di, n) / baseline_limits_unicast(p, ai, n).l_if;
    CHECK(ratio == doctest::Approx(speedup_vs_unicast(ai, di, n)).epsilon(1e-12));
  }
}

TEST_CASE("minimum FPGA count") {
  PlatformParams p = platform();
  AlgorithmParams a = algorithm();
  a.m_vertex = 64;
  CHECK(min_fpgas(p, a, DatasetParams{double(1ULL << 30), 1e9}) == 2);
  CHECK(min_fpgas(p, a, DatasetParams{100, 1000}) == 1);
  a.m_vertex = 128;
  CHECK(min_fpgas(p, a, DatasetParams{double(1ULL << 30), 1e9}) == 4);
}

TEST_CASE("predict") {
  PlatformParams p = platform();
  p.bw_mem = 5.8e11 * 32 / 4;
  const auto b = predict(p, algorithm(), dataset(32), 4, 9);
  CHECK(b.t_sys == b.l_pe);
  CHECK(b.binding == std::vector<Limit>{Limit::pe});
  CHECK(b.t_sys <= b.l_mem);
  CHECK(b.t_sys <= *b.l_if);
  CHECK(b.t_sys <= *b.l_net);

  const auto one = predict(p, algorithm(), dataset(32), 1, 9);
  CHECK_FALSE(one.l_if.has_value());
  CHECK_FALSE(one.l_net.has_value());
  CHECK(one.t_sys == std::min(one.l_pe, one.l_mem));

  PlatformParams tie = p;
  tie.f_clk = 1;
  tie.cpe = 1;
  tie.bw_mem = 32;
  const auto t = predict(tie, algorithm(), dataset(32), 1, 1);
  CHECK(t.binding == std::vector<Limit>{Limit::pe, Limit::mem});
}

TEST_CASE("optimizer on the synthetic platform") {
  PlatformParams p;
  p.f_clk = 1e8;
  p.cpe = 1;
  p.n_pe_max = 4;
  p.bw_if = 2e10;
  p.bw_mem = 1e30;
  p.bw_network = 1e30;
  p.m_board = 1e30;
  p.m_memword = 64;
  AlgorithmParams a = algorithm(100, 100);
  const DatasetParams d{1000, 10000};
  const auto c = optimize_system(p, a, d, 1, 16);
  CHECK(c.n_fpga == 4);
  CHECK(c.n_pe_per_fpga == 4);
  CHECK(c.t_sys == doctest::Approx(1.3333e9).epsilon(1e-4));

  // Network-bound everywhere: the smallest multi-FPGA count wins over n = 1
  // only if it is faster; here n = 1 is PE-bound at 4e8.
  p.bw_if = 1;
  p.bw_network = 1;
  CHECK(optimize_system(p, a, d, 1, 16).n_fpga == 1);
  CHECK(optimize_system(p, a, d, 3, 16).n_fpga == 3);

  // PE-bound everywhere: the largest count wins.
  p.bw_if = 1e30;
  p.bw_network = 1e30;
  CHECK(optimize_system(p, a, d, 1, 16).n_fpga == 16);

  p.m_board = 1000;
  CHECK_THROWS_AS(optimize_system(p, a, d, 1, 16), InvalidArgument);
}

TEST_CASE("optimizer lowers the PE count when the network binds") {
  PlatformParams p;
  p.f_clk = 1e8;
  p.cpe = 1;
  p.n_pe_max = 16;
  p.n_pe_min = 2;
  p.bw_if = 2e10;
  p.bw_mem = 1e30;
  p.bw_network = 1e30;
  p.m_board = 1e30;
  p.m_memword = 64;
  const auto c = optimize_system(p, algorithm(100, 100), DatasetParams{1000, 2000}, 2, 2);
  // l_if = 2e10/200 * 2 * 2 = 4e8 -> 2 PEs per FPGA suffice.
  CHECK(c.t_sys == doctest::Approx(4e8));
  CHECK(c.n_pe_per_fpga == 2);
}

TEST_CASE("limits are monotone in the FPGA count") {
  const auto p = platform();
  const auto a = algorithm();
  const auto d = dataset(16);
  for (std::size_t n = 1; n < 32; ++n) {
    CHECK(limit_pe(p, n + 1, 9) >= limit_pe(p, n, 9));
    CHECK(limit_mem(p, a, d, n + 1, 9) >= limit_mem(p, a, d, n, 9));
    CHECK(limit_mem(p, a, d, n + 1, 9, true) >= limit_mem(p, a, d, n, 9, true));
    if (n >= 2) {
      CHECK(limit_if(p, a, d, n + 1) <= limit_if(p, a, d, n));
      CHECK(limit_net(p, a, d, n + 1) <= limit_net(p, a, d, n));
    }
  }
}

TEST_CASE("parameter validation") {
  PlatformParams p = platform();
  p.n_pe_min = 10;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = platform();
  p.bw_if = 0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  AlgorithmParams a;
  CHECK_THROWS_AS(a.validate(), InvalidArgument);
  CHECK_THROWS_AS(DatasetParams({0, 1}).validate(), InvalidArgument);
}
