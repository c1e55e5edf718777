#include <cmath>
#include <vector>

#include "doctest.h"
#include "minorlab/rng.hpp"
#include "minorlab/stats.hpp"

using namespace minorlab;

TEST_CASE("identical seed and call sequence replays bit-exactly") {
  RngStream a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  RngStream c(42), d(42);
  for (int i = 0; i < 50; ++i) {
    CHECK(c.gaussian(0.0, 1.0) == d.gaussian(0.0, 1.0));
  }
}

TEST_CASE("gaussian moments over a million draws") {
  RngStream rng(1);
  RunningStats stats;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) stats.add(rng.gaussian(0.0, 1.0));
  CHECK(std::abs(stats.mean) < 0.005);  // 5 sigma / sqrt(n)
  CHECK(std::abs(stats.variance() - 1.0) < 0.01);

  RngStream rng2(2);
  RunningStats stats2;
  for (int i = 0; i < n; ++i) stats2.add(rng2.gaussian(2.0, 4.0));
  CHECK(std::abs(stats2.mean - 2.0) < 0.01);
  CHECK(std::abs(stats2.variance() - 4.0) < 0.03);
}

TEST_CASE("gaussian rejects bad variance") {
  RngStream rng(9);
  CHECK_THROWS_AS(rng.gaussian(0.0, 0.0), ArgumentError);
  CHECK_THROWS_AS(rng.gaussian(0.0, -1.0), ArgumentError);
}

TEST_CASE("split streams are decorrelated") {
  RngStream root(123);
  RngStream a = root.split(1);
  RngStream b = root.split(2);
  const int n = 100000;
  double sab = 0.0, sa = 0.0, sb = 0.0, saa = 0.0, sbb = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = a.uniform();
    const double y = b.uniform();
    sa += x;
    sb += y;
    sab += x * y;
    saa += x * x;
    sbb += y * y;
  }
  const double cov = sab / n - (sa / n) * (sb / n);
  const double rho = cov / std::sqrt((saa / n - sa / n * sa / n) * (sbb / n - sb / n * sb / n));
  CHECK(std::abs(rho) < 0.01);
  // labeled splits are reproducible
  CHECK(root.split("mc").next_u64() == root.split("mc").next_u64());
  CHECK(root.split("mc").next_u64() != root.split("other").next_u64());
}

TEST_CASE("exponential and geometric sampling match their means") {
  RngStream rng(5);
  RunningStats exp_stats;
  for (int i = 0; i < 200000; ++i) exp_stats.add(rng.exponential(2.0));
  CHECK(exp_stats.mean == doctest::Approx(0.5).epsilon(0.02));

  RunningStats geo_stats;
  for (int i = 0; i < 200000; ++i) geo_stats.add(static_cast<double>(rng.geometric(0.5)));
  CHECK(geo_stats.mean == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("chi-square with 2k dof has mean 2k") {
  RngStream rng(6);
  RunningStats st;
  for (int i = 0; i < 100000; ++i) st.add(rng.chi_square_2k(3));
  CHECK(st.mean == doctest::Approx(6.0).epsilon(0.02));
  CHECK(st.variance() == doctest::Approx(12.0).epsilon(0.05));
}
