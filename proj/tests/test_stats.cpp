#include <cmath>
#include <vector>

#include "doctest.h"
#include "minorlab/rng.hpp"
#include "minorlab/stats.hpp"

using namespace minorlab;

TEST_CASE("gamma_q against closed forms") {
  // Q(1, x) = exp(-x)
  CHECK(gamma_q(1.0, 0.7) == doctest::Approx(std::exp(-0.7)).epsilon(1e-12));
  // Q(1/2, x) = erfc(sqrt(x))
  CHECK(gamma_q(0.5, 2.0) == doctest::Approx(std::erfc(std::sqrt(2.0))).epsilon(1e-12));
  // chi-square with 2 dof: P(X >= 2x) = exp(-x)
  CHECK(chi2_pvalue(4.0, 2) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("two-sample KS accepts identical laws and rejects shifted ones") {
  RngStream rng(17);
  std::vector<double> a, b, c;
  for (int i = 0; i < 20000; ++i) {
    a.push_back(rng.gaussian(0.0, 1.0));
    b.push_back(rng.gaussian(0.0, 1.0));
    c.push_back(rng.gaussian(0.3, 1.0));
  }
  CHECK(ks_two_sample_pvalue(a, b) > 1e-3);
  CHECK(ks_two_sample_pvalue(a, c) < 1e-6);
}

TEST_CASE("one-sample KS against the normal cdf") {
  RngStream rng(19);
  std::vector<double> a;
  for (int i = 0; i < 20000; ++i) a.push_back(rng.gaussian(0.0, 1.0));
  auto cdf = [](double x, const void*) { return normal_cdf(x); };
  CHECK(ks_one_sample_pvalue(a, cdf, nullptr) > 1e-3);
}

TEST_CASE("chi2_binned flags a misfit and accepts a fit") {
  RngStream rng(23);
  const int bins = 10, n = 50000;
  std::vector<double> observed(bins, 0.0), expected(bins, n / static_cast<double>(bins));
  for (int i = 0; i < n; ++i) {
    observed[static_cast<int>(rng.uniform() * bins) % bins] += 1.0;
  }
  CHECK(chi2_binned(observed, expected).pvalue > 1e-3);
  observed[0] += 500.0;
  CHECK(chi2_binned(observed, expected).pvalue < 1e-6);
}

TEST_CASE("running stats") {
  RunningStats st;
  for (double x : {1.0, 2.0, 3.0, 4.0}) st.add(x);
  CHECK(st.mean == doctest::Approx(2.5));
  CHECK(st.variance() == doctest::Approx(5.0 / 3.0));
}
