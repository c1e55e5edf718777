#pragma once

#include <cstddef>
#include <vector>

namespace minorlab {

struct RunningStats {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double std_error_of_mean() const;
};

double normal_cdf(double x);

// Asymptotic Kolmogorov distribution: P(sqrt(n) D > lambda).
double kolmogorov_q(double lambda);

// Two-sample KS: returns the p-value (samples are sorted internally).
double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b);

// One-sample KS against a cdf given on the sorted sample points.
double ks_one_sample_pvalue(std::vector<double> sample, double (*cdf)(double, const void*),
                            const void* ctx);

// Regularized upper incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a).
double gamma_q(double a, double x);

// Chi-square tail probability P(X >= stat) with `dof` degrees of freedom.
double chi2_pvalue(double stat, int dof);

// Chi-square statistic from observed counts vs expected counts; cells with
// expected < min_expected are pooled into the final cell.
struct Chi2Result {
  double stat = 0.0;
  int dof = 0;
  double pvalue = 1.0;
};
Chi2Result chi2_binned(const std::vector<double>& observed, const std::vector<double>& expected,
                       double min_expected = 5.0);

} // namespace minorlab
