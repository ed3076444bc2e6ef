#pragma once

#include <span>

namespace hsvm {

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

/// P(T <= t) for Student's t with `dof` degrees of freedom.
double students_t_cdf(double t, double dof);

struct PairedTTest {
  int n = 0;
  double mean_diff = 0.0;
  double sd_diff = 0.0;
  double t = 0.0;
  double p_one_sided = 0.0;  // H1: mean(first - second) > 0
};

/// One-sided paired-sample t-test of first > second.
/// Needs at least two pairs; zero spread gives t = +-inf (p = 0 or 1) or,
/// with zero mean as well, t = 0 and p = 0.5.
PairedTTest paired_t_test(std::span<const double> first, std::span<const double> second);

}  // namespace hsvm
