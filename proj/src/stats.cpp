#include "hsvm/stats.hpp"

#include <cmath>
#include <limits>

#include "hsvm/error.hpp"

namespace hsvm {
namespace {

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw NumericalError("incomplete_beta: continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw ValidationError("incomplete_beta: a and b must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("incomplete_beta: x must lie in [0, 1]");
  if (x == 0.0 || x == 1.0) return x;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  // The fraction converges fastest for x < (a + 1) / (a + b + 2); use the
  // symmetry I_x(a, b) = 1 - I_{1-x}(b, a) on the other side.
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double students_t_cdf(double t, double dof) {
  if (!(dof > 0.0)) throw ValidationError("students_t_cdf: degrees of freedom must be positive");
  if (std::isinf(t)) return t > 0.0 ? 1.0 : 0.0;
  const double tail = 0.5 * incomplete_beta(0.5 * dof, 0.5, dof / (dof + t * t));
  return t > 0.0 ? 1.0 - tail : tail;
}

PairedTTest paired_t_test(std::span<const double> first, std::span<const double> second) {
  if (first.size() != second.size()) throw DimensionError("paired_t_test: samples differ in length");
  if (first.size() < 2) throw ValidationError("paired_t_test: need at least two pairs");

  PairedTTest out;
  out.n = static_cast<int>(first.size());
  const double n = static_cast<double>(first.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < first.size(); ++i) sum += first[i] - second[i];
  out.mean_diff = sum / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < first.size(); ++i) {
    const double d = first[i] - second[i] - out.mean_diff;
    ss += d * d;
  }
  out.sd_diff = std::sqrt(ss / (n - 1.0));

  if (out.sd_diff == 0.0) {
    if (out.mean_diff == 0.0) {
      out.t = 0.0;
      out.p_one_sided = 0.5;
    } else {
      out.t = std::copysign(std::numeric_limits<double>::infinity(), out.mean_diff);
      out.p_one_sided = out.mean_diff > 0.0 ? 0.0 : 1.0;
    }
    return out;
  }
  out.t = out.mean_diff / (out.sd_diff / std::sqrt(n));
  // Upper tail P(T >= t); for t > 0 compute it directly to keep tiny p-values.
  const double dof = n - 1.0;
  const double half_tail = 0.5 * incomplete_beta(0.5 * dof, 0.5, dof / (dof + out.t * out.t));
  out.p_one_sided = out.t > 0.0 ? half_tail : 1.0 - half_tail;
  return out;
}

}  // namespace hsvm
