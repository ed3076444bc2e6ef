#include "hsvm/classifier.hpp"

#include <cmath>

#include "hsvm/error.hpp"

namespace hsvm {

double stable_asinh(double z) {
  const double a = std::abs(z);
  double r;
  if (a > 1e8) {
    // sqrt(z^2 + 1) == |z| to double precision; keep the 1/(4z^2) term.
    r = std::log(2.0 * a) + 0.25 / (a * a);
  } else {
    // log(a + sqrt(a^2 + 1)) = log1p(a + a^2 / (1 + sqrt(a^2 + 1)))
    r = std::log1p(a + a * a / (1.0 + std::sqrt(a * a + 1.0)));
  }
  return std::copysign(r, z);
}

double decision_value(const DecisionWeights& w, const HyperboloidPoint& x) {
  return minkowski_inner(w.w(), x.coords());
}

BinaryDecision decide(const DecisionWeights& w, const HyperboloidPoint& x) {
  return decision_value(w, x) > 0.0 ? BinaryDecision::kPositive : BinaryDecision::kNegative;
}

double geometric_margin(const DecisionWeights& w, const HyperboloidPoint& x, BinaryDecision y) {
  const double norm = std::sqrt(-w.minkowski_norm_sq());
  return to_int(y) * stable_asinh(decision_value(w, x) / norm);
}

}  // namespace hsvm
