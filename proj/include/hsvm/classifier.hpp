#pragma once

#include "hsvm/geometry.hpp"

namespace hsvm {

enum class BinaryDecision : int { kNegative = -1, kPositive = +1 };

inline int to_int(BinaryDecision d) { return static_cast<int>(d); }

/// Numerically stable inverse hyperbolic sine, written as the log form
/// log(z + sqrt(z^2 + 1)) with a separate branch for large |z|.
double stable_asinh(double z);

/// Ranking score w*x. Monotone in the signed geometric margin.
double decision_value(const DecisionWeights& w, const HyperboloidPoint& x);

/// +1 iff w*x > 0; points on the boundary go to -1.
BinaryDecision decide(const DecisionWeights& w, const HyperboloidPoint& x);

/// Signed hyperbolic distance from x to {z in L^n : w*z = 0}:
///   y * asinh( (w*x) / sqrt(-w*w) ).
/// Invariant under positive rescaling of w.
double geometric_margin(const DecisionWeights& w, const HyperboloidPoint& x, BinaryDecision y);

}  // namespace hsvm
