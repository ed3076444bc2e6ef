#pragma once

// Hyperbolic space of curvature -1 in three models:
//   hyperboloid  L^n = {x in R^{n+1} : x*x = 1, x_0 > 0}
//   Poincare ball B^n = {b in R^n : |b| < 1}
//   half-space   H^n = {h in R^n : h_1 > 0}
// where x*y = x_0 y_0 - x_1 y_1 - ... - x_n y_n is the Minkowski product.

#include <Eigen/Dense>

namespace hsvm {

using Vector = Eigen::VectorXd;

inline constexpr double kModelTolerance = 1e-9;
inline constexpr double kBoundaryTolerance = 1e-12;

/// Minkowski inner product u_0 v_0 - sum_{i>=1} u_i v_i.
/// Throws DimensionError unless both vectors have the same length >= 2.
double minkowski_inner(const Vector& u, const Vector& v);

class HyperboloidPoint {
 public:
  /// Validates x*x = 1 (relative to x_0^2, since the product of large
  /// coordinates loses absolute precision) and x_0 > 0.
  explicit HyperboloidPoint(Vector coords);

  const Vector& coords() const { return coords_; }
  Eigen::Index ambient_dim() const { return coords_.size(); }
  double operator[](Eigen::Index i) const { return coords_[i]; }

  /// The base point (1, 0, ..., 0).
  static HyperboloidPoint origin(Eigen::Index ambient_dim);

 private:
  Vector coords_;
};

class BallPoint {
 public:
  /// Rejects |b|^2 >= 1 - kBoundaryTolerance.
  explicit BallPoint(Vector coords);

  const Vector& coords() const { return coords_; }
  Eigen::Index dim() const { return coords_.size(); }
  double operator[](Eigen::Index i) const { return coords_[i]; }

  static BallPoint origin(Eigen::Index dim);

 private:
  Vector coords_;
};

class HalfSpacePoint {
 public:
  /// Rejects h_1 <= 0.
  explicit HalfSpacePoint(Vector coords);

  const Vector& coords() const { return coords_; }
  Eigen::Index dim() const { return coords_.size(); }
  double operator[](Eigen::Index i) const { return coords_[i]; }

 private:
  Vector coords_;
};

/// Normal vector of a hyperbolic hyperplane {z in L^n : w*z = 0}. Only
/// vectors with w*w < 0 give a boundary that actually meets L^n.
class DecisionWeights {
 public:
  explicit DecisionWeights(Vector w);

  const Vector& w() const { return w_; }
  Eigen::Index ambient_dim() const { return w_.size(); }
  double minkowski_norm_sq() const { return minkowski_inner(w_, w_); }

 private:
  Vector w_;
};

BallPoint hyperboloid_to_ball(const HyperboloidPoint& x);
HyperboloidPoint ball_to_hyperboloid(const BallPoint& b);

/// Circle inversion centred at (-1, 0, ..., 0). The map is its own inverse,
/// so halfspace_to_ball applies the same formula to a half-space point.
HalfSpacePoint ball_to_halfspace(const BallPoint& b);
BallPoint halfspace_to_ball(const HalfSpacePoint& h);

HalfSpacePoint hyperboloid_to_halfspace(const HyperboloidPoint& x);
HyperboloidPoint halfspace_to_hyperboloid(const HalfSpacePoint& h);

/// arcosh(x*y), with the product clamped to 1 when it undershoots by less
/// than kModelTolerance. Larger undershoots throw DomainError.
double hyperbolic_distance(const HyperboloidPoint& x, const HyperboloidPoint& y);

// Model-native distance formulas, used for cross-checks.
double ball_distance(const BallPoint& u, const BallPoint& v);
double halfspace_distance(const HalfSpacePoint& u, const HalfSpacePoint& v);

/// Moebius translation of the ball carrying the origin to `target`:
///   p -> target (+) p   (gyrovector addition).
class BallTranslation {
 public:
  explicit BallTranslation(BallPoint target) : target_(std::move(target)) {}

  BallPoint apply(const BallPoint& p) const;
  const BallPoint& target() const { return target_; }

 private:
  BallPoint target_;
};

BallTranslation translate_to(const BallPoint& target);
BallPoint apply_isometry(const BallTranslation& iso, const BallPoint& p);

}  // namespace hsvm
