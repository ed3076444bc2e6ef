#include "hsvm/geometry.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "hsvm/error.hpp"

namespace hsvm {

double minkowski_inner(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) {
    throw DimensionError("minkowski_inner: length mismatch (" + std::to_string(u.size()) +
                         " vs " + std::to_string(v.size()) + ")");
  }
  if (u.size() < 2) {
    throw DimensionError("minkowski_inner: need at least 2 ambient coordinates");
  }
  return u[0] * v[0] - u.tail(u.size() - 1).dot(v.tail(v.size() - 1));
}

HyperboloidPoint::HyperboloidPoint(Vector coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) {
    throw DimensionError("hyperboloid point needs at least 2 ambient coordinates");
  }
  if (!coords_.allFinite()) {
    throw DomainError("hyperboloid point has non-finite coordinates");
  }
  if (!(coords_[0] > 0.0)) {
    throw DomainError("hyperboloid point must have x_0 > 0");
  }
  const double norm = minkowski_inner(coords_, coords_);
  const double scale = std::max(1.0, coords_[0] * coords_[0]);
  if (std::abs(norm - 1.0) > kModelTolerance * scale) {
    throw DomainError("hyperboloid point violates x*x = 1 (got " + std::to_string(norm) + ")");
  }
}

HyperboloidPoint HyperboloidPoint::origin(Eigen::Index ambient_dim) {
  Vector x = Vector::Zero(ambient_dim);
  x[0] = 1.0;
  return HyperboloidPoint(std::move(x));
}

BallPoint::BallPoint(Vector coords) : coords_(std::move(coords)) {
  if (coords_.size() < 1) {
    throw DimensionError("ball point needs at least 1 coordinate");
  }
  if (!coords_.allFinite()) {
    throw DomainError("ball point has non-finite coordinates");
  }
  if (coords_.squaredNorm() >= 1.0 - kBoundaryTolerance) {
    throw DomainError("ball point too close to the unit sphere (|b|^2 = " +
                      std::to_string(coords_.squaredNorm()) + ")");
  }
}

BallPoint BallPoint::origin(Eigen::Index dim) { return BallPoint(Vector::Zero(dim)); }

HalfSpacePoint::HalfSpacePoint(Vector coords) : coords_(std::move(coords)) {
  if (coords_.size() < 1) {
    throw DimensionError("half-space point needs at least 1 coordinate");
  }
  if (!coords_.allFinite()) {
    throw DomainError("half-space point has non-finite coordinates");
  }
  if (!(coords_[0] > 0.0)) {
    throw DomainError("half-space point must have h_1 > 0");
  }
}

DecisionWeights::DecisionWeights(Vector w) : w_(std::move(w)) {
  if (w_.size() < 2) {
    throw DimensionError("decision weights need at least 2 ambient coordinates");
  }
  if (!w_.allFinite()) {
    throw InfeasibleWeightsError("decision weights are not finite");
  }
  if (!(minkowski_inner(w_, w_) < 0.0)) {
    throw InfeasibleWeightsError("decision weights need w*w < 0");
  }
}

BallPoint hyperboloid_to_ball(const HyperboloidPoint& x) {
  const Vector& c = x.coords();
  return BallPoint(c.tail(c.size() - 1) / (1.0 + c[0]));
}

HyperboloidPoint ball_to_hyperboloid(const BallPoint& b) {
  const double sq = b.coords().squaredNorm();
  const double denom = 1.0 - sq;
  Vector x(b.dim() + 1);
  x[0] = (1.0 + sq) / denom;
  x.tail(b.dim()) = 2.0 * b.coords() / denom;
  return HyperboloidPoint(std::move(x));
}

namespace {

// (1 - |p|^2, 2 p_2, ..., 2 p_n) / (1 + 2 p_1 + |p|^2)
Vector invert_about_south_pole(const Vector& p) {
  const double sq = p.squaredNorm();
  const double denom = 1.0 + 2.0 * p[0] + sq;
  if (denom <= kBoundaryTolerance) {
    throw DomainError("point coincides with the inversion centre (-1, 0, ..., 0)");
  }
  Vector out = 2.0 * p / denom;
  out[0] = (1.0 - sq) / denom;
  return out;
}

}  // namespace

HalfSpacePoint ball_to_halfspace(const BallPoint& b) {
  return HalfSpacePoint(invert_about_south_pole(b.coords()));
}

BallPoint halfspace_to_ball(const HalfSpacePoint& h) {
  return BallPoint(invert_about_south_pole(h.coords()));
}

HalfSpacePoint hyperboloid_to_halfspace(const HyperboloidPoint& x) {
  return ball_to_halfspace(hyperboloid_to_ball(x));
}

HyperboloidPoint halfspace_to_hyperboloid(const HalfSpacePoint& h) {
  return ball_to_hyperboloid(halfspace_to_ball(h));
}

double hyperbolic_distance(const HyperboloidPoint& x, const HyperboloidPoint& y) {
  double inner = minkowski_inner(x.coords(), y.coords());
  if (inner < 1.0) {
    if (inner < 1.0 - kModelTolerance) {
      throw DomainError("hyperbolic_distance: x*y = " + std::to_string(inner) + " < 1");
    }
    inner = 1.0;
  }
  if (inner < 2.0) {
    // Near points: arcosh(1 + d) loses half the digits of d, so use the
    // Minkowski chord -(x-y)*(x-y) = 2(x*y - 1) computed from the difference.
    const Vector diff = x.coords() - y.coords();
    const double chord_sq = std::max(-minkowski_inner(diff, diff), 0.0);
    return 2.0 * std::asinh(0.5 * std::sqrt(chord_sq));
  }
  return std::acosh(inner);
}

double ball_distance(const BallPoint& u, const BallPoint& v) {
  if (u.dim() != v.dim()) {
    throw DimensionError("ball_distance: dimension mismatch");
  }
  const double diff = (u.coords() - v.coords()).squaredNorm();
  const double scale = (1.0 - u.coords().squaredNorm()) * (1.0 - v.coords().squaredNorm());
  return std::acosh(1.0 + 2.0 * diff / scale);
}

double halfspace_distance(const HalfSpacePoint& u, const HalfSpacePoint& v) {
  if (u.dim() != v.dim()) {
    throw DimensionError("halfspace_distance: dimension mismatch");
  }
  const double diff = (u.coords() - v.coords()).squaredNorm();
  return std::acosh(1.0 + diff / (2.0 * u[0] * v[0]));
}

BallPoint BallTranslation::apply(const BallPoint& p) const {
  const Vector& a = target_.coords();
  const Vector& x = p.coords();
  if (a.size() != x.size()) {
    throw DimensionError("apply_isometry: dimension mismatch");
  }
  const double ax = a.dot(x);
  const double aa = a.squaredNorm();
  const double xx = x.squaredNorm();
  const double denom = 1.0 + 2.0 * ax + aa * xx;
  return BallPoint(((1.0 + 2.0 * ax + xx) * a + (1.0 - aa) * x) / denom);
}

BallTranslation translate_to(const BallPoint& target) { return BallTranslation(target); }

BallPoint apply_isometry(const BallTranslation& iso, const BallPoint& p) { return iso.apply(p); }

}  // namespace hsvm
