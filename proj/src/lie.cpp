#include "diamond/lie.hpp"

#include <algorithm>
#include <cmath>

namespace diamond {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

bool close(double lhs, double rhs, double scale, double tol) {
  return std::abs(lhs - rhs) <= tol * std::max(1.0, scale);
}

}  // namespace

LieElement bracket(const LieElement& A, const LieElement& B) {
  return {A.a * B.d - A.d * B.a, A.d * B.b - B.d * A.b, A.a * B.b - B.a * A.b, 0.0};
}

Matrix3 ad_T_matrix() {
  return {{{-1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 0.0}}};
}

std::array<double, 3> apply(const Matrix3& m, const std::array<double, 3>& v) {
  std::array<double, 3> out{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out[i] += m[i][j] * v[j];
  return out;
}

std::string to_string(OrbitKind kind) {
  switch (kind) {
    case OrbitKind::Point: return "Point";
    case OrbitKind::HalfPlaneX: return "HalfPlaneX";
    case OrbitKind::HalfPlaneY: return "HalfPlaneY";
    case OrbitKind::HyperbolicCylinder: return "HyperbolicCylinder";
    case OrbitKind::HyperbolicParaboloid: return "HyperbolicParaboloid";
  }
  return "?";
}

std::string to_string(Branch branch) {
  switch (branch) {
    case Branch::Positive: return "x>0";
    case Branch::Negative: return "x<0";
    case Branch::Unresolved: return "unresolved-at-base-point";
  }
  return "?";
}

OrbitDescriptor classify_orbit(const DualFunctional& F) {
  OrbitDescriptor o;
  o.base = F;
  o.sign_alpha = sign_of(F.alpha);
  o.sign_beta = sign_of(F.beta);
  if (F.gamma != 0.0) {
    o.kind = OrbitKind::HyperbolicParaboloid;
    o.gamma = F.gamma;
    o.invariant = F.alpha * F.beta - F.gamma * F.delta;
    o.branch = F.alpha > 0.0   ? Branch::Positive
               : F.alpha < 0.0 ? Branch::Negative
                               : Branch::Unresolved;
  } else if (F.alpha != 0.0 && F.beta != 0.0) {
    o.kind = OrbitKind::HyperbolicCylinder;
    o.product = F.alpha * F.beta;
  } else if (F.alpha != 0.0) {
    o.kind = OrbitKind::HalfPlaneX;
  } else if (F.beta != 0.0) {
    o.kind = OrbitKind::HalfPlaneY;
  } else {
    o.kind = OrbitKind::Point;
    o.delta = F.delta;
  }
  return o;
}

bool orbit_contains(const DualFunctional& F, const DualFunctional& P, double tol) {
  const OrbitDescriptor of = classify_orbit(F);
  const OrbitDescriptor op = classify_orbit(P);
  if (of.kind != op.kind) return false;
  switch (of.kind) {
    case OrbitKind::Point:
      return close(P.delta, F.delta, std::max(std::abs(P.delta), std::abs(F.delta)), tol);
    case OrbitKind::HalfPlaneX:
      return op.sign_alpha == of.sign_alpha;
    case OrbitKind::HalfPlaneY:
      return op.sign_beta == of.sign_beta;
    case OrbitKind::HyperbolicCylinder: {
      if (op.sign_alpha != of.sign_alpha || op.sign_beta != of.sign_beta) return false;
      const double xy = P.alpha * P.beta;
      return close(xy, of.product, std::max(std::abs(xy), std::abs(of.product)), tol);
    }
    case OrbitKind::HyperbolicParaboloid: {
      if (!close(P.gamma, F.gamma, std::max(std::abs(P.gamma), std::abs(F.gamma)), tol))
        return false;
      const double xy = P.alpha * P.beta;
      const double gt = F.gamma * P.delta;
      const double scale = std::max({std::abs(xy), std::abs(gt), std::abs(of.invariant)});
      return close(xy - gt, of.invariant, scale, tol);
    }
  }
  return false;
}

}  // namespace diamond
