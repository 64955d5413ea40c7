#pragma once

#include <array>
#include <string>

namespace diamond {

/// Element aX + bY + cZ + dT of the real diamond algebra.
struct LieElement {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  static constexpr LieElement X() { return {1.0, 0.0, 0.0, 0.0}; }
  static constexpr LieElement Y() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr LieElement Z() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr LieElement T() { return {0.0, 0.0, 0.0, 1.0}; }

  friend constexpr LieElement operator+(const LieElement& u, const LieElement& v) {
    return {u.a + v.a, u.b + v.b, u.c + v.c, u.d + v.d};
  }
  friend constexpr LieElement operator-(const LieElement& u, const LieElement& v) {
    return {u.a - v.a, u.b - v.b, u.c - v.c, u.d - v.d};
  }
  friend constexpr LieElement operator-(const LieElement& u) { return {-u.a, -u.b, -u.c, -u.d}; }
  friend constexpr LieElement operator*(double s, const LieElement& u) {
    return {s * u.a, s * u.b, s * u.c, s * u.d};
  }
  friend constexpr bool operator==(const LieElement&, const LieElement&) = default;
};

/// Functional alpha X* + beta Y* + gamma Z* + delta T* on the algebra.
struct DualFunctional {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;

  friend constexpr bool operator==(const DualFunctional&, const DualFunctional&) = default;
};

constexpr double pairing(const DualFunctional& F, const LieElement& A) {
  return F.alpha * A.a + F.beta * A.b + F.gamma * A.c + F.delta * A.d;
}

/// [A, B] from [X,Y]=Z, [T,X]=-X, [T,Y]=Y (all other basis brackets vanish).
LieElement bracket(const LieElement& A, const LieElement& B);

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// ad_T restricted to the Heisenberg ideal, in (X, Y, Z) coordinates.
Matrix3 ad_T_matrix();
std::array<double, 3> apply(const Matrix3& m, const std::array<double, 3>& v);

enum class OrbitKind { Point, HalfPlaneX, HalfPlaneY, HyperbolicCylinder, HyperbolicParaboloid };

/// Which x-half of a paraboloid orbit a chart parameterizes.
enum class Branch { Positive, Negative, Unresolved };

std::string to_string(OrbitKind kind);
std::string to_string(Branch branch);

/// Classification of the coadjoint orbit through a functional.
///
/// Only the fields relevant to `kind` carry meaning:
///   Point                 delta
///   HalfPlaneX            sign_alpha
///   HalfPlaneY            sign_beta
///   HyperbolicCylinder    sign_alpha, sign_beta, product (= alpha*beta)
///   HyperbolicParaboloid  gamma, invariant (= alpha*beta - gamma*delta), branch
struct OrbitDescriptor {
  OrbitKind kind = OrbitKind::Point;
  DualFunctional base;
  int sign_alpha = 0;
  int sign_beta = 0;
  double product = 0.0;
  double gamma = 0.0;
  double invariant = 0.0;
  double delta = 0.0;
  Branch branch = Branch::Unresolved;

  bool two_dimensional() const { return kind != OrbitKind::Point; }
};

/// Zero tests are exact on the supplied values.
OrbitDescriptor classify_orbit(const DualFunctional& F);

inline constexpr double kDefaultOrbitTolerance = 1e-12;

/// True iff P lies on the orbit through F. Equalities are checked relative to
/// the magnitude of the compared quantities, floored at 1.
bool orbit_contains(const DualFunctional& F, const DualFunctional& P,
                    double tol = kDefaultOrbitTolerance);

}  // namespace diamond
