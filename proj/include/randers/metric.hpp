#pragma once

// Minkowski norms of homogeneous Randers metrics on the tangent model space
// m = m0 + m1 of a sphere, for the three coset families handled here.

#include <array>
#include <string>
#include <vector>

#include "randers/quaternion.hpp"

namespace randers {

enum class Family {
  USphere,   // S^{2n+1} = U(n+1)/U(n)
  SpSphere,  // S^{4n+3} = Sp(n+1)U(1)/Sp(n)U(1)
  SU2,       // S^3 = (SU(2) x S^1)/<(V,1)>
};

std::string to_string(Family f);
Family family_from_string(const std::string& name);  // "u_sphere" | "sp_sphere" | "su2"

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

/// Element of m.
///  USphere: q has one entry, u holds n complex coordinates.
///  SpSphere: q = (l1, l2, l3) along i, j, k; u holds 2n complex numbers, the
///            quaternion vector u[0..n) + u[n..2n) j.
///  SU2: q = coordinates in the orthonormal basis (i, j, k) of su(2); u empty.
struct TangentVector {
  Family family = Family::USphere;
  std::vector<double> q;
  CVector u;

  static TangentVector u_sphere(double q, CVector u);
  static TangentVector sp_sphere(const Vec3& q, const HVector& u);
  static TangentVector su2(const Vec3& coords);
  static TangentVector zero_like(const TangentVector& y);

  HVector u_quaternion() const;  // SpSphere only
  /// Length in the standard inner product <,>_eq (a = b = 1).
  double eq_norm() const;

  TangentVector operator+(const TangentVector& o) const;
  TangentVector operator-(const TangentVector& o) const;
  TangentVector operator*(double s) const;
};

/// Parameters of an invariant Randers norm. a is used by USphere and SU2,
/// (a1, a2) by SpSphere. For SU2 the 1-form is c * <axis, .>_eq with axis a
/// unit vector in su(2) coordinates; for the other families it is c times
/// the i-coordinate of m0.
struct RandersSpec {
  Family family = Family::USphere;
  int n = 1;
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;
  double a1 = 1.0;
  double a2 = 1.0;
  Vec3 axis{1.0, 0.0, 0.0};

  static RandersSpec u_sphere(int n, double a, double b, double c);
  static RandersSpec sp_sphere(int n, double a1, double a2, double b, double c);
  static RandersSpec su2(double a, double b, double c, const Vec3& axis = {1.0, 0.0, 0.0});
  /// a for the complex families, a1 for SpSphere: the alpha-weight of the V direction.
  double a_parallel() const { return family == Family::SpSphere ? a1 : a; }
};

/// Empty when the spec is valid; otherwise one entry per violated inequality,
/// each starting with the inequality itself (e.g. "|c|<√a").
std::vector<std::string> validate_spec(const RandersSpec& s);

/// F(y) = alpha(y) + beta(y). Throws InvalidInput for an invalid spec or a
/// tangent vector of the wrong family or shape.
double randers_norm(const RandersSpec& s, const TangentVector& y);

/// F(y) - 1.
double indicatrix_residual(const RandersSpec& s, const TangentVector& y);

}  // namespace randers
