#pragma once

// Coset presentations of spheres and the projection from the Lie algebra of
// the isometry group onto the tangent model space m at the base point
// (0, ..., 0, 1).

#include <vector>

#include "randers/metric.hpp"

namespace randers {

struct ModelSpace {
  Family family = Family::USphere;
  int n = 1;
  /// SU2 only: su(2) part of the generator (V, 1) of the isotropy algebra.
  Vec3 v{0.0, 0.0, 0.0};

  static ModelSpace u_sphere(int n);
  static ModelSpace sp_sphere(int n);
  static ModelSpace su2(const Vec3& v);

  /// Size of the matrices acting on the sphere: n+1, or 2 for SU2.
  Eigen::Index matrix_size() const { return family == Family::SU2 ? 2 : n + 1; }
  /// Dimension of the sphere.
  int dimension() const;
};

/// The model space a spec lives on. For SU2 the isotropy generator is taken
/// as V = (c/b) * axis, the relation satisfied by su2_cw_spec.
ModelSpace model_space_of(const RandersSpec& s);

/// su(2) coordinates along the quaternion basis i, j, k, realised as
/// i -> diag(i,-i), j -> [[0,1],[-1,0]], k -> [[0,i],[i,0]]; <A,B>_eq = -tr(AB)/2.
CMatrix su2_matrix(const Vec3& coords);
Vec3 su2_coords(const CMatrix& x);

/// (X, x) in g = (matrix algebra) + R. The complex families keep the j-part
/// of X at zero.
struct AlgebraElement {
  Family family = Family::USphere;
  QuaternionMatrix x;
  double scalar = 0.0;

  static AlgebraElement unitary(const SkewHermitian& x);
  static AlgebraElement su2(const Vec3& coords, double scalar);
  /// X must satisfy X* = -X within tol::kSkew.
  static AlgebraElement symplectic(const QuaternionMatrix& x, double scalar);

  CMatrix complex_matrix() const { return x.q1(); }
};

AlgebraElement conjugate(const UnitaryMatrix& g, const AlgebraElement& e);
AlgebraElement conjugate(const SymplecticMatrix& g, const AlgebraElement& e);

TangentVector project_to_m(const ModelSpace& space, const AlgebraElement& e);

/// project_to_m(conjugate(g_k, e)) for Haar draws g_k of the family's group.
std::vector<TangentVector> orbit_projection_sample(const ModelSpace& space, const AlgebraElement& e, int trials,
                                                   RngStream& rng);

/// Projection of (Q (x' i I) Q*, x) with Q = symplectic_completion((s w, q)),
/// s = sqrt(1 - |q|^2). With gamma = sum_k w_k i conj(w_k):
///   m0-part  x i + x' (s^2 gamma + q i conj(q))
///   m1-part  x' s (i conj(q) - conj(q) gamma,  sqrt(1 - |gamma|^2), 0, ..., 0)
/// (the second entry is absent when n = 1). Requires |q| <= 1 and |w| = 1.
TangentVector sp_orbit_projection(double xprime, double x, Quaternion q, const HVector& w);

/// Q in Sp(N) with the given unit row as its last row and last column
/// (q', 0, ..., 0, q)^T where q' is real, hence has no i-component.
SymplecticMatrix symplectic_completion(const HVector& last_row);

/// Weyl group of U(n+1): permutation matrix sending basis vector k to perm[k].
UnitaryMatrix permutation_unitary(const std::vector<int>& perm);
/// Weyl group of Sp(n+1): permutations and the sign change q -> j q conj(j) on
/// one diagonal slot.
SymplecticMatrix permutation_symplectic(const std::vector<int>& perm);
SymplecticMatrix weyl_sign_flip(int size, int slot);

}  // namespace randers
