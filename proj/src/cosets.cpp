#include "randers/cosets.hpp"

#include <cmath>

namespace randers {

ModelSpace ModelSpace::u_sphere(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "U_sphere needs n >= 1");
  return {Family::USphere, n, {}};
}

ModelSpace ModelSpace::sp_sphere(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "Sp_sphere needs n >= 1");
  return {Family::SpSphere, n, {}};
}

ModelSpace ModelSpace::su2(const Vec3& v) { return {Family::SU2, 1, v}; }

int ModelSpace::dimension() const {
  switch (family) {
    case Family::USphere: return 2 * n + 1;
    case Family::SpSphere: return 4 * n + 3;
    case Family::SU2: return 3;
  }
  return 0;
}

ModelSpace model_space_of(const RandersSpec& s) {
  switch (s.family) {
    case Family::USphere: return ModelSpace::u_sphere(s.n);
    case Family::SpSphere: return ModelSpace::sp_sphere(s.n);
    case Family::SU2: {
      const double k = s.c / s.b;
      return ModelSpace::su2({k * s.axis[0], k * s.axis[1], k * s.axis[2]});
    }
  }
  throw Error(ErrorCode::InvalidInput, "unknown family");
}

CMatrix su2_matrix(const Vec3& c) {
  CMatrix m(2, 2);
  m(0, 0) = Complex(0.0, c[0]);
  m(1, 1) = Complex(0.0, -c[0]);
  m(0, 1) = Complex(c[1], c[2]);
  m(1, 0) = Complex(-c[1], c[2]);
  return m;
}

Vec3 su2_coords(const CMatrix& x) {
  if (x.rows() != 2 || x.cols() != 2) throw Error(ErrorCode::InvalidInput, "su(2) element must be 2x2");
  return {x(0, 0).imag(), x(0, 1).real(), x(0, 1).imag()};
}

// ---------------------------------------------------------------------------

AlgebraElement AlgebraElement::unitary(const SkewHermitian& x) {
  return {Family::USphere, QuaternionMatrix::from_complex(x.matrix()), 0.0};
}

AlgebraElement AlgebraElement::su2(const Vec3& coords, double scalar) {
  return {Family::SU2, QuaternionMatrix::from_complex(su2_matrix(coords)), scalar};
}

AlgebraElement AlgebraElement::symplectic(const QuaternionMatrix& x, double scalar) {
  if (x.rows() == 0 || x.rows() != x.cols()) throw Error(ErrorCode::InvalidInput, "sp element must be square");
  if ((x + x.adjoint()).max_abs() > tol::kSkew) throw Error(ErrorCode::InvalidInput, "sp element is not skew: X* != -X");
  return {Family::SpSphere, x, scalar};
}

AlgebraElement conjugate(const UnitaryMatrix& g, const AlgebraElement& e) {
  if (e.family == Family::SpSphere) throw Error(ErrorCode::InvalidInput, "unitary conjugation of a symplectic element");
  const CMatrix y = conjugate(g, e.x.q1());
  return {e.family, QuaternionMatrix::from_complex(0.5 * (y - y.adjoint())), e.scalar};
}

AlgebraElement conjugate(const SymplecticMatrix& g, const AlgebraElement& e) {
  if (e.family != Family::SpSphere) throw Error(ErrorCode::InvalidInput, "symplectic conjugation of a complex element");
  const QuaternionMatrix y = conjugate(g, e.x);
  return {e.family, (y - y.adjoint()) * 0.5, e.scalar};
}

TangentVector project_to_m(const ModelSpace& space, const AlgebraElement& e) {
  if (space.family != e.family) throw Error(ErrorCode::InvalidInput, "algebra element family does not match the model space");
  const Eigen::Index size = space.matrix_size();
  if (e.x.rows() != size || e.x.cols() != size) throw Error(ErrorCode::InvalidInput, "algebra element has the wrong size");
  const Eigen::Index last = size - 1;
  switch (space.family) {
    case Family::USphere: {
      if (e.scalar != 0.0) throw Error(ErrorCode::InvalidInput, "U_sphere elements carry no scalar part");
      const CVector col = e.x.q1().col(last);
      return TangentVector::u_sphere(col(last).imag(), col.head(last));
    }
    case Family::SU2: {
      // The derivative of g -> exp(tX) g exp(-t x V) at e is X - xV.
      const Vec3 c = su2_coords(e.x.q1());
      return TangentVector::su2({c[0] - e.scalar * space.v[0], c[1] - e.scalar * space.v[1], c[2] - e.scalar * space.v[2]});
    }
    case Family::SpSphere: {
      // Right multiplication by exp(t x i) on the base point adds x i.
      const HVector col = e.x.col(last);
      const Quaternion d = col[last] + e.scalar * kQuatI;
      return TangentVector::sp_sphere({d.x, d.y, d.z}, HVector(col.begin(), col.end() - 1));
    }
  }
  throw Error(ErrorCode::InvalidInput, "unknown family");
}

std::vector<TangentVector> orbit_projection_sample(const ModelSpace& space, const AlgebraElement& e, int trials,
                                                   RngStream& rng) {
  std::vector<TangentVector> out;
  if (trials <= 0) return out;
  out.reserve(trials);
  const RngStream base(rng.next_u64());
  const int size = static_cast<int>(space.matrix_size());
  for (int k = 0; k < trials; ++k) {
    RngStream stream = base.derive(static_cast<std::uint64_t>(k));
    if (space.family == Family::SpSphere) {
      out.push_back(project_to_m(space, conjugate(haar_symplectic(size, stream), e)));
    } else {
      // Conjugation by U(2) and SU(2) agree since the centre acts trivially.
      out.push_back(project_to_m(space, conjugate(haar_unitary(size, stream), e)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

TangentVector sp_orbit_projection(double xprime, double x, Quaternion q, const HVector& w) {
  if (w.empty()) throw Error(ErrorCode::InvalidInput, "sp_orbit_projection needs n >= 1");
  if (q.norm() > 1.0 + 1e-12) throw Error(ErrorCode::InvalidInput, "sp_orbit_projection needs |q| <= 1");
  if (std::abs(norm(w) - 1.0) > 1e-10) throw Error(ErrorCode::InvalidInput, "sp_orbit_projection needs a unit w");
  const std::size_t n = w.size();
  const double s = std::sqrt(std::max(0.0, 1.0 - q.norm2()));
  Quaternion gamma;
  for (const auto& wk : w) gamma += wk * kQuatI * wk.conj();
  const Quaternion lambda = (s * s) * gamma + q * kQuatI * q.conj();
  const Quaternion m0 = x * kQuatI + xprime * lambda;

  HVector u(n);
  u[0] = (xprime * s) * (kQuatI * q.conj() - q.conj() * gamma);
  if (n >= 2) u[1] = Quaternion{xprime * s * std::sqrt(std::max(0.0, 1.0 - gamma.norm2())), 0.0, 0.0, 0.0};
  return TangentVector::sp_sphere({m0.x, m0.y, m0.z}, u);
}

namespace {

// Left-module Gram-Schmidt step: v - <v,u> u for unit u.
void remove_component(HVector& v, const HVector& u) {
  const Quaternion coef = row_inner(v, u);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] -= coef * u[k];
}

HVector scaled(const HVector& v, double s) {
  HVector out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = s * v[k];
  return out;
}

}  // namespace

SymplecticMatrix symplectic_completion(const HVector& last_row) {
  const std::size_t size = last_row.size();
  if (size == 0) throw Error(ErrorCode::InvalidInput, "symplectic_completion of an empty row");
  const double len = norm(last_row);
  if (len < 1e-14) throw Error(ErrorCode::InvalidInput, "symplectic_completion of the zero vector");
  if (std::abs(len - 1.0) > 1e-10) throw Error(ErrorCode::InvalidInput, "symplectic_completion needs a unit row");
  if (size == 1) return SymplecticMatrix::make(QuaternionMatrix::diagonal(last_row));

  const std::size_t n = size - 1;
  const Quaternion q = last_row[n];
  const double s = norm(HVector(last_row.begin(), last_row.end() - 1));

  HVector rho(size);
  HVector second;  // the row in span{w, i-twisted w}, if it exists
  if (s > 1e-14) {
    HVector w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = (1.0 / s) * last_row[k];
    for (std::size_t k = 0; k < n; ++k) rho[k] = -(q.conj() * w[k]);
    rho[n] = Quaternion{s, 0.0, 0.0, 0.0};
    Quaternion gamma;
    for (const auto& wk : w) gamma += wk * kQuatI * wk.conj();
    HVector nu(size);
    for (std::size_t k = 0; k < n; ++k) nu[k] = gamma * w[k] - w[k] * kQuatI;
    const double nu_len = norm(nu);
    if (nu_len > 1e-8) second = scaled(nu, 1.0 / nu_len);
  } else {
    rho[0] = Quaternion{1.0, 0.0, 0.0, 0.0};
  }

  std::vector<HVector> basis{rho};
  if (!second.empty()) basis.push_back(second);
  for (std::size_t e = 0; e < n && basis.size() < n; ++e) {
    HVector v(size);
    v[e] = Quaternion{1.0, 0.0, 0.0, 0.0};
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) remove_component(v, b);
      remove_component(v, last_row);
    }
    const double l = norm(v);
    if (l > 1e-6) basis.push_back(scaled(v, 1.0 / l));
  }
  if (basis.size() != n) throw Error(ErrorCode::InvalidInput, "symplectic_completion failed to span the complement");
  // rows: rho, the complement, then the given row
  basis.push_back(last_row);
  return SymplecticMatrix::make(QuaternionMatrix::from_rows(basis));
}

UnitaryMatrix permutation_unitary(const std::vector<int>& perm) {
  const auto n = static_cast<Eigen::Index>(perm.size());
  CMatrix p = CMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (perm[k] < 0 || perm[k] >= n) throw Error(ErrorCode::InvalidInput, "permutation index out of range");
    p(perm[k], k) = 1.0;
  }
  return UnitaryMatrix::make(std::move(p));
}

SymplecticMatrix permutation_symplectic(const std::vector<int>& perm) {
  return SymplecticMatrix::make(QuaternionMatrix::from_complex(permutation_unitary(perm).matrix()));
}

SymplecticMatrix weyl_sign_flip(int size, int slot) {
  if (slot < 0 || slot >= size) throw Error(ErrorCode::InvalidInput, "sign flip slot out of range");
  HVector diag(size, Quaternion{1.0, 0.0, 0.0, 0.0});
  diag[slot] = kQuatJ;
  return SymplecticMatrix::make(QuaternionMatrix::diagonal(diag));
}

}  // namespace randers
