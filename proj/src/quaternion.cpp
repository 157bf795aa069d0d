#include "randers/quaternion.hpp"

#include <cmath>
#include <sstream>

namespace randers {

double Quaternion::norm() const { return std::sqrt(norm2()); }

Quaternion Quaternion::normalized() const {
  const double n = norm();
  if (n == 0.0 || !std::isfinite(n)) throw Error(ErrorCode::InvalidInput, "cannot normalize a zero quaternion");
  return (1.0 / n) * *this;
}

Quaternion row_inner(const HVector& x, const HVector& y) {
  if (x.size() != y.size()) throw Error(ErrorCode::InvalidInput, "quaternion vector length mismatch");
  Quaternion acc;
  for (std::size_t k = 0; k < x.size(); ++k) acc += x[k] * y[k].conj();
  return acc;
}

double norm(const HVector& x) {
  double acc = 0.0;
  for (const auto& q : x) acc += q.norm2();
  return std::sqrt(acc);
}

// ---------------------------------------------------------------------------
// QuaternionMatrix

QuaternionMatrix::QuaternionMatrix(CMatrix q1, CMatrix q2) : q1_(std::move(q1)), q2_(std::move(q2)) {
  if (q1_.rows() != q2_.rows() || q1_.cols() != q2_.cols())
    throw Error(ErrorCode::InvalidInput, "quaternion matrix parts differ in shape");
}

QuaternionMatrix QuaternionMatrix::zero(Eigen::Index rows, Eigen::Index cols) {
  return {CMatrix::Zero(rows, cols), CMatrix::Zero(rows, cols)};
}

QuaternionMatrix QuaternionMatrix::identity(Eigen::Index n) {
  return {CMatrix::Identity(n, n), CMatrix::Zero(n, n)};
}

QuaternionMatrix QuaternionMatrix::from_complex(const CMatrix& q1) {
  return {q1, CMatrix::Zero(q1.rows(), q1.cols())};
}

QuaternionMatrix QuaternionMatrix::from_rows(const std::vector<HVector>& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto m = n == 0 ? 0 : static_cast<Eigen::Index>(rows.front().size());
  QuaternionMatrix out = zero(n, m);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (static_cast<Eigen::Index>(rows[r].size()) != m) throw Error(ErrorCode::InvalidInput, "ragged quaternion rows");
    for (Eigen::Index c = 0; c < m; ++c) out.set(r, c, rows[r][c]);
  }
  return out;
}

QuaternionMatrix QuaternionMatrix::diagonal(const HVector& entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  QuaternionMatrix out = zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) out.set(k, k, entries[k]);
  return out;
}

void QuaternionMatrix::set(Eigen::Index r, Eigen::Index c, Quaternion q) {
  q1_(r, c) = q.c1();
  q2_(r, c) = q.c2();
}

HVector QuaternionMatrix::row(Eigen::Index r) const {
  HVector out(cols());
  for (Eigen::Index c = 0; c < cols(); ++c) out[c] = (*this)(r, c);
  return out;
}

HVector QuaternionMatrix::col(Eigen::Index c) const {
  HVector out(rows());
  for (Eigen::Index r = 0; r < rows(); ++r) out[r] = (*this)(r, c);
  return out;
}

QuaternionMatrix QuaternionMatrix::operator*(const QuaternionMatrix& b) const {
  if (cols() != b.rows()) throw Error(ErrorCode::InvalidInput, "quaternion product shape mismatch");
  return {q1_ * b.q1_ - q2_ * b.q2_.conjugate(), q1_ * b.q2_ + q2_ * b.q1_.conjugate()};
}

QuaternionMatrix QuaternionMatrix::operator+(const QuaternionMatrix& b) const { return {q1_ + b.q1_, q2_ + b.q2_}; }

QuaternionMatrix QuaternionMatrix::operator-(const QuaternionMatrix& b) const { return {q1_ - b.q1_, q2_ - b.q2_}; }

QuaternionMatrix QuaternionMatrix::operator*(double s) const { return {q1_ * s, q2_ * s}; }

QuaternionMatrix QuaternionMatrix::adjoint() const { return {q1_.adjoint(), -q2_.transpose()}; }

QuaternionMatrix QuaternionMatrix::left_scaled(Quaternion s) const {
  QuaternionMatrix out = *this;
  for (Eigen::Index r = 0; r < rows(); ++r)
    for (Eigen::Index c = 0; c < cols(); ++c) out.set(r, c, s * (*this)(r, c));
  return out;
}

double QuaternionMatrix::max_abs() const {
  double best = 0.0;
  for (Eigen::Index r = 0; r < rows(); ++r)
    for (Eigen::Index c = 0; c < cols(); ++c) best = std::max(best, (*this)(r, c).norm());
  return best;
}

bool QuaternionMatrix::is_zero_j_part(double tol) const { return randers::max_abs(q2_) <= tol; }

// ---------------------------------------------------------------------------
// SymplecticMatrix

SymplecticResidual symplectic_residual(const QuaternionMatrix& q) {
  const auto n = q.cols();
  const CMatrix& q1 = q.q1();
  const CMatrix& q2 = q.q2();
  return {max_abs(q1.adjoint() * q2 - q2.transpose() * q1.conjugate()),
          max_abs(q1.adjoint() * q1 + q2.transpose() * q2.conjugate() - CMatrix::Identity(n, n))};
}

SymplecticMatrix SymplecticMatrix::make(QuaternionMatrix q) {
  if (q.rows() == 0 || q.rows() != q.cols()) throw Error(ErrorCode::InvalidInput, "symplectic matrix must be square");
  const auto res = symplectic_residual(q);
  if (!(res.off_diagonal <= tol::kUnitary) || !(res.unit <= tol::kUnitary)) {
    std::ostringstream os;
    os << "not in Sp(n): residuals " << res.off_diagonal << ", " << res.unit;
    throw Error(ErrorCode::InvalidInput, os.str());
  }
  return SymplecticMatrix(std::move(q));
}

SymplecticMatrix SymplecticMatrix::identity(Eigen::Index n) { return SymplecticMatrix(QuaternionMatrix::identity(n)); }

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& other) const {
  return SymplecticMatrix(q_ * other.q_);
}

SymplecticMatrix SymplecticMatrix::adjoint() const { return SymplecticMatrix(q_.adjoint()); }

SymplecticMatrix haar_symplectic(int n, RngStream& rng) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "haar_symplectic needs n >= 1");
  // Columns of a Gaussian quaternion matrix, orthonormalised with right scalars:
  // v <- v - q (q* v). Two passes keep the result orthonormal to ~1e-15.
  std::vector<HVector> cols(n, HVector(n));
  for (auto& c : cols)
    for (auto& e : c) e = {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
  for (int k = 0; k < n; ++k) {
    HVector& v = cols[k];
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < k; ++j) {
        Quaternion proj;  // q_j* v
        for (int r = 0; r < n; ++r) proj += cols[j][r].conj() * v[r];
        for (int r = 0; r < n; ++r) v[r] -= cols[j][r] * proj;
      }
    }
    const double len = norm(v);
    for (auto& e : v) e = (1.0 / len) * e;
  }
  QuaternionMatrix q = QuaternionMatrix::zero(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) q.set(r, c, cols[c][r]);
  return SymplecticMatrix::make(std::move(q));
}

QuaternionMatrix conjugate(const SymplecticMatrix& g, const QuaternionMatrix& x) {
  if (x.rows() != g.size() || x.cols() != g.size()) throw Error(ErrorCode::InvalidInput, "conjugate: shape mismatch");
  return g.matrix() * x * g.matrix().adjoint();
}

Quaternion rotation_between(Quaternion a, Quaternion b) {
  a = a.imag().normalized();
  b = b.imag().normalized();
  // tau = normalize(1 - b a) rotates a onto b; degenerate when b = -a.
  Quaternion tau = Quaternion{1.0, 0.0, 0.0, 0.0} - b * a;
  if (tau.norm() < 1e-8) {
    // Half turn about any axis orthogonal to a.
    Quaternion axis = std::abs(a.x) < 0.9 ? Quaternion::imaginary(1, 0, 0) : Quaternion::imaginary(0, 1, 0);
    Quaternion perp = axis - (axis.x * a.x + axis.y * a.y + axis.z * a.z) * a;
    return perp.normalized();
  }
  return tau.normalized();
}

}  // namespace randers
