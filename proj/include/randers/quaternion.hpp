#pragma once

// Quaternions and quaternionic matrices in the complex-pair model
// Q = Q1 + Q2 j, with the complex unit i identified with the quaternion i.
// Scalars multiply on the right of column vectors, so the natural inner
// product is <x, y> = x* y.

#include <vector>

#include "randers/linalg.hpp"

namespace randers {

struct Quaternion {
  double w = 0.0;
  double x = 0.0;  // i
  double y = 0.0;  // j
  double z = 0.0;  // k

  static Quaternion from_pair(Complex c1, Complex c2) {
    return {c1.real(), c1.imag(), c2.real(), c2.imag()};
  }
  static Quaternion imaginary(double i, double j, double k) { return {0.0, i, j, k}; }

  /// q = c1 + c2 j
  Complex c1() const { return {w, x}; }
  Complex c2() const { return {y, z}; }

  Quaternion conj() const { return {w, -x, -y, -z}; }
  double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const;
  Quaternion imag() const { return {0.0, x, y, z}; }
  /// Throws InvalidInput for the zero quaternion.
  Quaternion normalized() const;

  friend Quaternion operator+(Quaternion a, Quaternion b) { return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Quaternion operator-(Quaternion a, Quaternion b) { return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Quaternion operator-(Quaternion a) { return {-a.w, -a.x, -a.y, -a.z}; }
  friend Quaternion operator*(double s, Quaternion a) { return {s * a.w, s * a.x, s * a.y, s * a.z}; }
  friend Quaternion operator*(Quaternion a, Quaternion b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
  Quaternion& operator+=(Quaternion b) { return *this = *this + b; }
  Quaternion& operator-=(Quaternion b) { return *this = *this - b; }
};

inline const Quaternion kQuatI{0.0, 1.0, 0.0, 0.0};
inline const Quaternion kQuatJ{0.0, 0.0, 1.0, 0.0};
inline const Quaternion kQuatK{0.0, 0.0, 0.0, 1.0};

/// Quaternionic row or column vector.
using HVector = std::vector<Quaternion>;

/// sum_k x_k conj(y_k): the inner product of row vectors.
Quaternion row_inner(const HVector& x, const HVector& y);
double norm(const HVector& x);

class QuaternionMatrix {
 public:
  QuaternionMatrix() = default;
  /// Throws InvalidInput if the shapes differ.
  QuaternionMatrix(CMatrix q1, CMatrix q2);

  static QuaternionMatrix zero(Eigen::Index rows, Eigen::Index cols);
  static QuaternionMatrix identity(Eigen::Index n);
  static QuaternionMatrix from_complex(const CMatrix& q1);
  static QuaternionMatrix from_rows(const std::vector<HVector>& rows);
  static QuaternionMatrix diagonal(const HVector& entries);

  const CMatrix& q1() const { return q1_; }
  const CMatrix& q2() const { return q2_; }
  Eigen::Index rows() const { return q1_.rows(); }
  Eigen::Index cols() const { return q1_.cols(); }

  Quaternion operator()(Eigen::Index r, Eigen::Index c) const {
    return Quaternion::from_pair(q1_(r, c), q2_(r, c));
  }
  void set(Eigen::Index r, Eigen::Index c, Quaternion q);

  HVector row(Eigen::Index r) const;
  HVector col(Eigen::Index c) const;

  /// (A1 + A2 j)(B1 + B2 j) = (A1 B1 - A2 conj(B2)) + (A1 B2 + A2 conj(B1)) j
  QuaternionMatrix operator*(const QuaternionMatrix& b) const;
  QuaternionMatrix operator+(const QuaternionMatrix& b) const;
  QuaternionMatrix operator-(const QuaternionMatrix& b) const;
  QuaternionMatrix operator*(double s) const;
  /// Q* = Q1* - Q2^T j
  QuaternionMatrix adjoint() const;
  /// Left multiplication of every entry by a quaternion scalar.
  QuaternionMatrix left_scaled(Quaternion s) const;

  double max_abs() const;
  bool is_zero_j_part(double tol) const;

 private:
  CMatrix q1_;
  CMatrix q2_;
};

class SymplecticMatrix {
 public:
  /// Checks Q1* Q2 - Q2^T conj(Q1) = 0 and Q1* Q1 + Q2^T conj(Q2) = I within
  /// tol::kUnitary; throws InvalidInput otherwise.
  static SymplecticMatrix make(QuaternionMatrix q);
  static SymplecticMatrix identity(Eigen::Index n);

  const QuaternionMatrix& matrix() const { return q_; }
  Eigen::Index size() const { return q_.rows(); }

  SymplecticMatrix operator*(const SymplecticMatrix& other) const;
  SymplecticMatrix adjoint() const;

 private:
  explicit SymplecticMatrix(QuaternionMatrix q) : q_(std::move(q)) {}
  QuaternionMatrix q_;
};

/// Residuals of the two defining conditions of Sp(n), as max-abs entries.
struct SymplecticResidual {
  double off_diagonal;  // Q1* Q2 - Q2^T conj(Q1)
  double unit;          // Q1* Q1 + Q2^T conj(Q2) - I
};
SymplecticResidual symplectic_residual(const QuaternionMatrix& q);

/// Haar element of Sp(n) from quaternionic Gram-Schmidt on a Gaussian matrix.
SymplecticMatrix haar_symplectic(int n, RngStream& rng);

/// Ad action g X g*.
QuaternionMatrix conjugate(const SymplecticMatrix& g, const QuaternionMatrix& x);

/// Unit quaternion tau with tau a conj(tau) = b for unit imaginary a, b.
Quaternion rotation_between(Quaternion a, Quaternion b);

}  // namespace randers
