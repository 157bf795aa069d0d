#pragma once

// Dense complex matrix algebra on the unitary group: checked wrappers for
// skew-Hermitian and unitary matrices, the exponential of a skew-Hermitian
// matrix, eigenphase extraction, Haar sampling and the adjoint action.

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "randers/error.hpp"

namespace randers {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

namespace tol {
inline constexpr double kSkew = 1e-12;       // A + A* at construction
inline constexpr double kUnitary = 1e-10;    // U*U - I at construction
inline constexpr double kIdentity = 1e-9;    // algebraic identities
}  // namespace tol

/// Largest absolute entry; the norm every tolerance in this library refers to.
double max_abs(const CMatrix& m);

/// Deterministic pseudo-random stream. Copies replay the same samples; use
/// derive() to split independent streams for parallel trials.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  double uniform();   // [0, 1)
  double uniform(double lo, double hi);
  double normal();    // standard normal
  /// Circular complex Gaussian with E|z|^2 = 1.
  Complex complex_normal();
  std::uint64_t next_u64();

  /// Independent stream keyed by (seed, index); does not advance *this.
  RngStream derive(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

class SkewHermitian {
 public:
  /// Throws InvalidInput when the matrix is not square, has non-finite
  /// entries or max|A + A*| > tol::kSkew.
  static SkewHermitian make(CMatrix a);
  /// i * diag(phases)
  static SkewHermitian diagonal(const std::vector<double>& phases);

  const CMatrix& matrix() const { return a_; }
  Eigen::Index size() const { return a_.rows(); }

 private:
  explicit SkewHermitian(CMatrix a) : a_(std::move(a)) {}
  CMatrix a_;
};

class UnitaryMatrix {
 public:
  /// Throws InvalidInput unless square, finite and max|U*U - I| <= tol::kUnitary.
  static UnitaryMatrix make(CMatrix u);
  static UnitaryMatrix identity(Eigen::Index n);

  const CMatrix& matrix() const { return u_; }
  Eigen::Index size() const { return u_.rows(); }

  UnitaryMatrix operator*(const UnitaryMatrix& other) const;
  UnitaryMatrix adjoint() const;

 private:
  explicit UnitaryMatrix(CMatrix u) : u_(std::move(u)) {}
  CMatrix u_;
};

/// exp(tA) through the eigendecomposition of the Hermitian matrix -iA, so the
/// result is unitary to machine precision and its phases are exactly t*w_k.
UnitaryMatrix expm_skew(const SkewHermitian& a, double t);

/// Principal eigenphases in (-pi, pi], sorted ascending. Phases within
/// 1e-12 of -pi are reported as +pi.
std::vector<double> unitary_phases(const UnitaryMatrix& u);

/// Eigenvalues of a unitary matrix (unsorted, as returned by the Schur solver).
std::vector<Complex> unitary_eigenvalues(const CMatrix& u);

/// Maps an angle onto (-pi, pi] with the boundary convention above.
double principal_phase(double angle);

/// Haar-distributed element of U(n): QR of a complex Ginibre matrix with the
/// columns of Q rotated by the phases of diag(R).
UnitaryMatrix haar_unitary(int n, RngStream& rng);

/// Ad action g X g*.
SkewHermitian conjugate(const UnitaryMatrix& g, const SkewHermitian& x);
CMatrix conjugate(const UnitaryMatrix& g, const CMatrix& x);

}  // namespace randers
