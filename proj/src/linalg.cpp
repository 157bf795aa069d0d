#include "randers/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace randers {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InfeasibleParams: return "InfeasibleParams";
    case ErrorCode::NotKvfAdmissible: return "NotKvfAdmissible";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::BranchUndefined: return "BranchUndefined";
    case ErrorCode::TrackingFailed: return "TrackingFailed";
    case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
  }
  return "Unknown";
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool all_finite(const CMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

void require_square_finite(const CMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << " must be square and non-empty, got " << m.rows() << "x" << m.cols();
    throw Error(ErrorCode::InvalidInput, os.str());
  }
  if (!all_finite(m)) throw Error(ErrorCode::InvalidInput, std::string(what) + " has non-finite entries");
}

}  // namespace

// ---------------------------------------------------------------------------
// RngStream

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

double RngStream::uniform() { return uniform_(engine_); }

double RngStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform_(engine_); }

double RngStream::normal() { return normal_(engine_); }

Complex RngStream::complex_normal() {
  const double s = std::sqrt(0.5);
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {s * re, s * im};
}

std::uint64_t RngStream::next_u64() { return engine_(); }

RngStream RngStream::derive(std::uint64_t index) const {
  return RngStream(splitmix64(seed_ ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

// ---------------------------------------------------------------------------
// SkewHermitian / UnitaryMatrix

SkewHermitian SkewHermitian::make(CMatrix a) {
  require_square_finite(a, "skew-Hermitian matrix");
  const double defect = max_abs(a + a.adjoint());
  if (defect > tol::kSkew) {
    std::ostringstream os;
    os << "max|A + A*| = " << defect << " exceeds " << tol::kSkew;
    throw Error(ErrorCode::InvalidInput, os.str());
  }
  return SkewHermitian(std::move(a));
}

SkewHermitian SkewHermitian::diagonal(const std::vector<double>& phases) {
  CMatrix a = CMatrix::Zero(static_cast<Eigen::Index>(phases.size()), static_cast<Eigen::Index>(phases.size()));
  for (std::size_t k = 0; k < phases.size(); ++k) a(k, k) = Complex(0.0, phases[k]);
  return make(std::move(a));
}

UnitaryMatrix UnitaryMatrix::make(CMatrix u) {
  require_square_finite(u, "unitary matrix");
  const auto n = u.rows();
  const double defect = max_abs(u.adjoint() * u - CMatrix::Identity(n, n));
  if (defect > tol::kUnitary) {
    std::ostringstream os;
    os << "max|U*U - I| = " << defect << " exceeds " << tol::kUnitary;
    throw Error(ErrorCode::InvalidInput, os.str());
  }
  return UnitaryMatrix(std::move(u));
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index n) { return UnitaryMatrix(CMatrix::Identity(n, n)); }

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& other) const {
  if (size() != other.size()) throw Error(ErrorCode::InvalidInput, "unitary product shape mismatch");
  return UnitaryMatrix(u_ * other.u_);
}

UnitaryMatrix UnitaryMatrix::adjoint() const { return UnitaryMatrix(u_.adjoint()); }

// ---------------------------------------------------------------------------

UnitaryMatrix expm_skew(const SkewHermitian& a, double t) {
  if (!std::isfinite(t)) throw Error(ErrorCode::InvalidInput, "non-finite time in expm_skew");
  const CMatrix h = Complex(0.0, -1.0) * a.matrix();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const Eigen::VectorXd& w = es.eigenvalues();
  const CMatrix& v = es.eigenvectors();
  CVector phase(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phase(k) = std::polar(1.0, t * w(k));
  return UnitaryMatrix::make(v * phase.asDiagonal() * v.adjoint());
}

double principal_phase(double angle) {
  double a = std::remainder(angle, 2.0 * kPi);
  if (a <= -kPi + 1e-12) a = kPi;
  return a;
}

std::vector<Complex> unitary_eigenvalues(const CMatrix& u) {
  Eigen::ComplexEigenSolver<CMatrix> ces(u, false);
  const CVector& ev = ces.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> unitary_phases(const UnitaryMatrix& u) {
  std::vector<double> phases;
  for (Complex z : unitary_eigenvalues(u.matrix())) phases.push_back(principal_phase(std::arg(z)));
  std::sort(phases.begin(), phases.end());
  return phases;
}

UnitaryMatrix haar_unitary(int n, RngStream& rng) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "haar_unitary needs n >= 1");
  CMatrix g(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) g(r, c) = rng.complex_normal();
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix& packed = qr.matrixQR();
  for (int k = 0; k < n; ++k) {
    const Complex rkk = packed(k, k);
    const double mag = std::abs(rkk);
    q.col(k) *= (mag > 0.0) ? rkk / mag : Complex(1.0, 0.0);
  }
  return UnitaryMatrix::make(std::move(q));
}

CMatrix conjugate(const UnitaryMatrix& g, const CMatrix& x) {
  if (x.rows() != g.size() || x.cols() != g.size())
    throw Error(ErrorCode::InvalidInput, "conjugate: shape mismatch");
  return g.matrix() * x * g.matrix().adjoint();
}

SkewHermitian conjugate(const UnitaryMatrix& g, const SkewHermitian& x) {
  CMatrix y = conjugate(g, x.matrix());
  // Restore exact skewness lost to rounding in the triple product.
  CMatrix skew = 0.5 * (y - y.adjoint());
  return SkewHermitian::make(std::move(skew));
}

}  // namespace randers
