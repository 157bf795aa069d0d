#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "randers/linalg.hpp"
#include "randers/quaternion.hpp"

using namespace randers;

TEST_SUITE("matrixcore") {

TEST_CASE("skew-Hermitian construction enforces A* = -A") {
  CMatrix a(2, 2);
  a << Complex(0, 1), Complex(1, 2), Complex(-1, 2), Complex(0, -3);
  CHECK_NOTHROW(SkewHermitian::make(a));
  a(0, 1) += 1e-9;
  CHECK_THROWS_AS(SkewHermitian::make(a), Error);
  CMatrix rect = CMatrix::Zero(2, 3);
  CHECK_THROWS_AS(SkewHermitian::make(rect), Error);
}

TEST_CASE("unitary construction checks U*U = I") {
  CHECK_NOTHROW(UnitaryMatrix::identity(3));
  CMatrix u = CMatrix::Identity(2, 2);
  u(0, 0) = 1.0 + 1e-8;
  CHECK_THROWS_AS(UnitaryMatrix::make(u), Error);
}

TEST_CASE("expm_skew matches a Taylor oracle") {
  RngStream rng(11);
  for (int n : {1, 2, 3, 5, 8}) {
    for (int rep = 0; rep < 5; ++rep) {
      const CMatrix a = oracle::random_skew(n, rng);
      const double t = rng.uniform(-2.0, 2.0);
      const UnitaryMatrix e = expm_skew(SkewHermitian::make(a), t);
      CHECK(oracle::max_abs(e.matrix() - oracle::expm_taylor(t * a)) < 1e-11);
      CHECK(oracle::max_abs(e.matrix().adjoint() * e.matrix() - CMatrix::Identity(n, n)) < 1e-13);
    }
  }
}

TEST_CASE("expm_skew of i*diag gives the exact phases") {
  const UnitaryMatrix e = expm_skew(SkewHermitian::diagonal({0.4, -0.2}), 1.0);
  CHECK(std::abs(e.matrix()(0, 0) - std::polar(1.0, 0.4)) < 1e-15);
  CHECK(std::abs(e.matrix()(1, 1) - std::polar(1.0, -0.2)) < 1e-15);
  CHECK(std::abs(e.matrix()(0, 1)) < 1e-15);
}

TEST_CASE("exp(pi X) = -I for unit X in su(2)") {
  CMatrix x(2, 2);
  // 0.6 i + 0.8 k in the basis i -> diag(i,-i), k -> [[0,i],[i,0]]
  x << Complex(0, 0.6), Complex(0, 0.8), Complex(0, 0.8), Complex(0, -0.6);
  const UnitaryMatrix e = expm_skew(SkewHermitian::make(x), kPi);
  CHECK(max_abs(e.matrix() + CMatrix::Identity(2, 2)) < 1e-14);
}

TEST_CASE("principal phase branch is (-pi, pi]") {
  CHECK(principal_phase(-kPi) == doctest::Approx(kPi));
  CHECK(principal_phase(kPi) == doctest::Approx(kPi));
  CHECK(principal_phase(1.5 * kPi) == doctest::Approx(-0.5 * kPi));
  CHECK(principal_phase(-kPi + 1e-13) == doctest::Approx(kPi));
  CHECK(principal_phase(-kPi + 1e-6) == doctest::Approx(-kPi + 1e-6));
  CHECK(principal_phase(7.0) == doctest::Approx(7.0 - 2 * kPi));
}

TEST_CASE("unitary_phases are sorted principal phases") {
  CMatrix d = CMatrix::Zero(3, 3);
  d(0, 0) = std::polar(1.0, 2.5);
  d(1, 1) = std::polar(1.0, -1.0);
  d(2, 2) = -1.0;
  RngStream rng(3);
  const UnitaryMatrix g = haar_unitary(3, rng);
  const auto phases = unitary_phases(UnitaryMatrix::make(g.matrix() * d * g.matrix().adjoint()));
  REQUIRE(phases.size() == 3);
  CHECK(phases[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(phases[1] == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(phases[2] == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("Haar unitary moments: E tr U = 0 and E|tr U|^2 = 1") {
  RngStream rng(2024);
  const int samples = 4000;
  for (int n : {2, 3, 5}) {
    Complex mean = 0.0;
    double second = 0.0;
    for (int s = 0; s < samples; ++s) {
      const Complex tr = haar_unitary(n, rng).matrix().trace();
      mean += tr;
      second += std::norm(tr);
    }
    mean /= samples;
    second /= samples;
    // Var |tr U|^2 = 1 for n >= 2, so five standard errors is 5/sqrt(4000).
    CHECK(std::abs(second - 1.0) < 0.08);
    CHECK(std::abs(mean) < 0.08);
  }
}

TEST_CASE("Haar unitary phases are uniform on the circle") {
  RngStream rng(99);
  std::vector<int> bins(8, 0);
  int total = 0;
  for (int s = 0; s < 2000; ++s) {
    for (double p : unitary_phases(haar_unitary(3, rng))) {
      const int b = std::min(7, static_cast<int>((p + kPi) / (2 * kPi) * 8));
      ++bins[b];
      ++total;
    }
  }
  for (int b : bins) CHECK(std::abs(b - total / 8.0) < 5 * std::sqrt(total / 8.0));
}

TEST_CASE("RngStream replays and derives independent streams") {
  RngStream a(5), b(5);
  for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());
  const RngStream base(7);
  RngStream d0 = base.derive(0), d0b = base.derive(0), d1 = base.derive(1);
  CHECK(d0.next_u64() == d0b.next_u64());
  CHECK(d0.uniform() != d1.uniform());
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) sum += std::norm(a.complex_normal());
  CHECK(sum / 20000 == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("conjugation keeps skewness and the spectrum") {
  RngStream rng(8);
  const SkewHermitian x = SkewHermitian::make(oracle::random_skew(4, rng));
  const UnitaryMatrix g = haar_unitary(4, rng);
  const SkewHermitian y = conjugate(g, x);
  CHECK(max_abs(y.matrix() + y.matrix().adjoint()) <= tol::kSkew);
  Eigen::SelfAdjointEigenSolver<CMatrix> ex(Complex(0, -1) * x.matrix()), ey(Complex(0, -1) * y.matrix());
  CHECK((ex.eigenvalues() - ey.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Hamilton product agrees with the complex pair model") {
  RngStream rng(1);
  for (int i = 0; i < 50; ++i) {
    const Quaternion p{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    const Quaternion q{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    const QuaternionMatrix mp = QuaternionMatrix::diagonal({p}), mq = QuaternionMatrix::diagonal({q});
    const Quaternion viaMatrix = (mp * mq)(0, 0);
    const Quaternion direct = p * q;
    CHECK((viaMatrix - direct).norm() < 1e-13);
  }
  CHECK((kQuatI * kQuatJ - kQuatK).norm() == 0.0);
  CHECK((kQuatJ * kQuatI + kQuatK).norm() == 0.0);
  CHECK((kQuatJ * kQuatK - kQuatI).norm() == 0.0);
}

TEST_CASE("quaternion matrix product and adjoint match the complex embedding") {
  RngStream rng(21);
  for (int n : {1, 2, 4}) {
    const QuaternionMatrix a(oracle::random_complex(n, n, rng), oracle::random_complex(n, n, rng));
    const QuaternionMatrix b(oracle::random_complex(n, n, rng), oracle::random_complex(n, n, rng));
    CHECK(oracle::max_abs(oracle::complex_embedding(a * b) -
                          oracle::complex_embedding(a) * oracle::complex_embedding(b)) < 1e-12);
    CHECK(oracle::max_abs(oracle::complex_embedding(a.adjoint()) - oracle::complex_embedding(a).adjoint()) < 1e-15);
  }
}

TEST_CASE("Haar symplectic: group conditions, embedding unitary, trace moment") {
  RngStream rng(77);
  for (int n : {1, 2, 3, 4}) {
    const SymplecticMatrix q = haar_symplectic(n, rng);
    const auto res = symplectic_residual(q.matrix());
    CHECK(res.off_diagonal < 1e-12);
    CHECK(res.unit < 1e-12);
    const CMatrix e = oracle::complex_embedding(q.matrix());
    CHECK(oracle::max_abs(e.adjoint() * e - CMatrix::Identity(2 * n, 2 * n)) < 1e-12);
  }
  // The defining 2n-dimensional representation is irreducible: E|tr|^2 = 1.
  double second = 0.0;
  const int samples = 4000;
  for (int s = 0; s < samples; ++s) {
    const double tr = 2.0 * haar_symplectic(2, rng).matrix().q1().trace().real();
    second += tr * tr;
  }
  CHECK(std::abs(second / samples - 1.0) < 0.1);
}

TEST_CASE("SymplecticMatrix rejects a non-symplectic matrix") {
  QuaternionMatrix q = QuaternionMatrix::identity(2);
  q.set(0, 1, Quaternion{0.0, 0.0, 0.1, 0.0});
  CHECK_THROWS_AS(SymplecticMatrix::make(q), Error);
  CHECK_NOTHROW(SymplecticMatrix::make(QuaternionMatrix::diagonal({kQuatJ, kQuatK})));
}

TEST_CASE("symplectic conjugation matches the embedding and keeps X skew") {
  RngStream rng(4);
  const SymplecticMatrix g = haar_symplectic(3, rng);
  const CMatrix h = oracle::random_skew(6, rng);
  // A skew quaternion matrix: take the quaternionic part of a random u(6) element.
  QuaternionMatrix x(0.5 * (h.topLeftCorner(3, 3) + h.bottomRightCorner(3, 3).conjugate()),
                     0.5 * (h.topRightCorner(3, 3) - h.bottomLeftCorner(3, 3).conjugate()));
  const QuaternionMatrix y = conjugate(g, x);
  const CMatrix eg = oracle::complex_embedding(g.matrix());
  CHECK(oracle::max_abs(oracle::complex_embedding(y) - eg * oracle::complex_embedding(x) * eg.adjoint()) < 1e-12);
  CHECK((y + y.adjoint()).max_abs() < 1e-12);
}

TEST_CASE("rotation_between maps one imaginary unit to another") {
  RngStream rng(6);
  for (int i = 0; i < 20; ++i) {
    const Quaternion a = Quaternion::imaginary(rng.normal(), rng.normal(), rng.normal()).normalized();
    const Quaternion b = Quaternion::imaginary(rng.normal(), rng.normal(), rng.normal()).normalized();
    const Quaternion tau = rotation_between(a, b);
    CHECK(std::abs(tau.norm() - 1.0) < 1e-14);
    CHECK((tau * a * tau.conj() - b).norm() < 1e-13);
  }
  const Quaternion flip = rotation_between(kQuatI, -1.0 * kQuatI);
  CHECK((flip * kQuatI * flip.conj() + kQuatI).norm() < 1e-14);
}

}  // TEST_SUITE
