#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "randers/cosets.hpp"
#include "randers/killing.hpp"

using namespace randers;

namespace {

Quaternion random_quaternion(RngStream& rng) { return {rng.normal(), rng.normal(), rng.normal(), rng.normal()}; }

HVector random_unit_hvector(int n, RngStream& rng) {
  HVector v;
  for (int k = 0; k < n; ++k) v.push_back(random_quaternion(rng));
  const double len = norm(v);
  for (auto& x : v) x = (1.0 / len) * x;
  return v;
}

double distance(const TangentVector& a, const TangentVector& b) { return (a - b).eq_norm(); }

}  // namespace

TEST_SUITE("cosets") {

TEST_CASE("model spaces and their dimensions") {
  CHECK(ModelSpace::u_sphere(1).dimension() == 3);
  CHECK(ModelSpace::u_sphere(3).dimension() == 7);
  CHECK(ModelSpace::sp_sphere(1).dimension() == 7);
  CHECK(ModelSpace::su2({0, 0, 0}).dimension() == 3);
  const RandersSpec cw = RandersSpec::su2(2.0, 1.0, 1.0, {0.0, 0.0, 1.0});
  const ModelSpace m = model_space_of(cw);
  CHECK(m.v[2] == doctest::Approx(1.0));
}

TEST_CASE("su(2) coordinates: orthonormal basis for <A,B> = -tr(AB)/2") {
  const Vec3 e[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const Complex inner = -0.5 * (su2_matrix(e[a]) * su2_matrix(e[b])).trace();
      CHECK(std::abs(inner - (a == b ? 1.0 : 0.0)) < 1e-15);
    }
  }
  // i j = k holds for the matrices
  CHECK(max_abs(su2_matrix(e[0]) * su2_matrix(e[1]) - su2_matrix(e[2])) < 1e-15);
  const Vec3 c{0.3, -1.2, 0.7};
  const Vec3 back = su2_coords(su2_matrix(c));
  for (int k = 0; k < 3; ++k) CHECK(back[k] == doctest::Approx(c[k]));
}

TEST_CASE("U-family projection reads the last column") {
  const AlgebraElement x = AlgebraElement::unitary(SkewHermitian::diagonal({-0.5, 1.5}));
  const TangentVector y = project_to_m(ModelSpace::u_sphere(1), x);
  CHECK(y.q[0] == doctest::Approx(1.5));
  CHECK(y.u.norm() == 0.0);
  CHECK_THROWS_AS(project_to_m(ModelSpace::u_sphere(2), x), Error);
}

TEST_CASE("projection of a conjugate: q is a convex combination of eigenvalues") {
  RngStream rng(3);
  const std::vector<double> lambda{-1.0, 0.5, 2.0};
  const AlgebraElement x = AlgebraElement::unitary(SkewHermitian::diagonal(lambda));
  for (int i = 0; i < 50; ++i) {
    const UnitaryMatrix g = haar_unitary(3, rng);
    const TangentVector y = project_to_m(ModelSpace::u_sphere(2), conjugate(g, x));
    double q = 0.0, second = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double w = std::norm(g.matrix()(2, k));
      q += w * lambda[k];
      second += w * lambda[k] * lambda[k];
    }
    CHECK(y.q[0] == doctest::Approx(q).epsilon(1e-12));
    CHECK(y.u.squaredNorm() + q * q == doctest::Approx(second).epsilon(1e-12));
  }
}

TEST_CASE("two-eigenvalue orbit projects onto a round sphere in <,>_eq") {
  RngStream rng(31);
  for (const OrbitParams p : {OrbitParams{1, 1, 0.5, 1.0, 1.0}, OrbitParams{2, 3, -0.4, 0.7, 1.0},
                              OrbitParams{3, 1, 1.2, -0.9, 1.0}}) {
    const int size = p.l + p.m;
    const double lo = std::min(p.x1 - p.m * p.x2, p.x1 + p.l * p.x2);
    const double hi = std::max(p.x1 - p.m * p.x2, p.x1 + p.l * p.x2);
    const double center = p.x1 + 0.5 * (p.l - p.m) * p.x2;
    const double radius = 0.5 * size * std::abs(p.x2);
    const auto ys = orbit_projection_sample(ModelSpace::u_sphere(size - 1),
                                            AlgebraElement::unitary(orbit_generator(p)), 2000, rng);
    for (const auto& y : ys) {
      CHECK(y.q[0] >= lo - 1e-12);
      CHECK(y.q[0] <= hi + 1e-12);
      CHECK(std::hypot(y.q[0] - center, y.u.norm()) == doctest::Approx(radius).epsilon(1e-12));
    }
  }
}

TEST_CASE("isotropy acts on m1 and fixes m0") {
  RngStream rng(4);
  const AlgebraElement x = AlgebraElement::unitary(SkewHermitian::make(oracle::random_skew(3, rng)));
  const TangentVector y = project_to_m(ModelSpace::u_sphere(2), x);
  CMatrix h = CMatrix::Identity(3, 3);
  h.topLeftCorner(2, 2) = haar_unitary(2, rng).matrix();
  const TangentVector z = project_to_m(ModelSpace::u_sphere(2), conjugate(UnitaryMatrix::make(h), x));
  CHECK(z.q[0] == doctest::Approx(y.q[0]));
  CHECK(z.u.norm() == doctest::Approx(y.u.norm()));
  CHECK((z.u - h.topLeftCorner(2, 2) * y.u).norm() < 1e-12);
}

TEST_CASE("SU2 projection subtracts the isotropy component") {
  const ModelSpace m = ModelSpace::su2({0.0, 0.0, 0.5});
  const TangentVector y = project_to_m(m, AlgebraElement::su2({1.0, 0.0, 0.0}, 2.0));
  CHECK(y.q[0] == doctest::Approx(1.0));
  CHECK(y.q[2] == doctest::Approx(-1.0));
}

TEST_CASE("Sp projection adds the scalar along i") {
  const AlgebraElement x = AlgebraElement::symplectic(QuaternionMatrix::diagonal({kQuatJ, kQuatK}), 0.25);
  const TangentVector y = project_to_m(ModelSpace::sp_sphere(1), x);
  CHECK(y.q[0] == doctest::Approx(0.25));
  CHECK(y.q[1] == doctest::Approx(0.0));
  CHECK(y.q[2] == doctest::Approx(1.0));
  CHECK(y.u.norm() == 0.0);
  QuaternionMatrix bad = QuaternionMatrix::identity(2);
  CHECK_THROWS_AS(AlgebraElement::symplectic(bad, 0.0), Error);
}

TEST_CASE("symplectic_completion: prescribed last row, real q' on top") {
  RngStream rng(5);
  for (int size : {1, 2, 3, 4}) {
    for (int rep = 0; rep < 20; ++rep) {
      const HVector row = random_unit_hvector(size, rng);
      const SymplecticMatrix q = symplectic_completion(row);
      const auto res = symplectic_residual(q.matrix());
      CHECK(res.off_diagonal < 1e-10);
      CHECK(res.unit < 1e-10);
      for (int k = 0; k < size; ++k) CHECK((q.matrix()(size - 1, k) - row[k]).norm() < 1e-14);
      if (size > 1) {
        const Quaternion top = q.matrix()(0, size - 1);
        CHECK(std::abs(top.x) + std::abs(top.y) + std::abs(top.z) < 1e-12);
        for (int r = 1; r < size - 1; ++r) CHECK(q.matrix()(r, size - 1).norm() < 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(symplectic_completion({Quaternion{0.5, 0, 0, 0}}), Error);
}

TEST_CASE("closed-form Sp orbit projection equals the direct projection") {
  RngStream rng(6);
  for (int n : {1, 2, 3}) {
    for (int rep = 0; rep < 30; ++rep) {
      const HVector w = random_unit_hvector(n, rng);
      Quaternion q = random_quaternion(rng);
      q = (rng.uniform() / q.norm()) * q;
      const double s = std::sqrt(1.0 - q.norm2());
      HVector row;
      for (const auto& wk : w) row.push_back(s * wk);
      row.push_back(q);
      const double xp = rng.uniform(-2.0, 2.0), x = rng.uniform(-2.0, 2.0);
      const SymplecticMatrix g = symplectic_completion(row);
      const AlgebraElement e = AlgebraElement::symplectic(QuaternionMatrix::identity(n + 1).left_scaled(xp * kQuatI), x);
      const TangentVector direct = project_to_m(ModelSpace::sp_sphere(n), conjugate(g, e));
      const TangentVector closed = sp_orbit_projection(xp, x, q, w);
      CHECK(distance(direct, closed) < 1e-11);
    }
  }
}

TEST_CASE("orbit sampling is reproducible under a fixed seed") {
  const AlgebraElement x = AlgebraElement::unitary(SkewHermitian::diagonal({-0.5, 1.5}));
  RngStream a(42), b(42), c(43);
  const auto sa = orbit_projection_sample(ModelSpace::u_sphere(1), x, 10, a);
  const auto sb = orbit_projection_sample(ModelSpace::u_sphere(1), x, 10, b);
  const auto sc = orbit_projection_sample(ModelSpace::u_sphere(1), x, 10, c);
  for (int k = 0; k < 10; ++k) CHECK(distance(sa[k], sb[k]) == 0.0);
  CHECK(distance(sa[0], sc[0]) > 0.0);
}

TEST_CASE("Weyl group elements permute and flip diagonal entries") {
  const AlgebraElement x = AlgebraElement::unitary(SkewHermitian::diagonal({1.0, 2.0, 3.0}));
  const AlgebraElement y = conjugate(permutation_unitary({2, 0, 1}), x);
  CHECK(y.x.q1()(2, 2).imag() == doctest::Approx(1.0));
  CHECK(y.x.q1()(0, 0).imag() == doctest::Approx(2.0));
  const AlgebraElement sp =
      AlgebraElement::symplectic(QuaternionMatrix::diagonal({0.7 * kQuatI, -0.2 * kQuatI}), 0.0);
  const AlgebraElement flipped = conjugate(weyl_sign_flip(2, 1), sp);
  CHECK((flipped.x(1, 1) - 0.2 * kQuatI).norm() < 1e-15);
  CHECK((flipped.x(0, 0) - 0.7 * kQuatI).norm() < 1e-15);
  const AlgebraElement swapped = conjugate(permutation_symplectic({1, 0}), sp);
  CHECK((swapped.x(0, 0) + 0.2 * kQuatI).norm() < 1e-15);
}

}  // TEST_SUITE
