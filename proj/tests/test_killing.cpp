#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "randers/killing.hpp"

using namespace randers;

namespace {

OrbitParams random_feasible(RngStream& rng, int max_size = 8) {
  OrbitParams p;
  p.l = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_size - 1));
  p.m = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_size - p.l));
  p.x2 = rng.uniform(0.3, 2.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
  // x1 strictly between the two roots -l x2 and m x2 of the feasibility product
  const double lo = std::min(-p.l * p.x2, p.m * p.x2), hi = std::max(-p.l * p.x2, p.m * p.x2);
  p.x1 = lo + (hi - lo) * rng.uniform(0.05, 0.95);
  p.L = rng.uniform(0.2, 3.0);
  return p;
}

// alpha^2 of the projection of U X U*, computed from the last row of U.
double alpha2_direct(const RandersSpec& s, const OrbitParams& p, const UnitaryMatrix& u, double& t) {
  const SkewHermitian x = orbit_generator(p);
  double q = 0.0, second = 0.0, w1 = 0.0, w2 = 0.0;
  const Eigen::Index last = p.l + p.m - 1;
  for (int k = 0; k < p.l + p.m; ++k) {
    const double w = std::norm(u.matrix()(last, k));
    const double lambda = x.matrix()(k, k).imag();
    q += w * lambda;
    second += w * lambda * lambda;
    (k < p.l ? w1 : w2) += w;
  }
  t = p.l * w2 - p.m * w1;
  return s.a * q * q + s.b * (second - q * q);
}

}  // namespace

TEST_SUITE("killing") {

TEST_CASE("closed form on the reference instance") {
  const OrbitParams p{1, 1, 0.5, 1.0, 1.0};
  const RandersSpec s = solve_metric(p);
  CHECK(s.a == doctest::Approx(16.0 / 9.0).epsilon(1e-15));
  CHECK(s.b == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(s.c == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
  const Quadratic f = f_poly(s, p);
  CHECK(f.k2 == doctest::Approx(4.0 / 9.0));
  CHECK(f.k1 == doctest::Approx(16.0 / 9.0));
  CHECK(f.k0 == doctest::Approx(16.0 / 9.0));
  const Quadratic r = constant_length_identity(s, p);
  CHECK(std::abs(r.k2) + std::abs(r.k1) + std::abs(r.k0) < 1e-14);
}

TEST_CASE("closed form on a second instance") {
  const RandersSpec s = solve_metric({2, 1, 0.0, 1.0, 1.0});
  CHECK(s.n == 2);
  CHECK(s.a == doctest::Approx(0.5625));
  CHECK(s.b == doctest::Approx(0.5));
  CHECK(s.c == doctest::Approx(-0.25));
}

TEST_CASE("infeasible parameters are rejected") {
  CHECK_THROWS_AS(solve_metric({1, 1, 2.0, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(solve_metric({1, 1, -1.0, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(solve_metric({1, 1, 0.0, 0.0, 1.0}), Error);
  CHECK_THROWS_AS(solve_metric({1, 1, 0.0, 1.0, -1.0}), Error);
  try {
    check_feasible({1, 1, 2.0, 1.0, 1.0});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfeasibleParams);
    CHECK(std::string(e.what()).find("(x1 - m*x2)(x1 + l*x2) < 0") != std::string::npos);
  }
}

TEST_CASE("f_poly matches alpha^2 sampled on the orbit") {
  RngStream rng(12);
  for (int rep = 0; rep < 20; ++rep) {
    const OrbitParams p = random_feasible(rng, 6);
    const RandersSpec s = RandersSpec::u_sphere(p.n(), rng.uniform(0.5, 3.0), rng.uniform(0.5, 3.0), 0.1);
    const Quadratic f = f_poly(s, p);
    for (int k = 0; k < 10; ++k) {
      double t = 0.0;
      const double direct = alpha2_direct(s, p, haar_unitary(p.l + p.m, rng), t);
      CHECK(t >= -p.m - 1e-12);
      CHECK(t <= p.l + 1e-12);
      CHECK(f.k2 * t * t + f.k1 * t + f.k0 == doctest::Approx(direct).epsilon(1e-11));
    }
  }
}

TEST_CASE("solve_metric round trip on random feasible parameters") {
  RngStream rng(13);
  for (int rep = 0; rep < 100; ++rep) {
    const OrbitParams p = random_feasible(rng);
    const RandersSpec s = solve_metric(p);
    CHECK(validate_spec(s).empty());
    CHECK(s.a == doctest::Approx(s.b + s.c * s.c));
    const Quadratic r = constant_length_identity(s, p);
    CHECK(std::max({std::abs(r.k2), std::abs(r.k1), std::abs(r.k0)}) <= 1e-10);
  }
}

TEST_CASE("scale law: L -> 2L quadruples a, b and doubles c") {
  RngStream rng(14);
  for (int rep = 0; rep < 20; ++rep) {
    OrbitParams p = random_feasible(rng);
    const RandersSpec s1 = solve_metric(p);
    p.L *= 2.0;
    const RandersSpec s2 = solve_metric(p);
    CHECK(s2.b == doctest::Approx(4.0 * s1.b));
    CHECK(s2.c == doctest::Approx(2.0 * s1.c));
    CHECK(s2.a == doctest::Approx(4.0 * s1.a));
  }
}

TEST_CASE("perturbing a adds delta q^2 to the identity") {
  RngStream rng(15);
  for (int rep = 0; rep < 20; ++rep) {
    const OrbitParams p = random_feasible(rng);
    RandersSpec s = solve_metric(p);
    const double delta = rng.uniform(1e-3, 1e-1);
    s.a += delta;
    // q = x1 + x2 t, so the residual is delta (x1 + x2 t)^2
    const Quadratic r = constant_length_identity(s, p);
    CHECK(r.k2 == doctest::Approx(delta * p.x2 * p.x2));
    CHECK(r.k1 == doctest::Approx(2.0 * delta * p.x1 * p.x2));
    CHECK(r.k0 == doctest::Approx(delta * p.x1 * p.x1));
  }
}

TEST_CASE("central phases and the root pair of sqrt(a)|x| + c x = L") {
  RngStream rng(16);
  for (int rep = 0; rep < 100; ++rep) {
    const double b = rng.uniform(0.2, 3.0), c = rng.uniform(-1.0, 1.0), L = rng.uniform(0.1, 3.0);
    const RandersSpec s = RandersSpec::u_sphere(2, b + c * c, b, c);
    const auto [xp, xm] = eq_root_pair(s, L);
    CHECK(xp > 0.0);
    CHECK(xm < 0.0);
    CHECK(std::sqrt(s.a) * std::abs(xp) + c * xp == doctest::Approx(L));
    CHECK(std::sqrt(s.a) * std::abs(xm) + c * xm == doctest::Approx(L));
    const auto [cp, cm] = central_kvf_phases(s, L);
    CHECK(std::abs(cp - xp) < 1e-10);
    CHECK(std::abs(cm - xm) < 1e-10);
    const KvfFamilies fam = kvf_families(s, L);
    CHECK(fam.two_eigenvalue.has_value());
  }
  const RandersSpec off = RandersSpec::u_sphere(2, 2.0, 1.0, 0.5);
  CHECK_THROWS_AS(central_kvf_phases(off, 1.0), Error);
  const KvfFamilies fam = kvf_families(off, 1.0);
  CHECK_FALSE(fam.two_eigenvalue.has_value());
  CHECK(std::sqrt(2.0) * fam.central.first + 0.5 * fam.central.first == doctest::Approx(1.0));
}

TEST_CASE("orbit sampling: constant for the solved spec, non-constant after perturbation") {
  RngStream rng(17);
  const OrbitParams p{2, 1, 0.3, 1.0, 1.0};
  RandersSpec s = solve_metric(p);
  const AlgebraElement x = AlgebraElement::unitary(orbit_generator(p));
  const ConstantLengthReport good = orbit_length_report(s, x, p.L, 500, rng);
  CHECK(good.verdict == Verdict::Constant);
  CHECK(good.mean == doctest::Approx(1.0));
  s.a += 1e-2;
  const ConstantLengthReport bad = orbit_length_report(s, x, p.L, 500, rng);
  CHECK(bad.verdict == Verdict::NonConstant);
  CHECK(bad.spread() >= kNonConstantGap);
  CHECK_THROWS_AS(orbit_length_report(s, x, p.L, 50, rng), Error);
}

TEST_CASE("S^3 spec from an offset round indicatrix") {
  RngStream rng(18);
  const Vec3 v{0.1, -0.2, 0.4};
  const RandersSpec s = su2_cw_spec(v, 1.0);
  CHECK(s.a == doctest::Approx(s.b + s.c * s.c));
  for (int i = 0; i < 50; ++i) {
    Vec3 d{rng.normal(), rng.normal(), rng.normal()};
    const double len = norm(d);
    // y with |y + V| = 1
    const Vec3 y{d[0] / len - v[0], d[1] / len - v[1], d[2] / len - v[2]};
    CHECK(randers_norm(s, TangentVector::su2(y)) == doctest::Approx(1.0).epsilon(1e-13));
  }
  CHECK_THROWS_AS(su2_cw_spec({1.0, 0.0, 0.0}, 1.0), Error);
}

TEST_CASE("SU(2) flows of unit X have constant length on the offset spec") {
  RngStream rng(19);
  const Vec3 v{0.0, 0.3, 0.0};
  const RandersSpec s = su2_cw_spec(v, 1.0);
  const ModelSpace m = model_space_of(s);
  const ConstantLengthReport r = orbit_length_report(m, s, AlgebraElement::su2({0.6, 0.0, 0.8}, 1.0), 1.0, 300, rng);
  CHECK(r.verdict == Verdict::Constant);
  CHECK(r.mean == doctest::Approx(1.0));
}

TEST_CASE("Sp witness pair gap equals 2|c||q|") {
  RngStream rng(20);
  for (int n = 1; n <= 3; ++n) {
    const RandersSpec s = RandersSpec::sp_sphere(n, 2.0, 1.5, 1.0, 0.7);
    for (int rep = 0; rep < 20; ++rep) {
      HVector d;
      for (int k = 0; k <= n; ++k) d.push_back(Quaternion::imaginary(rng.normal(), rng.normal(), rng.normal()));
      const WitnessPair w = sp_witness_pair(QuaternionMatrix::diagonal(d), s);
      double largest = 0.0;
      for (const auto& q : d) largest = std::max(largest, q.norm());
      CHECK(w.entry_norm == doctest::Approx(largest));
      CHECK(std::abs(w.gap() - 2.0 * std::abs(s.c) * w.entry_norm) < 1e-12);
      CHECK(std::abs(w.y1.q[0] - largest) < 1e-12);
      CHECK(std::abs(w.y2.q[0] + largest) < 1e-12);
    }
  }
  const RandersSpec flat = RandersSpec::sp_sphere(1, 2.0, 1.5, 1.0, 0.0);
  CHECK_THROWS_AS(sp_witness_pair(QuaternionMatrix::diagonal({kQuatI, kQuatJ}), flat), Error);
  CHECK_THROWS_AS(sp_witness_pair(QuaternionMatrix::zero(2, 2), RandersSpec::sp_sphere(1, 2.0, 1.5, 1.0, 0.5)), Error);
}

TEST_CASE("Sp scan: central generators constant, non-central ones not") {
  RngStream rng(21);
  const RandersSpec s = RandersSpec::sp_sphere(1, 2.0, 1.5, 1.0, 0.5);
  const AlgebraElement central = AlgebraElement::symplectic(QuaternionMatrix::zero(2, 2), 0.8);
  const AlgebraElement diag =
      AlgebraElement::symplectic(QuaternionMatrix::diagonal({0.3 * kQuatI, 0.9 * kQuatJ}), 0.2);
  const auto reports = sp_central_only_scan(s, {central, diag}, 300, rng, 1.0);
  CHECK(reports[0].spread() < 1e-12);
  CHECK(reports[0].mean == doctest::Approx(0.8 * (std::sqrt(2.0) + 0.5)));
  CHECK(reports[1].spread() >= kNonConstantGap);
  CHECK_THROWS_AS(sp_central_only_scan(RandersSpec::sp_sphere(1, 2.0, 1.0, 1.0, 0.5), {central}, 300, rng), Error);
}

}  // TEST_SUITE
