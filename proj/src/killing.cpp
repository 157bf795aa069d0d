#include "randers/killing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace randers {

double OrbitParams::orbit_center() const { return 0.5 * (l - m) * x2 + x1; }

double OrbitParams::orbit_radius() const { return 0.5 * (n() + 1) * std::abs(x2); }

void check_feasible(const OrbitParams& p) {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::InfeasibleParams, why); };
  if (p.l < 1 || p.m < 1) fail("l and m must be positive integers");
  if (!std::isfinite(p.x1) || !std::isfinite(p.x2) || !std::isfinite(p.L)) fail("non-finite orbit parameters");
  if (p.x2 == 0.0) fail("x2 != 0 is required");
  if (!(p.L > 0.0)) fail("L > 0 is required");
  const double prod = (p.x1 - p.m * p.x2) * (p.x1 + p.l * p.x2);
  if (!(prod < 0.0)) {
    std::ostringstream os;
    os << "(x1 - m*x2)(x1 + l*x2) < 0 violated: product = " << prod;
    fail(os.str());
  }
}

SkewHermitian orbit_generator(const OrbitParams& p) {
  std::vector<double> phases;
  for (int k = 0; k < p.l; ++k) phases.push_back(p.x1 - p.m * p.x2);
  for (int k = 0; k < p.m; ++k) phases.push_back(p.x1 + p.l * p.x2);
  return SkewHermitian::diagonal(phases);
}

RandersSpec solve_metric(const OrbitParams& p) {
  check_feasible(p);
  const double center = p.orbit_center();
  const double radius = 0.5 * (p.n() + 1) * p.x2;
  const double denom = radius * radius - center * center;
  if (!(denom > 0.0)) throw Error(ErrorCode::InfeasibleParams, "orbit sphere does not surround the origin");
  const double b = p.L * p.L / denom;
  const double c = -(b / p.L) * center;
  const double a = b + c * c;
  RandersSpec s = RandersSpec::u_sphere(p.n(), a, b, c);
  if (const auto v = validate_spec(s); !v.empty()) throw Error(ErrorCode::InfeasibleParams, v.front());
  return s;
}

Quadratic f_poly(const RandersSpec& s, const OrbitParams& p) {
  if (s.family != Family::USphere && s.family != Family::SU2)
    throw Error(ErrorCode::InvalidInput, "f_poly needs a U_sphere spec");
  const double a = s.a, b = s.b;
  const double x1 = p.x1, x2 = p.x2;
  const double l = p.l, m = p.m;
  return {(a - b) * x2 * x2, (l - m) * x2 * x2 * b + 2.0 * a * x1 * x2, x2 * x2 * b * m * l + a * x1 * x1};
}

Quadratic constant_length_identity(const RandersSpec& s, const OrbitParams& p) {
  const Quadratic f = f_poly(s, p);
  // (L - c x2 t - c x1)^2
  const double c = s.c, L = p.L;
  const double r2 = c * c * p.x2 * p.x2;
  const double r1 = -2.0 * c * p.x2 * (L - c * p.x1);
  const double r0 = (L - c * p.x1) * (L - c * p.x1);
  return {f.k2 - r2, f.k1 - r1, f.k0 - r0};
}

std::pair<double, double> eq_root_pair(const RandersSpec& s, double L) {
  if (const auto v = validate_spec(s); !v.empty()) throw Error(ErrorCode::InvalidInput, "invalid spec: " + v.front());
  if (!(L > 0.0)) throw Error(ErrorCode::InvalidInput, "L must be positive");
  const double ra = std::sqrt(s.a_parallel());
  return {L / (ra + s.c), -L / (ra - s.c)};
}

std::pair<double, double> central_kvf_phases(const RandersSpec& s, double L) {
  if (const auto v = validate_spec(s); !v.empty()) throw Error(ErrorCode::InvalidInput, "invalid spec: " + v.front());
  if (std::abs(s.a - (s.b + s.c * s.c)) > 1e-10) {
    std::ostringstream os;
    os << "a = b + c^2 fails: a - b - c^2 = " << s.a - s.b - s.c * s.c;
    throw Error(ErrorCode::NotKvfAdmissible, os.str());
  }
  const double base = -L * s.c / s.b;
  const double root = std::sqrt(L * L / s.b + L * L * s.c * s.c / (s.b * s.b));
  return {base + root, base - root};
}

KvfFamilies kvf_families(const RandersSpec& s, double L) {
  KvfFamilies out{eq_root_pair(s, L), std::nullopt};
  try {
    out.two_eigenvalue = central_kvf_phases(s, L);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotKvfAdmissible) throw;
  }
  return out;
}

const char* to_string(Verdict v) { return v == Verdict::Constant ? "constant" : "non-constant"; }

ConstantLengthReport summarize_lengths(const std::vector<double>& values, double L) {
  ConstantLengthReport r;
  r.trials = static_cast<int>(values.size());
  r.tolerance = kConstantTolerance * L;
  if (values.empty()) return r;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  r.min = *lo;
  r.max = *hi;
  r.mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
  double var = 0.0;
  for (double v : values) var += (v - r.mean) * (v - r.mean);
  r.stddev = std::sqrt(var / values.size());
  r.verdict = (r.max - r.min <= r.tolerance) ? Verdict::Constant : Verdict::NonConstant;
  return r;
}

ConstantLengthReport orbit_length_report(const ModelSpace& space, const RandersSpec& s, const AlgebraElement& e,
                                         double L, int trials, RngStream& rng) {
  if (trials < 100) throw Error(ErrorCode::InvalidInput, "orbit_length_report needs at least 100 trials");
  if (const auto v = validate_spec(s); !v.empty()) throw Error(ErrorCode::InvalidInput, "invalid spec: " + v.front());
  std::vector<double> values;
  values.reserve(trials);
  for (const auto& y : orbit_projection_sample(space, e, trials, rng)) values.push_back(randers_norm(s, y));
  return summarize_lengths(values, L);
}

ConstantLengthReport orbit_length_report(const RandersSpec& s, const AlgebraElement& e, double L, int trials,
                                         RngStream& rng) {
  return orbit_length_report(model_space_of(s), s, e, L, trials, rng);
}

RandersSpec su2_cw_spec(const Vec3& v, double radius) {
  const double len = norm(v);
  if (!(radius > 0.0) || !std::isfinite(len)) throw Error(ErrorCode::InvalidInput, "su2_cw_spec needs a positive radius");
  if (len >= radius) throw Error(ErrorCode::InfeasibleParams, "|V| must be smaller than the radius");
  // F = 1 on |y + V| = r  <=>  alpha^2 = (1 - beta)^2 with
  // alpha^2 = k|y|^2 + k^2 <V,y>^2, beta = k <V,y>, k = 1/(r^2 - |V|^2).
  const double k = 1.0 / (radius * radius - len * len);
  const Vec3 axis = len > 0.0 ? Vec3{v[0] / len, v[1] / len, v[2] / len} : Vec3{1.0, 0.0, 0.0};
  return RandersSpec::su2(k + k * k * len * len, k, k * len, axis);
}

WitnessPair sp_witness_pair(const QuaternionMatrix& x, const RandersSpec& s) {
  if (s.family != Family::SpSphere) throw Error(ErrorCode::InvalidInput, "sp_witness_pair needs an Sp_sphere spec");
  const Eigen::Index size = s.n + 1;
  if (x.rows() != size || x.cols() != size) throw Error(ErrorCode::InvalidInput, "X has the wrong size");
  const AlgebraElement elem = AlgebraElement::symplectic(x, 0.0);
  int best = -1;
  double best_norm = 0.0;
  for (Eigen::Index r = 0; r < size; ++r) {
    for (Eigen::Index c = 0; c < size; ++c) {
      const double v = x(r, c).norm();
      if (r != c && v > tol::kSkew) throw Error(ErrorCode::InvalidInput, "sp_witness_pair needs a diagonal X");
      if (r == c && v > best_norm) {
        best_norm = v;
        best = static_cast<int>(r);
      }
    }
  }
  if (best < 0 || best_norm <= tol::kSkew) throw Error(ErrorCode::InvalidInput, "sp_witness_pair needs X != 0");
  if (s.c == 0.0) throw Error(ErrorCode::NotApplicable, "the witness pair needs a non-Riemannian spec (c != 0)");

  const ModelSpace space = ModelSpace::sp_sphere(s.n);
  const int last = static_cast<int>(size) - 1;
  std::vector<int> perm(size);
  std::iota(perm.begin(), perm.end(), 0);
  std::swap(perm[best], perm[last]);
  const SymplecticMatrix swap = permutation_symplectic(perm);
  const Quaternion entry = x(best, best);

  auto image = [&](Quaternion target) {
    HVector diag(size, Quaternion{1.0, 0.0, 0.0, 0.0});
    diag[last] = rotation_between(entry, target);
    const SymplecticMatrix g = SymplecticMatrix::make(QuaternionMatrix::diagonal(diag)) * swap;
    return project_to_m(space, conjugate(g, elem));
  };
  WitnessPair out{image(kQuatI), image(-kQuatI), 0.0, 0.0, best_norm};
  out.f1 = randers_norm(s, out.y1);
  out.f2 = randers_norm(s, out.y2);
  return out;
}

std::vector<ConstantLengthReport> sp_central_only_scan(const RandersSpec& s,
                                                       const std::vector<AlgebraElement>& candidates, int trials,
                                                       RngStream& rng, double L) {
  if (s.family != Family::SpSphere) throw Error(ErrorCode::InvalidInput, "sp_central_only_scan needs an Sp_sphere spec");
  if (s.a2 == s.b) throw Error(ErrorCode::InvalidInput, "sp_central_only_scan needs a2 != b");
  std::vector<ConstantLengthReport> out;
  out.reserve(candidates.size());
  for (const auto& e : candidates) out.push_back(orbit_length_report(s, e, L, trials, rng));
  return out;
}

}  // namespace randers
