#pragma once

// Killing vector fields of constant length on homogeneous Randers spheres:
// the closed-form metric for a two-eigenvalue generator on U(n+1)/U(n), the
// polynomial identity certifying constant length, the S^3 construction with
// an offset round indicatrix, and falsification harnesses for the
// Sp(n+1)U(1) family.

#include <optional>
#include <utility>
#include <vector>

#include "randers/cosets.hpp"

namespace randers {

/// Generator X = i (x1 I + x2 diag(-m I_l, l I_m)) of U(l+m) and target length L.
struct OrbitParams {
  int l = 1;
  int m = 1;
  double x1 = 0.0;
  double x2 = 1.0;
  double L = 1.0;

  /// Ambient U_sphere index: l + m = n + 1.
  int n() const { return l + m - 1; }
  /// The two eigen-projections -m x2 + x1 (multiplicity l) and l x2 + x1 (multiplicity m).
  std::pair<double, double> eigenvalues() const { return {-m * x2 + x1, l * x2 + x1}; }
  /// Centre (l-m) x2/2 + x1 and radius (n+1)|x2|/2 of the projected orbit sphere.
  double orbit_center() const;
  double orbit_radius() const;
};

/// Throws InfeasibleParams naming the first violated condition.
void check_feasible(const OrbitParams& p);

SkewHermitian orbit_generator(const OrbitParams& p);

/// The unique (a, b, c) with a = b + c^2 for which orbit_generator(p) has
/// constant length L.
RandersSpec solve_metric(const OrbitParams& p);

struct Quadratic {
  double k2 = 0.0;
  double k1 = 0.0;
  double k0 = 0.0;
};

/// alpha^2 at the projection of U X U*, as a quadratic in t = l|v|^2 - m|u|^2 in [-m, l].
Quadratic f_poly(const RandersSpec& s, const OrbitParams& p);

/// Coefficient-wise f_poly - (L - c (x2 t + x1))^2. Zero iff X has constant length L.
Quadratic constant_length_identity(const RandersSpec& s, const OrbitParams& p);

/// Roots (x+ > 0, x- < 0) of sqrt(a)|x| + c x = L.
std::pair<double, double> eq_root_pair(const RandersSpec& s, double L);

/// -Lc/b +- sqrt(L^2/b + L^2 c^2/b^2). Throws NotKvfAdmissible unless
/// a = b + c^2 within 1e-10.
std::pair<double, double> central_kvf_phases(const RandersSpec& s, double L);

/// Both readings of which generators give constant length L: the central
/// ones i x I (x a root of the linear equation, always available), and the
/// two-eigenvalue family (only when a = b + c^2).
struct KvfFamilies {
  std::pair<double, double> central;
  std::optional<std::pair<double, double>> two_eigenvalue;
};
KvfFamilies kvf_families(const RandersSpec& s, double L);

enum class Verdict { Constant, NonConstant };
const char* to_string(Verdict v);

struct ConstantLengthReport {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  int trials = 0;
  Verdict verdict = Verdict::NonConstant;
  double tolerance = 0.0;  // absolute threshold on max - min

  double spread() const { return max - min; }
};

/// Relative max-min threshold for a constant verdict.
inline constexpr double kConstantTolerance = 1e-8;
/// Relative max-min gap certifying non-constancy.
inline constexpr double kNonConstantGap = 1e-4;

ConstantLengthReport summarize_lengths(const std::vector<double>& values, double L);

/// Samples F on Haar conjugates of e projected to m. Requires trials >= 100.
ConstantLengthReport orbit_length_report(const ModelSpace& space, const RandersSpec& s, const AlgebraElement& e,
                                         double L, int trials, RngStream& rng);
ConstantLengthReport orbit_length_report(const RandersSpec& s, const AlgebraElement& e, double L, int trials,
                                         RngStream& rng);

/// Randers spec on S^3 whose indicatrix is the <,>_eq sphere of the given
/// radius centred at -V. Throws InfeasibleParams if |V| >= radius.
RandersSpec su2_cw_spec(const Vec3& v, double radius);

struct WitnessPair {
  TangentVector y1;  // projection aligned with +V
  TangentVector y2;  // projection aligned with -V
  double f1 = 0.0;
  double f2 = 0.0;
  double entry_norm = 0.0;  // |q| of the diagonal entry used

  double gap() const { return std::abs(f1 - f2); }
};

/// Conjugates a nonzero diagonal X in sp(n+1) so that its largest diagonal
/// entry sits in the last slot as +|q| i and as -|q| i, and evaluates F on
/// both projections. Throws InvalidInput for X = 0 or non-diagonal X and
/// NotApplicable when c = 0.
WitnessPair sp_witness_pair(const QuaternionMatrix& x, const RandersSpec& s);

/// orbit_length_report for each candidate on an Sp_sphere spec with a2 != b.
std::vector<ConstantLengthReport> sp_central_only_scan(const RandersSpec& s,
                                                       const std::vector<AlgebraElement>& candidates, int trials,
                                                       RngStream& rng, double L = 1.0);

}  // namespace randers
