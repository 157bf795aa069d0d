#pragma once

// One-parameter isometry flows on the model spheres and executable checkers
// for the eigenvalue estimates behind the non-intersection of their orbits.

#include <optional>
#include <vector>

#include "randers/cosets.hpp"

namespace randers {

/// SU2: g -> exp(tX) g exp(-tV) on SU(2), X and V in su(2).
/// USphere: v -> exp(tX') v on the unit sphere of C^{n+1}.
class FlowIsometry {
 public:
  static FlowIsometry su2(const Vec3& x, const Vec3& v, double t);
  static FlowIsometry unitary(const SkewHermitian& x, double t);

  Family family() const { return family_; }
  double time() const { return t_; }
  FlowIsometry at(double t) const;

  /// exp(tX) (resp. exp(tX')).
  UnitaryMatrix left_factor() const;
  /// exp(-tV); identity for the unitary family.
  UnitaryMatrix right_factor() const;

  const CMatrix& generator() const { return x_; }
  const CMatrix& isotropy() const { return v_; }

 private:
  FlowIsometry(Family f, CMatrix x, CMatrix v, double t) : family_(f), x_(std::move(x)), v_(std::move(v)), t_(t) {}
  Family family_;
  CMatrix x_;
  CMatrix v_;
  double t_;
};

/// Point form: a unit vector of C^{n+1}. SU(2) points are identified with
/// their first column g e1 in C^2. Throws InvalidInput off the sphere (1e-10).
CVector apply_flow(const FlowIsometry& f, const CVector& point);
/// Matrix form for SU(2): requires g unitary with det 1 (1e-10).
CMatrix apply_flow(const FlowIsometry& f, const CMatrix& g);

/// SU(2) element with first column z (|z| = 1).
CMatrix su2_from_point(const CVector& z);

/// Largest pairwise distance (max-abs entry) among phi_pi(g) over unit X,
/// over `bases` random g. Zero means every flow focuses at one endpoint.
double endpoint_focus_check(const Vec3& v, int samples, RngStream& rng, int bases = 4);
/// Same spread for an explicit list of generators and a fixed g.
double endpoint_spread(const Vec3& v, const CMatrix& g, const std::vector<Vec3>& generators);

struct PhaseInterval {
  double lo = 0.0;
  double hi = 0.0;
};

struct PhaseBoundReport {
  std::vector<double> a;                // sorted phases of P
  std::vector<double> b;                // phases of Q
  std::vector<PhaseInterval> intervals; // [a_i + min b, a_i + max b]
  std::vector<double> c_raw;            // sorted principal phases of PQ
  std::vector<double> c;                // lifted phases matched to the intervals (empty if none)
  bool verdict = false;                 // a lift inside the intervals exists
  bool raw_verdict = false;             // principal branch inside the intervals
  double worst_violation = 0.0;         // of the raw branch; 0 when raw_verdict
};

inline constexpr double kPhaseSlack = 1e-9;

/// Throws BranchUndefined when P or Q has eigenvalue -1.
PhaseBoundReport phase_bound_check(const UnitaryMatrix& p, const UnitaryMatrix& q, double eps = kPhaseSlack);

struct TrackingResult {
  std::vector<double> t;                  // grid on [0, 1]
  std::vector<std::vector<double>> paths; // paths[i][k] = c_i(t_k), continuous, c_i(0) sorted
  int steps = 0;                          // steps actually used
  double min_slope = 0.0;                 // finite-difference extremes over all paths
  double max_slope = 0.0;
};

inline constexpr int kMaxTrackingSteps = 1 << 14;

/// Continuous eigenphase paths of P exp(tB), t in [0, 1], matched greedily
/// between steps. Doubles the step count while a step jumps by pi/2 or more;
/// throws TrackingFailed beyond kMaxTrackingSteps. Requires steps >= 16.
TrackingResult eigenvalue_tracking(const UnitaryMatrix& p, const SkewHermitian& b, int steps);

struct CommutatorReport {
  std::vector<double> t;
  std::vector<double> spectral_distance;  // min |lambda - 1| per t
  std::vector<bool> has_eig1;
  bool common_eigenvector = false;
  double common_residual = 0.0;            // max_t |M(t) v - v| for the best v
  CVector eigenvector;
  bool all_or_nothing = false;             // has_eig1 constant over the grid and consistent with the vector
};

inline constexpr double kEig1Tolerance = 1e-9;
inline constexpr double kCommonVectorTolerance = 1e-8;

/// 32 uniform points strictly inside (0, pi).
std::vector<double> default_t_grid(int points = 32);

/// M(t) = exp(tX) U exp(-tX) U* with X = i diag(-I_l, I_m).
CMatrix commutator(const UnitaryMatrix& u, int l, int m, double t);
CommutatorReport commutator_eig1_persistence(const UnitaryMatrix& u, int l, int m, const std::vector<double>& t_grid);

/// Haar-random U in U(l+m) whose upper-right l x m block is singular: a
/// block-diagonal conjugate of a matrix fixing e_{l+1}.
UnitaryMatrix singular_block_unitary(int l, int m, RngStream& rng);

struct ProbeReport {
  int trials = 0;
  int events = 0;                 // trials with spectral distance < kEig1Tolerance
  double min_distance = 0.0;      // smallest spectral distance from 1 seen
  bool verdict = false;           // events == 0
};

/// exp(t1 X1) exp(-t2 X2) for random conjugates X1, X2 of i(xI + diag(-I_l, I_m))
/// and random t1 > t2 in (0, pi); with equal_times the draw uses t1 = t2.
ProbeReport geodesic_nonintersection_probe(double x, int l, int m, int trials, RngStream& rng,
                                           bool equal_times = false);

}  // namespace randers
