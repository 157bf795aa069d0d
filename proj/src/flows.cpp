#include "randers/flows.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace randers {

namespace {

CVector normalized(CVector v) { return v / v.norm(); }

void require_on_sphere(const CVector& v) {
  if (v.size() == 0 || std::abs(v.norm() - 1.0) > 1e-10) throw Error(ErrorCode::InvalidInput, "point is not on the unit sphere");
}

UnitaryMatrix haar_special_unitary2(RngStream& rng) {
  CMatrix g = haar_unitary(2, rng).matrix();
  g /= std::sqrt(g.determinant());
  return UnitaryMatrix::make(std::move(g));
}

Vec3 random_unit3(RngStream& rng) {
  Vec3 v{rng.normal(), rng.normal(), rng.normal()};
  const double len = norm(v);
  return {v[0] / len, v[1] / len, v[2] / len};
}

double spectral_distance_from_one(const CMatrix& w) {
  double best = std::numeric_limits<double>::infinity();
  for (Complex z : unitary_eigenvalues(w)) best = std::min(best, std::abs(z - 1.0));
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------
// FlowIsometry

FlowIsometry FlowIsometry::su2(const Vec3& x, const Vec3& v, double t) {
  return FlowIsometry(Family::SU2, su2_matrix(x), su2_matrix(v), t);
}

FlowIsometry FlowIsometry::unitary(const SkewHermitian& x, double t) {
  return FlowIsometry(Family::USphere, x.matrix(), CMatrix::Zero(x.size(), x.size()), t);
}

FlowIsometry FlowIsometry::at(double t) const { return FlowIsometry(family_, x_, v_, t); }

UnitaryMatrix FlowIsometry::left_factor() const { return expm_skew(SkewHermitian::make(x_), t_); }

UnitaryMatrix FlowIsometry::right_factor() const { return expm_skew(SkewHermitian::make(v_), -t_); }

CMatrix su2_from_point(const CVector& z) {
  if (z.size() != 2) throw Error(ErrorCode::InvalidInput, "an SU(2) point lives in C^2");
  CMatrix g(2, 2);
  g << z(0), -std::conj(z(1)), z(1), std::conj(z(0));
  return g;
}

CVector apply_flow(const FlowIsometry& f, const CVector& point) {
  require_on_sphere(point);
  if (f.family() == Family::SU2) {
    const CMatrix g = su2_from_point(point);
    return normalized((f.left_factor().matrix() * g * f.right_factor().matrix()).col(0));
  }
  if (point.size() != f.generator().rows()) throw Error(ErrorCode::InvalidInput, "point dimension does not match the flow");
  return normalized(f.left_factor().matrix() * point);
}

CMatrix apply_flow(const FlowIsometry& f, const CMatrix& g) {
  if (f.family() != Family::SU2) throw Error(ErrorCode::InvalidInput, "matrix form is only defined for SU(2) flows");
  if (g.rows() != 2 || g.cols() != 2) throw Error(ErrorCode::InvalidInput, "SU(2) point must be 2x2");
  if (max_abs(g.adjoint() * g - CMatrix::Identity(2, 2)) > 1e-10 || std::abs(g.determinant() - 1.0) > 1e-10)
    throw Error(ErrorCode::InvalidInput, "point is not in SU(2)");
  const CMatrix out = f.left_factor().matrix() * g * f.right_factor().matrix();
  return su2_from_point(normalized(out.col(0)));
}

double endpoint_spread(const Vec3& v, const CMatrix& g, const std::vector<Vec3>& generators) {
  std::vector<CMatrix> ends;
  ends.reserve(generators.size());
  for (const auto& x : generators) ends.push_back(apply_flow(FlowIsometry::su2(x, v, kPi), g));
  double spread = 0.0;
  for (std::size_t i = 0; i < ends.size(); ++i)
    for (std::size_t j = i + 1; j < ends.size(); ++j) spread = std::max(spread, max_abs(ends[i] - ends[j]));
  return spread;
}

double endpoint_focus_check(const Vec3& v, int samples, RngStream& rng, int bases) {
  if (norm(v) >= 1.0) throw Error(ErrorCode::InvalidInput, "endpoint_focus_check needs |V| < 1");
  double spread = 0.0;
  for (int b = 0; b < bases; ++b) {
    const CMatrix g = haar_special_unitary2(rng).matrix();
    std::vector<Vec3> gens;
    for (int s = 0; s < samples; ++s) gens.push_back(random_unit3(rng));
    spread = std::max(spread, endpoint_spread(v, g, gens));
  }
  return spread;
}

// ---------------------------------------------------------------------------
// Phase bounds

namespace {

bool near_minus_one(double phase) { return std::abs(std::abs(phase) - kPi) < 1e-12; }

// Kuhn's augmenting-path matching of phases (left) to intervals (right).
bool augment(int phase, const std::vector<std::vector<int>>& adj, std::vector<int>& owner, std::vector<bool>& seen) {
  for (int iv : adj[phase]) {
    if (seen[iv]) continue;
    seen[iv] = true;
    if (owner[iv] < 0 || augment(owner[iv], adj, owner, seen)) {
      owner[iv] = phase;
      return true;
    }
  }
  return false;
}

}  // namespace

PhaseBoundReport phase_bound_check(const UnitaryMatrix& p, const UnitaryMatrix& q, double eps) {
  if (p.size() != q.size()) throw Error(ErrorCode::InvalidInput, "phase_bound_check: size mismatch");
  PhaseBoundReport r;
  r.a = unitary_phases(p);
  r.b = unitary_phases(q);
  for (double v : r.a)
    if (near_minus_one(v)) throw Error(ErrorCode::BranchUndefined, "P has eigenvalue -1");
  for (double v : r.b)
    if (near_minus_one(v)) throw Error(ErrorCode::BranchUndefined, "Q has eigenvalue -1");
  const double lo_b = *std::min_element(r.b.begin(), r.b.end());
  const double hi_b = *std::max_element(r.b.begin(), r.b.end());
  for (double ai : r.a) r.intervals.push_back({ai + lo_b, ai + hi_b});
  r.c_raw = unitary_phases(p * q);

  const int n = static_cast<int>(r.a.size());
  r.raw_verdict = true;
  for (int i = 0; i < n; ++i) {
    const double over = std::max(r.intervals[i].lo - eps - r.c_raw[i], r.c_raw[i] - r.intervals[i].hi - eps);
    if (over > 0.0) {
      r.raw_verdict = false;
      r.worst_violation = std::max(r.worst_violation, over);
    }
  }

  // Lifts phi + 2 pi k of each eigenphase of PQ that land in an interval.
  std::vector<std::vector<int>> adj(n);
  std::vector<std::vector<double>> lift(n, std::vector<double>(n, 0.0));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      for (int k = -1; k <= 1; ++k) {
        const double v = r.c_raw[j] + 2.0 * kPi * k;
        if (v >= r.intervals[i].lo - eps && v <= r.intervals[i].hi + eps) {
          adj[j].push_back(i);
          lift[j][i] = v;
          break;
        }
      }
    }
  }
  std::vector<int> owner(n, -1);
  int matched = 0;
  for (int j = 0; j < n; ++j) {
    std::vector<bool> seen(n, false);
    if (augment(j, adj, owner, seen)) ++matched;
  }
  r.verdict = matched == n;
  if (r.verdict) {
    for (int i = 0; i < n; ++i) r.c.push_back(lift[owner[i]][i]);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Eigenphase tracking

namespace {

std::vector<double> raw_phases(const CMatrix& w) {
  std::vector<double> out;
  for (Complex z : unitary_eigenvalues(w)) out.push_back(std::arg(z));
  return out;
}

// Returns the largest per-step jump; fills result on success.
double track_once(const UnitaryMatrix& p, const SkewHermitian& b, int steps, TrackingResult& result) {
  const auto n = static_cast<std::size_t>(p.size());
  result.t.assign(steps + 1, 0.0);
  result.paths.assign(n, std::vector<double>(steps + 1, 0.0));
  std::vector<double> start = unitary_phases(p);
  for (std::size_t i = 0; i < n; ++i) result.paths[i][0] = start[i];
  double worst = 0.0;
  for (int k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k) / steps;
    result.t[k] = t;
    const std::vector<double> phases = raw_phases(p.matrix() * expm_skew(b, t).matrix());
    // Greedy: repeatedly take the globally closest (path, phase) pair on the circle.
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        pairs.emplace_back(std::abs(std::remainder(phases[j] - result.paths[i][k - 1], 2.0 * kPi)), i, j);
    std::sort(pairs.begin(), pairs.end());
    std::vector<bool> path_done(n, false), phase_done(n, false);
    for (const auto& [d, i, j] : pairs) {
      if (path_done[i] || phase_done[j]) continue;
      path_done[i] = phase_done[j] = true;
      const double prev = result.paths[i][k - 1];
      result.paths[i][k] = prev + std::remainder(phases[j] - prev, 2.0 * kPi);
      worst = std::max(worst, d);
    }
  }
  result.steps = steps;
  result.min_slope = std::numeric_limits<double>::infinity();
  result.max_slope = -std::numeric_limits<double>::infinity();
  for (const auto& path : result.paths) {
    for (int k = 0; k < steps; ++k) {
      const double slope = (path[k + 1] - path[k]) * steps;
      result.min_slope = std::min(result.min_slope, slope);
      result.max_slope = std::max(result.max_slope, slope);
    }
  }
  return worst;
}

}  // namespace

TrackingResult eigenvalue_tracking(const UnitaryMatrix& p, const SkewHermitian& b, int steps) {
  if (steps < 16) throw Error(ErrorCode::InvalidInput, "eigenvalue_tracking needs at least 16 steps");
  if (p.size() != b.size()) throw Error(ErrorCode::InvalidInput, "eigenvalue_tracking: size mismatch");
  TrackingResult result;
  for (int s = steps; s <= kMaxTrackingSteps; s *= 2) {
    if (track_once(p, b, s, result) < kPi / 2.0) return result;
  }
  throw Error(ErrorCode::TrackingFailed, "phase paths still jump by pi/2 at the step cap");
}

// ---------------------------------------------------------------------------
// Commutator persistence

std::vector<double> default_t_grid(int points) {
  std::vector<double> grid;
  for (int k = 1; k <= points; ++k) grid.push_back(kPi * k / (points + 1));
  return grid;
}

CMatrix commutator(const UnitaryMatrix& u, int l, int m, double t) {
  if (l < 1 || m < 1 || u.size() != l + m) throw Error(ErrorCode::InvalidInput, "commutator: U must be (l+m)x(l+m)");
  CVector e(l + m);
  for (int k = 0; k < l + m; ++k) e(k) = std::polar(1.0, k < l ? -t : t);
  const CMatrix& um = u.matrix();
  return e.asDiagonal() * um * e.conjugate().asDiagonal() * um.adjoint();
}

CommutatorReport commutator_eig1_persistence(const UnitaryMatrix& u, int l, int m, const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw Error(ErrorCode::InvalidInput, "empty t grid");
  const int size = l + m;
  CommutatorReport r;
  r.t = t_grid;
  CMatrix stacked(static_cast<Eigen::Index>(t_grid.size()) * size, size);
  std::vector<CMatrix> ms;
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    const CMatrix mt = commutator(u, l, m, t_grid[k]);
    ms.push_back(mt);
    const double d = spectral_distance_from_one(mt);
    r.spectral_distance.push_back(d);
    r.has_eig1.push_back(d <= kEig1Tolerance);
    stacked.block(static_cast<Eigen::Index>(k) * size, 0, size, size) = mt - CMatrix::Identity(size, size);
  }
  Eigen::JacobiSVD<CMatrix> svd(stacked, Eigen::ComputeThinV);
  r.eigenvector = svd.matrixV().col(size - 1);
  for (const auto& mt : ms) r.common_residual = std::max(r.common_residual, (mt * r.eigenvector - r.eigenvector).norm());
  r.common_eigenvector = r.common_residual <= kCommonVectorTolerance;
  const bool all = std::all_of(r.has_eig1.begin(), r.has_eig1.end(), [](bool b) { return b; });
  const bool none = std::none_of(r.has_eig1.begin(), r.has_eig1.end(), [](bool b) { return b; });
  r.all_or_nothing = (all && r.common_eigenvector) || (none && !r.common_eigenvector);
  return r;
}

UnitaryMatrix singular_block_unitary(int l, int m, RngStream& rng) {
  if (l < 1 || m < 1) throw Error(ErrorCode::InvalidInput, "singular_block_unitary needs l, m >= 1");
  const int size = l + m;
  CMatrix u0 = CMatrix::Identity(size, size);
  if (size > 1) {
    const CMatrix inner = haar_unitary(size - 1, rng).matrix();
    std::vector<int> idx;
    for (int k = 0; k < size; ++k)
      if (k != l) idx.push_back(k);
    for (int r = 0; r < size - 1; ++r)
      for (int c = 0; c < size - 1; ++c) u0(idx[r], idx[c]) = inner(r, c);
  }
  auto block_diag = [&](const CMatrix& top, const CMatrix& bottom) {
    CMatrix out = CMatrix::Zero(size, size);
    out.topLeftCorner(l, l) = top;
    out.bottomRightCorner(m, m) = bottom;
    return out;
  };
  const CMatrix left = block_diag(haar_unitary(l, rng).matrix(), haar_unitary(m, rng).matrix());
  const CMatrix right = block_diag(haar_unitary(l, rng).matrix(), haar_unitary(m, rng).matrix());
  return UnitaryMatrix::make(left * u0 * right);
}

ProbeReport geodesic_nonintersection_probe(double x, int l, int m, int trials, RngStream& rng, bool equal_times) {
  if (l != m || l < 1) throw Error(ErrorCode::InvalidInput, "the probe needs l = m >= 1");
  if (!(std::abs(x) > 0.0 && std::abs(x) < 1.0)) throw Error(ErrorCode::InvalidInput, "the probe needs 0 < |x| < 1");
  const int size = l + m;
  std::vector<double> phases;
  for (int k = 0; k < size; ++k) phases.push_back(x + (k < l ? -1.0 : 1.0));
  const SkewHermitian gen = SkewHermitian::diagonal(phases);

  ProbeReport r;
  r.trials = trials;
  r.min_distance = std::numeric_limits<double>::infinity();
  const RngStream base(rng.next_u64());
  for (int k = 0; k < trials; ++k) {
    RngStream s = base.derive(static_cast<std::uint64_t>(k));
    const UnitaryMatrix u1 = haar_unitary(size, s);
    const UnitaryMatrix u2 = haar_unitary(size, s);
    double t1 = s.uniform(0.0, kPi);
    double t2 = s.uniform(0.0, kPi);
    while (t1 == 0.0) t1 = s.uniform(0.0, kPi);
    while (t2 == 0.0 || t2 == t1) t2 = s.uniform(0.0, kPi);
    if (equal_times) t2 = t1;
    else if (t2 > t1) std::swap(t1, t2);
    const CMatrix w = u1.matrix() * expm_skew(gen, t1).matrix() * u1.matrix().adjoint() * u2.matrix() *
                      expm_skew(gen, -t2).matrix() * u2.matrix().adjoint();
    const double d = spectral_distance_from_one(w);
    r.min_distance = std::min(r.min_distance, d);
    if (d < kEig1Tolerance) ++r.events;
  }
  r.verdict = r.events == 0;
  return r;
}

}  // namespace randers
