#include "randers/geodesy.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>

#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>

namespace randers {

namespace detail {

class NeighbourIndex {
 public:
  virtual ~NeighbourIndex() = default;
  virtual std::vector<int> query(const double* p, int count) const = 0;
};

namespace {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

template <std::size_t D>
class RtreeIndex final : public NeighbourIndex {
 public:
  using Point = bg::model::point<double, D, bg::cs::cartesian>;
  using Value = std::pair<Point, int>;

  RtreeIndex(const std::vector<double>& coords, int n) {
    std::vector<Value> values;
    values.reserve(n);
    for (int i = 0; i < n; ++i) values.emplace_back(make_point(&coords[static_cast<std::size_t>(i) * D]), i);
    tree_ = bgi::rtree<Value, bgi::rstar<16>>(values.begin(), values.end());
  }

  std::vector<int> query(const double* p, int count) const override {
    std::vector<Value> hits;
    tree_.query(bgi::nearest(make_point(p), static_cast<unsigned>(count)), std::back_inserter(hits));
    const Point centre = make_point(p);
    std::sort(hits.begin(), hits.end(), [&](const Value& a, const Value& b) {
      const double da = bg::comparable_distance(a.first, centre), db = bg::comparable_distance(b.first, centre);
      return da != db ? da < db : a.second < b.second;
    });
    std::vector<int> out;
    out.reserve(hits.size());
    for (const auto& h : hits) out.push_back(h.second);
    return out;
  }

 private:
  template <std::size_t I = 0>
  static void fill(Point& pt, const double* p) {
    if constexpr (I < D) {
      bg::set<I>(pt, p[I]);
      fill<I + 1>(pt, p);
    }
  }
  static Point make_point(const double* p) {
    Point pt;
    fill(pt, p);
    return pt;
  }

  bgi::rtree<Value, bgi::rstar<16>> tree_;
};

std::shared_ptr<const NeighbourIndex> make_index(const std::vector<double>& coords, int n, int dim) {
  switch (dim) {
    case 4: return std::make_shared<RtreeIndex<4>>(coords, n);
    case 6: return std::make_shared<RtreeIndex<6>>(coords, n);
    case 8: return std::make_shared<RtreeIndex<8>>(coords, n);
    case 10: return std::make_shared<RtreeIndex<10>>(coords, n);
    case 12: return std::make_shared<RtreeIndex<12>>(coords, n);
    case 16: return std::make_shared<RtreeIndex<16>>(coords, n);
    default: throw Error(ErrorCode::NotApplicable, "no neighbour index for ambient dimension " + std::to_string(dim));
  }
}

}  // namespace
}  // namespace detail

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CVector to_complex(const Eigen::VectorXd& x) {
  CVector z(x.size() / 2);
  for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = Complex(x(2 * k), x(2 * k + 1));
  return z;
}

Eigen::VectorXd from_complex(const CVector& z) {
  Eigen::VectorXd x(2 * z.size());
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    x(2 * k) = z(k).real();
    x(2 * k + 1) = z(k).imag();
  }
  return x;
}

Quaternion quat_at(const Eigen::VectorXd& x, Eigen::Index k) {
  return {x(4 * k), x(4 * k + 1), x(4 * k + 2), x(4 * k + 3)};
}

void require_graph_spec(const ModelSpace& space, const RandersSpec& s) {
  if (const auto v = validate_spec(s); !v.empty()) throw Error(ErrorCode::InvalidInput, "invalid Randers spec: " + v.front());
  if (space.family != s.family || (space.family != Family::SU2 && space.n != s.n))
    throw Error(ErrorCode::InvalidInput, "spec does not live on this model space");
}

struct QueueEntry {
  double d;
  int v;
  bool operator>(const QueueEntry& o) const { return d > o.d; }
};
using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

}  // namespace

int ambient_dimension(const ModelSpace& space) {
  switch (space.family) {
    case Family::USphere: return 2 * (space.n + 1);
    case Family::SU2: return 4;
    case Family::SpSphere: return 4 * (space.n + 1);
  }
  return 0;
}

double tangent_norm(const ModelSpace& space, const RandersSpec& s, const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
  const double v2 = v.squaredNorm();
  switch (space.family) {
    case Family::USphere: {
      // x^H v is the last coordinate of the left-translate of v to the base point.
      const Complex inner = to_complex(x).dot(to_complex(v));
      const double q = inner.imag();
      const double u2 = std::max(0.0, v2 - std::norm(inner));
      return std::sqrt(s.a * q * q + s.b * u2) + s.c * q;
    }
    case Family::SU2: {
      const CVector z = to_complex(x), dz = to_complex(v);
      CMatrix dg(2, 2);
      dg << dz(0), -std::conj(dz(1)), dz(1), std::conj(dz(0));
      const CMatrix y = su2_from_point(z).adjoint() * dg;
      CMatrix skew = 0.5 * (y - y.adjoint());
      skew -= (skew.trace() / 2.0) * CMatrix::Identity(2, 2);
      const Vec3 c = su2_coords(skew);
      const double along = dot(c, s.axis);
      const double perp2 = std::max(0.0, dot(c, c) - along * along);
      return std::sqrt(s.a * along * along + s.b * perp2) + s.c * along;
    }
    case Family::SpSphere: {
      Quaternion lambda{0.0, 0.0, 0.0, 0.0};
      for (Eigen::Index k = 0; k < x.size() / 4; ++k) lambda = lambda + quat_at(x, k).conj() * quat_at(v, k);
      const double u2 = std::max(0.0, v2 - lambda.norm() * lambda.norm());
      return std::sqrt(s.a1 * lambda.x * lambda.x + s.a2 * (lambda.y * lambda.y + lambda.z * lambda.z) + s.b * u2) +
             s.c * lambda.x;
    }
  }
  return 0.0;
}

double edge_weight(const ModelSpace& space, const RandersSpec& s, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  Eigen::VectorXd d = y - x;
  d -= x.dot(d) * x;
  return std::max(0.0, tangent_norm(space, s, x, d));
}

// ---------------------------------------------------------------------------
// SphereGraph

Eigen::VectorXd SphereGraph::point(int i) const {
  if (i < 0 || i >= size()) throw Error(ErrorCode::InvalidInput, "vertex index out of range");
  return Eigen::Map<const Eigen::VectorXd>(&coords_[static_cast<std::size_t>(i) * dim_], dim_);
}

std::vector<std::pair<int, double>> SphereGraph::out_edges(int i) const {
  if (i < 0 || i >= size()) throw Error(ErrorCode::InvalidInput, "vertex index out of range");
  std::vector<std::pair<int, double>> out;
  for (std::size_t e = offsets_[i]; e < offsets_[i + 1]; ++e) out.emplace_back(targets_[e], weights_[e]);
  return out;
}

std::vector<int> SphereGraph::nearest(const Eigen::VectorXd& p, int count) const {
  if (p.size() != dim_) throw Error(ErrorCode::InvalidInput, "point has the wrong ambient dimension");
  return index_->query(p.data(), std::min(count, size()));
}

void SphereGraph::finalize(std::vector<std::vector<std::pair<int, double>>> adjacency) {
  offsets_.assign(1, 0);
  targets_.clear();
  weights_.clear();
  for (auto& row : adjacency) {
    std::sort(row.begin(), row.end());
    for (const auto& [j, w] : row) {
      targets_.push_back(j);
      weights_.push_back(w);
    }
    offsets_.push_back(targets_.size());
  }
  std::vector<double> sorted = weights_;
  if (!sorted.empty()) {
    auto mid = sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2);
    std::nth_element(sorted.begin(), mid, sorted.end());
    scale_ = *mid;
  }
  index_ = detail::make_index(coords_, size(), dim_);
}

SphereGraph build_graph(const ModelSpace& space, const RandersSpec& s, int n_points, int k, RngStream& rng) {
  if (n_points < 500) throw Error(ErrorCode::InvalidInput, "build_graph needs N >= 500");
  if (k < 8) throw Error(ErrorCode::InvalidInput, "build_graph needs k >= 8");
  require_graph_spec(space, s);
  SphereGraph g;
  g.space_ = space;
  g.spec_ = s;
  g.k_ = k;
  g.dim_ = ambient_dimension(space);
  g.coords_.resize(static_cast<std::size_t>(n_points) * g.dim_);
  for (int i = 0; i < n_points; ++i) {
    double* p = &g.coords_[static_cast<std::size_t>(i) * g.dim_];
    double len = 0.0;
    do {
      len = 0.0;
      for (int d = 0; d < g.dim_; ++d) {
        p[d] = rng.normal();
        len += p[d] * p[d];
      }
    } while (len < 1e-24);
    len = std::sqrt(len);
    for (int d = 0; d < g.dim_; ++d) p[d] /= len;
  }
  g.index_ = detail::make_index(g.coords_, n_points, g.dim_);

  std::vector<std::vector<int>> neighbours(n_points);
  for (int i = 0; i < n_points; ++i) {
    for (int j : g.index_->query(&g.coords_[static_cast<std::size_t>(i) * g.dim_], k + 1))
      if (j != i) neighbours[i].push_back(j);
  }
  std::vector<std::vector<int>> undirected(n_points);
  for (int i = 0; i < n_points; ++i) {
    for (int j : neighbours[i]) {
      undirected[i].push_back(j);
      undirected[j].push_back(i);
    }
  }
  std::vector<std::vector<std::pair<int, double>>> adjacency(n_points);
  for (int i = 0; i < n_points; ++i) {
    auto& nb = undirected[i];
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    const Eigen::VectorXd x = g.point(i);
    for (int j : nb) adjacency[i].emplace_back(j, edge_weight(space, s, x, g.point(j)));
  }
  g.finalize(std::move(adjacency));
  if (!strongly_connected(g)) throw Error(ErrorCode::ResolutionTooCoarse, "neighbour graph is not strongly connected");
  return g;
}

bool strongly_connected(const SphereGraph& g) {
  const int n = g.size();
  if (n == 0) return false;
  std::vector<std::vector<int>> reverse(n);
  for (int i = 0; i < n; ++i)
    for (const auto& [j, w] : g.out_edges(i)) reverse[j].push_back(i);
  auto reaches_all = [n](auto&& next) {
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : next(v)) {
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == n;
  };
  const bool forward = reaches_all([&](int v) {
    std::vector<int> out;
    for (const auto& [j, w] : g.out_edges(v)) out.push_back(j);
    return out;
  });
  return forward && reaches_all([&](int v) { return reverse[v]; });
}

// ---------------------------------------------------------------------------
// Shortest paths

namespace {

struct PathTree {
  std::vector<double> dist;
  std::vector<int> pred;
  std::vector<int> hops;
};

// Dijkstra from `from`; stops once `stop(v, d)` returns true for a settled vertex.
template <typename Stop>
PathTree dijkstra(const SphereGraph& g, int from, Stop stop) {
  const int n = g.size();
  if (from < 0 || from >= n) throw Error(ErrorCode::InvalidInput, "vertex index out of range");
  PathTree t{std::vector<double>(n, kInf), std::vector<int>(n, -1), std::vector<int>(n, 0)};
  std::vector<bool> done(n, false);
  MinQueue queue;
  t.dist[from] = 0.0;
  queue.push({0.0, from});
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (done[v]) continue;
    done[v] = true;
    if (stop(v, d)) break;
    for (const auto& [w, weight] : g.out_edges(v)) {
      const double nd = d + weight;
      if (nd < t.dist[w]) {
        t.dist[w] = nd;
        t.pred[w] = v;
        t.hops[w] = t.hops[v] + 1;
        queue.push({nd, w});
      }
    }
  }
  return t;
}

std::vector<Eigen::VectorXd> trace(const SphereGraph& g, const PathTree& t, int to) {
  std::vector<Eigen::VectorXd> path;
  for (int v = to; v >= 0; v = t.pred[v]) path.push_back(g.point(v));
  std::reverse(path.begin(), path.end());
  return path;
}

// Orthonormal basis of the tangent space at the unit vector p.
Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& p) {
  const Eigen::Index dim = p.size();
  Eigen::MatrixXd full(dim, dim);
  full.col(0) = p;
  Eigen::Index best = 0;
  p.cwiseAbs().maxCoeff(&best);
  // Drop the axis most aligned with p so the remaining columns stay independent.
  int c = 1;
  for (Eigen::Index k = 0; k < dim; ++k) {
    if (k == best) continue;
    full.col(c) = Eigen::VectorXd::Unit(dim, k);
    ++c;
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(full);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim);
  return q.rightCols(dim - 1);
}

}  // namespace

double midpoint_weight(const ModelSpace& space, const RandersSpec& s, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& y) {
  Eigen::VectorXd mid = x + y;
  const double len = mid.norm();
  if (len < 1e-12) throw Error(ErrorCode::ResolutionTooCoarse, "segment joins antipodal points");
  mid /= len;
  Eigen::VectorXd d = y - x;
  const double chord = d.norm();
  if (chord == 0.0) return 0.0;
  d -= mid.dot(d) * mid;
  const double arc = 2.0 * std::asin(std::min(1.0, 0.5 * chord));
  return std::max(0.0, tangent_norm(space, s, mid, d) * (arc / chord));
}

double relax_path(const ModelSpace& space, const RandersSpec& s, std::vector<Eigen::VectorXd> path, int subdivide) {
  if (path.size() < 2) return 0.0;
  if (subdivide < 1) throw Error(ErrorCode::InvalidInput, "subdivide must be positive");
  std::vector<Eigen::VectorXd> pts;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    for (int k = 0; k < subdivide; ++k) {
      const double t = static_cast<double>(k) / subdivide;
      pts.push_back(((1.0 - t) * path[i] + t * path[i + 1]).normalized());
    }
  }
  pts.push_back(path.back());
  auto w = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return midpoint_weight(space, s, a, b); };
  auto length = [&]() {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += w(pts[i], pts[i + 1]);
    return total;
  };

  const std::size_t m = pts.size();
  double previous = kInf;
  for (int sweep = 0; sweep < 20000 && m > 2; ++sweep) {
    for (std::size_t i = 1; i + 1 < m; ++i) {
      const Eigen::VectorXd& a = pts[i - 1];
      const Eigen::VectorXd& b = pts[i + 1];
      const Eigen::VectorXd p = pts[i];
      const Eigen::MatrixXd basis = tangent_basis(p);
      const Eigen::Index d = basis.cols();
      auto energy = [&](const Eigen::VectorXd& xi) {
        const Eigen::VectorXd q = (p + basis * xi).normalized();
        const double w1 = w(a, q), w2 = w(q, b);
        return w1 * w1 + w2 * w2;
      };
      const double scale = std::max((b - a).norm(), 1e-8);
      const double h = 1e-4 * scale;
      const Eigen::VectorXd zero = Eigen::VectorXd::Zero(d);
      const double e0 = energy(zero);
      Eigen::VectorXd grad(d);
      Eigen::MatrixXd hess(d, d);
      for (Eigen::Index r = 0; r < d; ++r) {
        const Eigen::VectorXd er = Eigen::VectorXd::Unit(d, r) * h;
        const double ep = energy(er), em = energy(-er);
        grad(r) = (ep - em) / (2.0 * h);
        hess(r, r) = (ep - 2.0 * e0 + em) / (h * h);
        for (Eigen::Index c = 0; c < r; ++c) {
          const Eigen::VectorXd ec = Eigen::VectorXd::Unit(d, c) * h;
          hess(r, c) = hess(c, r) = (energy(er + ec) - energy(er - ec) - energy(ec - er) + energy(-er - ec)) / (4.0 * h * h);
        }
      }
      Eigen::VectorXd step;
      Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
      if (ldlt.info() == Eigen::Success && ldlt.isPositive() && (ldlt.vectorD().array() > 0.0).all())
        step = -ldlt.solve(grad);
      else
        step = -grad * (scale * scale) / std::max(grad.norm() * scale, 1e-300);
      for (int tries = 0; tries < 30; ++tries) {
        if (energy(step) < e0) {
          pts[i] = (p + basis * step).normalized();
          break;
        }
        step *= 0.5;
      }
    }
    const double current = length();
    if (std::abs(previous - current) <= 1e-12 * current) break;
    previous = current;
  }
  return length();
}

DistanceReport distance(const SphereGraph& g, int from, int to) {
  if (to < 0 || to >= g.size()) throw Error(ErrorCode::InvalidInput, "vertex index out of range");
  const PathTree t = dijkstra(g, from, [to](int v, double) { return v == to; });
  if (!std::isfinite(t.dist[to])) throw Error(ErrorCode::ResolutionTooCoarse, "target unreachable");
  return {from, to, t.dist[to], t.hops[to], g.scale(), relax_path(g.space(), g.spec(), trace(g, t, to))};
}

std::vector<double> distances_from(const SphereGraph& g, int from) {
  return dijkstra(g, from, [](int, double) { return false; }).dist;
}

DistanceReport distance_to_point(const SphereGraph& g, int from, const Eigen::VectorXd& p) {
  if (p.size() != g.ambient_dimension()) throw Error(ErrorCode::InvalidInput, "point has the wrong ambient dimension");
  const std::vector<int> attach = g.nearest(p, g.k());
  std::vector<double> entry(attach.size());
  for (std::size_t a = 0; a < attach.size(); ++a)
    entry[a] = edge_weight(g.space(), g.spec(), g.point(attach[a]), p);
  double best = kInf;
  int via = -1;
  const PathTree t = dijkstra(g, from, [&](int v, double d) {
    if (d >= best) return true;
    for (std::size_t a = 0; a < attach.size(); ++a) {
      if (attach[a] == v && d + entry[a] < best) {
        best = d + entry[a];
        via = v;
      }
    }
    return false;
  });
  if (via < 0) throw Error(ErrorCode::ResolutionTooCoarse, "point unreachable");
  std::vector<Eigen::VectorXd> path = trace(g, t, via);
  if ((path.back() - p).norm() > 0.0) path.push_back(p);
  return {from, -1, best, t.hops[via] + 1, g.scale(), relax_path(g.space(), g.spec(), path)};
}

// ---------------------------------------------------------------------------
// Displacement

Eigen::VectorXd flow_point(const SphereGraph& g, const FlowIsometry& f, const Eigen::VectorXd& x) {
  const Family fam = g.space().family;
  if (fam == Family::SpSphere) throw Error(ErrorCode::NotApplicable, "no flows are provided on the Sp family");
  if (f.family() == Family::SU2 && fam != Family::SU2)
    throw Error(ErrorCode::NotApplicable, "an SU(2) flow needs an SU(2) graph");
  if (f.family() == Family::USphere && f.generator().rows() != g.space().matrix_size())
    throw Error(ErrorCode::NotApplicable, "flow size does not match the graph");
  return from_complex(apply_flow(f, to_complex(x)));
}

DisplacementReport displacement_profile(const SphereGraph& g, const FlowIsometry& f, int sample_points, RngStream& rng,
                                        double tolerance) {
  if (sample_points < 1) throw Error(ErrorCode::InvalidInput, "need at least one sample point");
  DisplacementReport r;
  r.tolerance = tolerance;
  r.min = kInf;
  r.max = -kInf;
  double sum = 0.0;
  for (int s = 0; s < sample_points; ++s) {
    const int v = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(g.size()));
    const Eigen::VectorXd y = flow_point(g, f, g.point(v));
    DisplacementSample sample;
    sample.vertex = v;
    const DistanceReport to_image = distance_to_point(g, v, y);
    sample.displacement = to_image.refined;
    sample.graph = to_image.distance;
    const int snap = g.nearest(y, 1).front();
    sample.snap_gap = (g.point(snap) - y).norm();
    sample.snapped = distance(g, v, snap).distance;
    r.samples.push_back(sample);
    r.min = std::min(r.min, sample.displacement);
    r.max = std::max(r.max, sample.displacement);
    sum += sample.displacement;
  }
  r.mean = sum / sample_points;
  double gmin = kInf, gmax = 0.0, gsum = 0.0;
  for (const auto& x : r.samples) {
    gmin = std::min(gmin, x.graph);
    gmax = std::max(gmax, x.graph);
    gsum += x.graph;
  }
  r.graph_spread = gsum > 0.0 ? (gmax - gmin) / (gsum / sample_points) : 0.0;
  r.constant = r.relative_spread() <= tolerance;
  return r;
}

// ---------------------------------------------------------------------------
// Text export

void export_graph(const SphereGraph& g, std::ostream& out) {
  const RandersSpec& s = g.spec();
  const ModelSpace& m = g.space();
  out << std::setprecision(17);
  out << "# randers-graph " << to_string(m.family) << " n " << m.n << " k " << g.k() << " points " << g.size()
      << " dim " << g.ambient_dimension() << '\n';
  out << "# spec a " << s.a << " b " << s.b << " c " << s.c << " a1 " << s.a1 << " a2 " << s.a2 << " axis "
      << s.axis[0] << ' ' << s.axis[1] << ' ' << s.axis[2] << " v " << m.v[0] << ' ' << m.v[1] << ' ' << m.v[2]
      << '\n';
  for (int i = 0; i < g.size(); ++i) {
    out << "v " << i;
    const Eigen::VectorXd p = g.point(i);
    for (Eigen::Index d = 0; d < p.size(); ++d) out << ' ' << p(d);
    out << '\n';
  }
  for (int i = 0; i < g.size(); ++i)
    for (const auto& [j, w] : g.out_edges(i)) out << i << ' ' << j << ' ' << w << '\n';
}

SphereGraph import_graph(std::istream& in) {
  auto fail = [](const std::string& why) { return Error(ErrorCode::InvalidInput, "graph import: " + why); };
  std::string line, word;
  SphereGraph g;
  int n_points = -1;
  {
    if (!std::getline(in, line)) throw fail("missing header");
    std::istringstream h(line);
    std::string hash, tag, family, key;
    h >> hash >> tag >> family;
    if (hash != "#" || tag != "randers-graph") throw fail("bad header");
    g.space_.family = family_from_string(family);
    g.spec_.family = g.space_.family;
    while (h >> key) {
      if (key == "n") h >> g.space_.n;
      else if (key == "k") h >> g.k_;
      else if (key == "points") h >> n_points;
      else if (key == "dim") h >> g.dim_;
      else throw fail("unknown header key " + key);
    }
    if (!h.eof() || n_points < 1 || g.dim_ != ambient_dimension(g.space_)) throw fail("inconsistent header");
    g.spec_.n = g.space_.n;
  }
  {
    if (!std::getline(in, line)) throw fail("missing spec line");
    std::istringstream h(line);
    std::string hash, tag, key;
    h >> hash >> tag;
    if (hash != "#" || tag != "spec") throw fail("bad spec line");
    RandersSpec& s = g.spec_;
    while (h >> key) {
      if (key == "a") h >> s.a;
      else if (key == "b") h >> s.b;
      else if (key == "c") h >> s.c;
      else if (key == "a1") h >> s.a1;
      else if (key == "a2") h >> s.a2;
      else if (key == "axis") h >> s.axis[0] >> s.axis[1] >> s.axis[2];
      else if (key == "v") h >> g.space_.v[0] >> g.space_.v[1] >> g.space_.v[2];
      else throw fail("unknown spec key " + key);
      if (h.fail()) throw fail("malformed spec line");
    }
  }
  g.coords_.assign(static_cast<std::size_t>(n_points) * g.dim_, 0.0);
  std::vector<bool> seen(n_points, false);
  std::vector<std::vector<std::pair<int, double>>> adjacency(n_points);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (line[0] == 'v') {
      int i = -1;
      ls >> word >> i;
      if (i < 0 || i >= n_points) throw fail("vertex index out of range");
      for (int d = 0; d < g.dim_; ++d) ls >> g.coords_[static_cast<std::size_t>(i) * g.dim_ + d];
      if (ls.fail()) throw fail("malformed vertex line");
      seen[i] = true;
    } else {
      int i = -1, j = -1;
      double w = 0.0;
      ls >> i >> j >> w;
      if (ls.fail() || i < 0 || j < 0 || i >= n_points || j >= n_points || !(w >= 0.0)) throw fail("malformed edge line");
      adjacency[i].emplace_back(j, w);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw fail("missing vertex lines");
  g.finalize(std::move(adjacency));
  return g;
}

}  // namespace randers
