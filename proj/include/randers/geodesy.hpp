#pragma once

// Brute-force distance oracle: a k-nearest-neighbour graph over random points
// of the model sphere, weighted by the invariant Randers norm, and Dijkstra
// shortest paths on it.

#include <iosfwd>
#include <memory>
#include <vector>

#include "randers/flows.hpp"

namespace randers {

namespace detail {
class NeighbourIndex;
}

/// Points are stored in real ambient coordinates:
///  USphere: C^{n+1} as (Re z0, Im z0, Re z1, ...), dimension 2(n+1);
///  SU2:     the first column g e1 in C^2, dimension 4;
///  SpSphere: H^{n+1} as (w, x, y, z) per quaternion, dimension 4(n+1).
class SphereGraph {
 public:
  const ModelSpace& space() const { return space_; }
  const RandersSpec& spec() const { return spec_; }
  int k() const { return k_; }
  int size() const { return dim_ > 0 ? static_cast<int>(coords_.size() / dim_) : 0; }
  int ambient_dimension() const { return dim_; }
  Eigen::VectorXd point(int i) const;
  /// Out-edges of vertex i as (target, weight).
  std::vector<std::pair<int, double>> out_edges(int i) const;
  std::size_t edge_count() const { return targets_.size(); }
  /// Median edge weight, the discretization scale h.
  double scale() const { return scale_; }
  /// Indices of the k vertices nearest (Euclidean) to an ambient point.
  std::vector<int> nearest(const Eigen::VectorXd& p, int count) const;

  friend SphereGraph build_graph(const ModelSpace&, const RandersSpec&, int, int, RngStream&);
  friend SphereGraph import_graph(std::istream&);

 private:
  SphereGraph() = default;
  void finalize(std::vector<std::vector<std::pair<int, double>>> adjacency);

  ModelSpace space_;
  RandersSpec spec_;
  int k_ = 0;
  int dim_ = 0;
  std::vector<double> coords_;
  std::vector<std::size_t> offsets_{0};
  std::vector<int> targets_;
  std::vector<double> weights_;
  double scale_ = 0.0;
  std::shared_ptr<const detail::NeighbourIndex> index_;
};

/// Ambient real dimension of the sphere of a model space.
int ambient_dimension(const ModelSpace& space);

/// F_x(v) for a tangent vector v at the unit point x, both in ambient coordinates.
double tangent_norm(const ModelSpace& space, const RandersSpec& s, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& v);
/// F_x(P_x(y - x)) with P_x the orthogonal projection onto the tangent space at x.
double edge_weight(const ModelSpace& space, const RandersSpec& s, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// N >= 500 normalized Gaussian points (the image of the base point under
/// Haar-random group elements) joined to their k >= 8 nearest neighbours in
/// both directions. Throws ResolutionTooCoarse if not strongly connected.
SphereGraph build_graph(const ModelSpace& space, const RandersSpec& s, int n_points, int k, RngStream& rng);

bool strongly_connected(const SphereGraph& g);

struct DistanceReport {
  int source = 0;
  int target = 0;
  double distance = 0.0;  // shortest path length in the graph
  int hops = 0;
  double h = 0.0;
  double refined = 0.0;   // length of the graph path after relax_path
};

/// Shortest directed path from -> to. Throws ResolutionTooCoarse if unreachable.
DistanceReport distance(const SphereGraph& g, int from, int to);
/// One-to-all distances (infinity where unreachable).
std::vector<double> distances_from(const SphereGraph& g, int from);

/// Distance from vertex `from` to an arbitrary point p of the sphere. p is
/// attached to the graph through edges from its k nearest vertices, so it
/// need not be a sample point. target is set to -1.
DistanceReport distance_to_point(const SphereGraph& g, int from, const Eigen::VectorXd& p);

/// Edge cost: the norm at the normalized chord midpoint of the great-circle
/// velocity from x to y. Exact for the round metric.
double midpoint_weight(const ModelSpace& space, const RandersSpec& s, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& y);

/// Shortens a polyline on the sphere with fixed endpoints: every segment is
/// split into `subdivide` pieces, then the discrete energy sum w_i^2 of the
/// midpoint weights is minimized by Gauss-Seidel Newton sweeps over the
/// interior vertices. Returns the length sum w_i of the relaxed polyline.
double relax_path(const ModelSpace& space, const RandersSpec& s, std::vector<Eigen::VectorXd> path,
                  int subdivide = 2);

struct DisplacementSample {
  int vertex = 0;
  double displacement = 0.0;  // relaxed path length to phi(x)
  double graph = 0.0;         // graph distance to phi(x) attached to its neighbours
  double snapped = 0.0;       // graph distance to the vertex nearest phi(x)
  double snap_gap = 0.0;      // |phi(x) - nearest vertex|, Euclidean
};

struct DisplacementReport {
  std::vector<DisplacementSample> samples;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double tolerance = 0.0;
  bool constant = false;  // (max - min) / mean <= tolerance
  double graph_spread = 0.0;  // the same ratio for the raw graph distances
  double relative_spread() const { return mean > 0.0 ? (max - min) / mean : 0.0; }
};

inline constexpr double kDisplacementTolerance = 0.07;

/// d(x, phi(x)) for `sample_points` random vertices x. The flow must act on
/// the graph's sphere: SU2 flows on SU2 graphs, unitary flows on USphere or
/// SU2 graphs of matching size; otherwise NotApplicable.
DisplacementReport displacement_profile(const SphereGraph& g, const FlowIsometry& f, int sample_points,
                                        RngStream& rng, double tolerance = kDisplacementTolerance);

/// Image of an ambient point under a flow.
Eigen::VectorXd flow_point(const SphereGraph& g, const FlowIsometry& f, const Eigen::VectorXd& x);

/// Text format:
///   # randers-graph <family> n <n> k <k> points <N> dim <D>
///   # spec a <a> b <b> c <c> a1 <a1> a2 <a2> axis <x> <y> <z> v <v0> <v1> <v2>
///   v <i> <coord_0> ... <coord_{D-1}>      (one per vertex)
///   <i> <j> <weight>                        (one per directed edge)
/// Numbers are written with 17 significant digits.
void export_graph(const SphereGraph& g, std::ostream& out);
SphereGraph import_graph(std::istream& in);

}  // namespace randers
