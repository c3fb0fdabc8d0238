#ifndef PADIC_LINE_HPP
#define PADIC_LINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "padic/scalars.hpp"

namespace padic {

/// Berkovich point x_{c,rho}: rational center plus log-radius
/// (log_radius = -inf for type-1 points).
struct Point {
  Rat center;
  QLog log_radius;

  Point() : center(0), log_radius(QLog::neg_inf()) {}
  Point(Rat c, QLog l) : center(std::move(c)), log_radius(std::move(l)) {}
};

/// Same closed disk: equal log-radii and |c - c'| <= radius.
bool point_eq(const Point& a, const Point& b, const Prime& p);

/// lambda_x(L') = x_{c, max(L, L')}: the canonical path toward +infinity.
Point lambda(const Point& x, const QLog& l, const Prime& p);

/// Generic radius r(x); equals the log-radius for rational centers.
QLog generic_radius(const Point& x);

/// X = D^+(c_0,R_0) minus a disjoint union of open disks D^-(c_i,R_i).
struct AffinoidDomain {
  Point outer;
  std::vector<Point> holes;

  AffinoidDomain() = default;
  AffinoidDomain(Point out, std::vector<Point> hs, const Prime& p);
};

bool membership(const Point& x, const AffinoidDomain& X, const Prime& p);

/// rho_{x,X} = min(R_0, min_i |t - c_i|) on the log scale, t a generic
/// point of x.  Throws if x is not a member.
QLog maximal_radius(const Point& x, const AffinoidDomain& X, const Prime& p);

/// S_X = Shilov boundary plus the bifurcation points of Gamma_X.
std::vector<Point> minimal_triangulation(const AffinoidDomain& X, const Prime& p);

/// Germ of segment out of a point: toward +infinity, or into the open
/// residue disk D^-(z, R) of a representative z.
struct DirectionId {
  bool to_infinity = true;
  Rat residue = Rat(0);
  QLog level = QLog(0);

  static DirectionId infinity_dir() { return DirectionId{}; }
  static DirectionId residue_dir(Rat z, QLog level) {
    return DirectionId{false, std::move(z), std::move(level)};
  }
  bool same(const DirectionId& o, const Prime& p) const;
  std::string str() const;
};

/// Direction at x of the path toward a rational target (or infinity).
DirectionId direction_of(const Point& x, const std::optional<Rat>& target, const Prime& p);

/// Finite subtree of X: vertices are Points, edges are log-radius
/// intervals along a fixed center.  Always saturated and rooted at
/// x_{c_0, L_0}.
struct SkeletonVertex {
  Point pt;
  std::vector<int> down_edges;  // edges whose top end is this vertex
  int up_edge = -1;             // edge toward the root, -1 for the root
};

struct SkeletonEdge {
  Rat center;
  QLog lo, hi;
  int v_lo = -1, v_hi = -1;
  bool on_skeleton = false;  // lies on Gamma_X
};

struct SkeletonGraph {
  std::vector<SkeletonVertex> verts;
  std::vector<SkeletonEdge> edges;
  int root = -1;

  int find_vertex(const Point& x, const Prime& p) const;
  /// Edges sorted so that each edge appears after the edge above it.
  std::vector<int> edges_top_down() const;
  bool is_bifurcation(int v) const;
  /// Number of graph directions at a vertex (children + 1 unless root).
  int direction_count(int v) const;
};

/// Gamma_X = Sat(boundary): one vertex if there are no holes, otherwise
/// the union of the segments from the hole boundaries to the outer point.
SkeletonGraph skeleton(const AffinoidDomain& X, const Prime& p);

/// Gamma_X together with the saturation of extra rational points
/// (entered at their first level inside X).  Points outside the outer
/// disk are ignored.
SkeletonGraph saturation(const AffinoidDomain& X, const std::vector<Rat>& extra_centers,
                         const Prime& p);

/// Same, but each extra path starts at a caller-chosen level (used to cut
/// candidate branches at a finite depth).
SkeletonGraph saturation_with_starts(const AffinoidDomain& X,
                                     const std::vector<std::pair<Rat, QLog>>& starts,
                                     const Prime& p);

/// Admissibility per the graph invariants: connected rooted tree,
/// contains Gamma_X, saturated, contains its end points.
bool check_admissible(const SkeletonGraph& g, const AffinoidDomain& X, const Prime& p,
                      std::string* why = nullptr);

}  // namespace padic

#endif
