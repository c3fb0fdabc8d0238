#include "padic/line.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace padic {

namespace {

// log_p |a - b|, with the -inf sentinel for a == b.
QLog dist_log(const Rat& a, const Rat& b, const Prime& p) {
  if (a == b) return QLog::neg_inf();
  return val_rational(a - b, p);
}

// |T - z|(x) = max(|c - z|, radius).
QLog point_abs(const Point& x, const Rat& z, const Prime& p) {
  return qmax(dist_log(x.center, z, p), x.log_radius);
}

}  // namespace

bool point_eq(const Point& a, const Point& b, const Prime& p) {
  if (a.log_radius != b.log_radius) return false;
  if (a.log_radius.is_neg_inf()) return a.center == b.center;
  return dist_log(a.center, b.center, p) <= a.log_radius;
}

Point lambda(const Point& x, const QLog& l, const Prime&) {
  return Point(x.center, qmax(x.log_radius, l));
}

QLog generic_radius(const Point& x) { return x.log_radius; }

AffinoidDomain::AffinoidDomain(Point out, std::vector<Point> hs, const Prime& p)
    : outer(std::move(out)), holes(std::move(hs)) {
  if (!outer.log_radius.is_finite())
    throw std::invalid_argument("AffinoidDomain: outer radius must be finite");
  for (std::size_t i = 0; i < holes.size(); ++i) {
    if (!holes[i].log_radius.is_finite())
      throw std::invalid_argument("AffinoidDomain: hole radius must be finite");
    if (holes[i].log_radius > outer.log_radius)
      throw std::invalid_argument("AffinoidDomain: hole larger than the outer disk");
    if (dist_log(holes[i].center, outer.center, p) > outer.log_radius)
      throw std::invalid_argument("AffinoidDomain: hole center outside the outer disk");
    for (std::size_t j = 0; j < i; ++j) {
      QLog d = dist_log(holes[i].center, holes[j].center, p);
      if (d < qmax(holes[i].log_radius, holes[j].log_radius))
        throw std::invalid_argument("AffinoidDomain: holes are not disjoint");
    }
  }
}

bool membership(const Point& x, const AffinoidDomain& X, const Prime& p) {
  if (point_abs(x, X.outer.center, p) > X.outer.log_radius) return false;
  for (const auto& h : X.holes)
    if (point_abs(x, h.center, p) < h.log_radius) return false;
  return true;
}

QLog maximal_radius(const Point& x, const AffinoidDomain& X, const Prime& p) {
  if (!membership(x, X, p)) throw std::domain_error("maximal_radius: point not in the domain");
  QLog m = X.outer.log_radius;
  for (const auto& h : X.holes) m = qmin(m, point_abs(x, h.center, p));
  return m;
}

std::vector<Point> minimal_triangulation(const AffinoidDomain& X, const Prime& p) {
  std::vector<Point> pts;
  auto push = [&](const Point& q) {
    for (const auto& e : pts)
      if (point_eq(e, q, p)) return;
    pts.push_back(q);
  };
  push(X.outer);
  for (const auto& h : X.holes) push(h);
  for (std::size_t i = 0; i < X.holes.size(); ++i)
    for (std::size_t j = i + 1; j < X.holes.size(); ++j)
      push(Point(X.holes[i].center, dist_log(X.holes[i].center, X.holes[j].center, p)));
  return pts;
}

bool DirectionId::same(const DirectionId& o, const Prime& p) const {
  if (to_infinity || o.to_infinity) return to_infinity == o.to_infinity;
  if (level != o.level) return false;
  if (residue == o.residue) return true;
  return val_rational(residue - o.residue, p) < level;
}

std::string DirectionId::str() const {
  if (to_infinity) return "inf";
  return "D-(" + rat_to_string(residue) + "," + level.str() + ")";
}

DirectionId direction_of(const Point& x, const std::optional<Rat>& target, const Prime& p) {
  if (!target) return DirectionId::infinity_dir();
  if (!x.log_radius.is_finite())
    throw std::domain_error("direction_of: no directions at a type-1 point");
  if (dist_log(x.center, *target, p) > x.log_radius) return DirectionId::infinity_dir();
  return DirectionId::residue_dir(*target, x.log_radius);
}

int SkeletonGraph::find_vertex(const Point& x, const Prime& p) const {
  for (std::size_t i = 0; i < verts.size(); ++i)
    if (point_eq(verts[i].pt, x, p)) return static_cast<int>(i);
  return -1;
}

std::vector<int> SkeletonGraph::edges_top_down() const {
  std::vector<int> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (edges[a].hi != edges[b].hi) return edges[b].hi < edges[a].hi;
    return edges[b].lo < edges[a].lo;
  });
  return order;
}

bool SkeletonGraph::is_bifurcation(int v) const { return direction_count(v) >= 3; }

int SkeletonGraph::direction_count(int v) const {
  const auto& vx = verts[static_cast<std::size_t>(v)];
  return static_cast<int>(vx.down_edges.size()) + (vx.up_edge >= 0 ? 1 : 0);
}

namespace {

struct PathSpec {
  Rat center;
  QLog start;
};

}  // namespace

namespace {

SkeletonGraph build_from_paths(const AffinoidDomain& X, std::vector<PathSpec> paths,
                               const Prime& p);

}  // namespace

SkeletonGraph saturation(const AffinoidDomain& X, const std::vector<Rat>& extra_centers,
                         const Prime& p) {
  std::vector<std::pair<Rat, QLog>> starts;
  for (const auto& z : extra_centers) starts.emplace_back(z, QLog::neg_inf());
  return saturation_with_starts(X, starts, p);
}

SkeletonGraph saturation_with_starts(const AffinoidDomain& X,
                                     const std::vector<std::pair<Rat, QLog>>& starts,
                                     const Prime& p) {
  const QLog& L0 = X.outer.log_radius;
  std::vector<PathSpec> paths;
  for (const auto& h : X.holes) paths.push_back({h.center, h.log_radius});

  std::vector<std::pair<Rat, QLog>> extras = starts;
  std::sort(extras.begin(), extras.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [z, lvl] : extras) {
    if (dist_log(z, X.outer.center, p) > L0) continue;  // no presence in X
    QLog entry = lvl;
    for (const auto& h : X.holes) {
      QLog d = dist_log(z, h.center, p);
      if (d < h.log_radius) entry = qmax(entry, h.log_radius);
    }
    if (entry >= L0) continue;  // enters X only at the outer point
    bool dup = false;
    for (const auto& q : paths)
      if (entry >= q.start && dist_log(q.center, z, p) <= entry) {
        dup = true;  // path already covered from its entry level on
        break;
      }
    if (!dup) paths.push_back({z, entry});
  }
  return build_from_paths(X, std::move(paths), p);
}

namespace {

SkeletonGraph build_from_paths(const AffinoidDomain& X, std::vector<PathSpec> paths,
                               const Prime& p) {
  const QLog& L0 = X.outer.log_radius;
  SkeletonGraph g;
  auto vertex_of = [&](const Point& q) {
    int v = g.find_vertex(q, p);
    if (v >= 0) return v;
    g.verts.push_back(SkeletonVertex{q, {}, -1});
    return static_cast<int>(g.verts.size()) - 1;
  };
  g.root = vertex_of(X.outer);

  // Event levels per path: start, L0, merge levels with every other path.
  for (std::size_t i = 0; i < paths.size(); ++i) {
    std::set<QLog, std::less<QLog>> evs;
    evs.insert(paths[i].start);
    evs.insert(L0);
    for (std::size_t j = 0; j < paths.size(); ++j) {
      if (i == j) continue;
      QLog m = qmax(qmax(dist_log(paths[i].center, paths[j].center, p), paths[i].start),
                    paths[j].start);
      if (m <= L0) evs.insert(m);
    }
    std::vector<QLog> levels(evs.begin(), evs.end());
    for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
      const QLog& a = levels[k];
      const QLog& b = levels[k + 1];
      bool seen = false;
      for (const auto& e : g.edges)
        if (e.lo == a && e.hi == b && dist_log(e.center, paths[i].center, p) <= a) {
          seen = true;
          break;
        }
      if (seen) continue;
      SkeletonEdge e;
      e.center = paths[i].center;
      e.lo = a;
      e.hi = b;
      e.v_lo = vertex_of(Point(paths[i].center, a));
      e.v_hi = vertex_of(Point(paths[i].center, b));
      e.on_skeleton = false;
      for (const auto& h : X.holes)
        if (h.log_radius <= a && dist_log(e.center, h.center, p) <= a) {
          e.on_skeleton = true;
          break;
        }
      g.edges.push_back(e);
      int id = static_cast<int>(g.edges.size()) - 1;
      g.verts[static_cast<std::size_t>(e.v_lo)].up_edge = id;
      g.verts[static_cast<std::size_t>(e.v_hi)].down_edges.push_back(id);
    }
  }
  return g;
}

}  // namespace

SkeletonGraph skeleton(const AffinoidDomain& X, const Prime& p) { return saturation(X, {}, p); }

bool check_admissible(const SkeletonGraph& g, const AffinoidDomain& X, const Prime& p,
                      std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (g.root < 0 || g.verts.empty()) return fail("no root");
  if (!point_eq(g.verts[static_cast<std::size_t>(g.root)].pt, X.outer, p))
    return fail("root is not the outer boundary point");
  if (g.edges.size() + 1 != g.verts.size()) return fail("not a tree (edge count)");
  // Saturation: every non-root vertex has a strictly increasing chain of
  // up-edges reaching the root.
  for (std::size_t v = 0; v < g.verts.size(); ++v) {
    if (static_cast<int>(v) == g.root) {
      if (g.verts[v].up_edge != -1) return fail("root has an up edge");
      continue;
    }
    int cur = static_cast<int>(v);
    std::size_t guard = 0;
    while (cur != g.root) {
      if (++guard > g.verts.size()) return fail("up-edge chain does not terminate");
      int ue = g.verts[static_cast<std::size_t>(cur)].up_edge;
      if (ue < 0) return fail("vertex without up edge");
      const auto& e = g.edges[static_cast<std::size_t>(ue)];
      if (e.v_lo != cur) return fail("up edge inconsistent");
      if (!(e.lo < e.hi)) return fail("degenerate edge");
      cur = e.v_hi;
    }
  }
  // Edge endpoints carry the points they claim.
  for (const auto& e : g.edges) {
    if (!point_eq(g.verts[static_cast<std::size_t>(e.v_lo)].pt, Point(e.center, e.lo), p))
      return fail("edge low endpoint mismatch");
    if (!point_eq(g.verts[static_cast<std::size_t>(e.v_hi)].pt, Point(e.center, e.hi), p))
      return fail("edge high endpoint mismatch");
    if (!membership(Point(e.center, e.lo), X, p)) return fail("edge leaves the domain");
  }
  // Contains Gamma_X: each hole boundary is a vertex and its path up is
  // covered (guaranteed by the chain check once the vertex exists).
  for (const auto& h : X.holes)
    if (g.find_vertex(h, p) < 0) return fail("hole boundary missing");
  return true;
}

}  // namespace padic
