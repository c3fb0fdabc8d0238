#include <doctest.h>

#include "padic/line.hpp"

using namespace padic;

TEST_CASE("point equality is closed-disk equality") {
  Prime p(2);
  CHECK(point_eq(Point(rat(0), QLog(0)), Point(rat(2), QLog(0)), p));   // |0-2| = 1/2 <= 1
  CHECK(point_eq(Point(rat(0), QLog(0)), Point(rat(1), QLog(0)), p));   // |0-1| = 1 <= 1
  CHECK_FALSE(point_eq(Point(rat(0), QLog(-1)), Point(rat(1), QLog(-1)), p));
  CHECK_FALSE(point_eq(Point(rat(0), QLog(0)), Point(rat(0), QLog(-1)), p));
  CHECK(point_eq(Point(rat(3), QLog::neg_inf()), Point(rat(3), QLog::neg_inf()), p));
  CHECK_FALSE(point_eq(Point(rat(3), QLog::neg_inf()), Point(rat(5), QLog::neg_inf()), p));
}

TEST_CASE("lambda and generic radius") {
  Prime p(2);
  Point x(rat(0), QLog(-1));
  CHECK(point_eq(lambda(x, QLog(0), p), Point(rat(0), QLog(0)), p));
  CHECK(point_eq(lambda(Point(rat(0), QLog(0)), QLog(-5), p), Point(rat(0), QLog(0)), p));
  CHECK(point_eq(lambda(Point(rat(2), QLog(-3)), QLog(-1), p), Point(rat(2), QLog(-1)), p));
  // idempotence
  Point y = lambda(x, QLog(rat(1, 2)), p);
  CHECK(point_eq(lambda(y, QLog(rat(1, 2)), p), y, p));
  CHECK(generic_radius(Point(rat(0), QLog(-2))) == QLog(-2));
  CHECK(generic_radius(Point(rat(7), QLog::neg_inf())) == QLog::neg_inf());
  CHECK(generic_radius(Point(rat(5), QLog(0))) == QLog(0));
}

TEST_CASE("membership") {
  Prime p(2);
  AffinoidDomain X(Point(rat(0), QLog(0)), {Point(rat(1), QLog(-2))}, p);
  CHECK(membership(Point(rat(0), QLog(0)), X, p));
  CHECK(membership(Point(rat(1), QLog(-2)), X, p));   // hole boundary: holes are open
  CHECK_FALSE(membership(Point(rat(1), QLog(-3)), X, p));  // inside the hole
  CHECK_FALSE(membership(Point(rat(0), QLog(1)), X, p));        // outside the outer disk
  CHECK_FALSE(membership(Point(rat(1, 2), QLog(-1)), X, p));    // |1/2|_2 = 2 > 1
  CHECK(membership(Point(rat(5), QLog(-1)), X, p));             // |5|_2 = 1
}

TEST_CASE("maximal radius") {
  Prime p(2);
  AffinoidDomain disk(Point(rat(0), QLog(0)), {}, p);
  CHECK(maximal_radius(Point(rat(0), QLog(-1)), disk, p) == QLog(0));

  AffinoidDomain X(Point(rat(0), QLog(0)), {Point(rat(1), QLog(-1))}, p);
  CHECK(maximal_radius(Point(rat(0), QLog(-2)), X, p) == QLog(0));  // |0-1| = 1 = R_0

  AffinoidDomain Y(Point(rat(0), QLog(0)), {Point(rat(1), QLog(-4))}, p);
  CHECK(maximal_radius(Point(rat(5), QLog(-3)), Y, p) == QLog(-2));  // val(5-1) = -2
  CHECK_THROWS(maximal_radius(Point(rat(1), QLog(-5)), Y, p));
}

TEST_CASE("sandwich r(x) <= rho_{x,X} <= R_0") {
  Prime p(3);
  AffinoidDomain X(Point(rat(0), QLog(0)), {Point(rat(1), QLog(-2)), Point(rat(3), QLog(-1))}, p);
  for (long c = -5; c <= 5; ++c)
    for (long n = -6; n <= 0; ++n) {
      Point x(rat(c), QLog(rat(n, 2)));
      if (!membership(x, X, p)) continue;
      QLog rho = maximal_radius(x, X, p);
      CHECK(generic_radius(x) <= rho);
      CHECK(rho <= X.outer.log_radius);
    }
}

TEST_CASE("minimal triangulation") {
  Prime p(2);
  AffinoidDomain nohole(Point(rat(0), QLog(0)), {}, p);
  CHECK(minimal_triangulation(nohole, p).size() == 1);

  AffinoidDomain one(Point(rat(0), QLog(0)), {Point(rat(1), QLog(-2))}, p);
  auto s1 = minimal_triangulation(one, p);
  CHECK(s1.size() == 2);

  // two holes at 0 and 1: bifurcation at x_{0, val(1)} = x_{0,0} = outer here
  AffinoidDomain two(Point(rat(0), QLog(0)), {Point(rat(0), QLog(-2)), Point(rat(1), QLog(-2))}, p);
  auto s2 = minimal_triangulation(two, p);
  CHECK(s2.size() == 3);  // outer point doubles as the bifurcation

  AffinoidDomain three(Point(rat(0), QLog(1)), {Point(rat(0), QLog(-2)), Point(rat(1), QLog(-2))},
                       p);
  auto s3 = minimal_triangulation(three, p);
  CHECK(s3.size() == 4);  // outer, two holes, meet at x_{0, 0}
}

TEST_CASE("directions") {
  Prime p3(3);
  Point gauss(rat(0), QLog(0));
  CHECK(direction_of(gauss, Rat(0), p3).same(direction_of(gauss, Rat(3), p3), p3));
  CHECK_FALSE(direction_of(gauss, Rat(1), p3).same(direction_of(gauss, Rat(0), p3), p3));
  CHECK_FALSE(direction_of(gauss, std::nullopt, p3).same(direction_of(gauss, Rat(0), p3), p3));
  // outside the closed disk: the infinity-side direction
  CHECK(direction_of(Point(rat(0), QLog(-1)), Rat(1), p3).to_infinity);
}

TEST_CASE("skeleton shapes") {
  Prime p(2);
  AffinoidDomain nohole(Point(rat(0), QLog(0)), {}, p);
  SkeletonGraph g0 = skeleton(nohole, p);
  CHECK(g0.verts.size() == 1);
  CHECK(g0.edges.empty());
  CHECK(check_admissible(g0, nohole, p));

  AffinoidDomain one(Point(rat(0), QLog(2)), {Point(rat(0), QLog(-1))}, p);
  SkeletonGraph g1 = skeleton(one, p);
  CHECK(g1.verts.size() == 2);
  CHECK(g1.edges.size() == 1);
  CHECK(g1.edges[0].on_skeleton);
  CHECK(check_admissible(g1, one, p));

  // Y-shape: two holes meeting at x_{1, val(1-2)} = x_{1,0}
  AffinoidDomain two(Point(rat(0), QLog(2)), {Point(rat(1), QLog(-2)), Point(rat(2), QLog(-3))},
                     p);
  SkeletonGraph g2 = skeleton(two, p);
  CHECK(g2.verts.size() == 4);
  CHECK(g2.edges.size() == 3);
  CHECK(check_admissible(g2, two, p));
  int meet = g2.find_vertex(Point(rat(1), QLog(0)), p);
  CHECK(meet >= 0);
  CHECK(g2.is_bifurcation(meet));
  // bifurcation vertices belong to the minimal triangulation
  auto sx = minimal_triangulation(two, p);
  bool found = false;
  for (const auto& q : sx) found = found || point_eq(q, g2.verts[(std::size_t)meet].pt, p);
  CHECK(found);
}

TEST_CASE("saturation adds branches for rational points") {
  Prime p(2);
  AffinoidDomain disk(Point(rat(0), QLog(0)), {}, p);
  SkeletonGraph g = saturation(disk, {rat(0), rat(1)}, p);
  // paths from 0 and 1 meet at x_{0, val(1)} = x_{0,0} = root
  CHECK(g.edges.size() == 2);
  CHECK(check_admissible(g, disk, p));
  for (const auto& e : g.edges) CHECK_FALSE(e.on_skeleton);

  // point inside a hole enters at the hole boundary: no new branch
  AffinoidDomain X(Point(rat(0), QLog(0)), {Point(rat(1), QLog(-2))}, p);
  SkeletonGraph h = saturation(X, {rat(1)}, p);
  SkeletonGraph h0 = skeleton(X, p);
  CHECK(h.edges.size() == h0.edges.size());

  // point outside the outer disk is ignored
  SkeletonGraph k = saturation(disk, {rat(1, 2)}, p);  // |1/2|_2 = 2 > 1
  CHECK(k.edges.empty());
}

TEST_CASE("maximal_radius constant off the skeleton") {
  Prime p(2);
  AffinoidDomain X(Point(rat(0), QLog(0)), {Point(rat(1), QLog(-3))}, p);
  // x = x_{5,-2}: not on the skeleton (val(5-1) = -2 = L puts it on it; use -5/2)
  Point x(rat(5), QLog(rat(-5, 2)));
  QLog r1 = maximal_radius(x, X, p);
  QLog r2 = maximal_radius(lambda(x, QLog(rat(-9, 4)), p), X, p);
  CHECK(r1 == r2);
}
