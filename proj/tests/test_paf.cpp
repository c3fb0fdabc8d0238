#include <doctest.h>

#include "padic/paf.hpp"

using namespace padic;

TEST_CASE("eval on simple shapes") {
  Paf c = Paf::constant(QLog(-1), QLog(1), rat(5));
  CHECK(c.eval(QLog(0)) == QLog(5));
  CHECK(c.eval(QLog(-1)) == QLog(5));

  // slope 1 through (a=-1, value 0): eval(0) = 1
  Paf f = Paf::affine(QLog(-1), QLog(2), rat(3), rat(1));
  CHECK(f.eval(QLog(0)) == QLog(1));
  CHECK(f.eval(QLog(-1)) == QLog(0));
  CHECK(f.eval(QLog(2)) == QLog(3));
  CHECK_THROWS(f.eval(QLog(3)));

  // breakpoint continuity
  Paf g = Paf::from_pieces(QLog(-1), QLog(1), {rat(0)}, {rat(0), rat(2)}, rat(2));
  CHECK(g.eval(QLog(0)) == QLog(0));
  CHECK(g.eval(QLog(rat(-1, 2))) == QLog(0));
  CHECK(g.eval(QLog(rat(1, 2))) == QLog(1));
}

TEST_CASE("unbounded left end stores the constant") {
  Paf f = Paf::from_pieces(QLog::neg_inf(), QLog(0), {rat(-2)}, {rat(0), rat(1)}, rat(7));
  CHECK(f.eval(QLog::neg_inf()) == QLog(5));
  CHECK(f.eval(QLog(-10)) == QLog(5));
  CHECK(f.eval(QLog(0)) == QLog(7));
  CHECK_THROWS(Paf::affine(QLog::neg_inf(), QLog(0), rat(0), rat(1)));  // nonzero unbounded slope
}

TEST_CASE("combine add/min/max") {
  QLog a(-1), b(1);
  Paf f = Paf::constant(a, b, rat(0));
  Paf g = Paf::diagonal(a, b);
  Paf mn = Paf::combine(f, g, CombineOp::Min);
  CHECK(mn.knots() == std::vector<Rat>{rat(0)});
  CHECK(mn.eval(QLog(rat(-1, 2))) == QLog(rat(-1, 2)));
  CHECK(mn.eval(QLog(rat(1, 2))) == QLog(0));

  Paf zero = f - f;
  CHECK(zero.eval(QLog(0)) == QLog(0));
  CHECK(zero.slopes() == std::vector<Rat>{rat(0)});

  CHECK(Paf::combine(g, g, CombineOp::Max) == g);

  // add is pointwise
  Paf s = f + g;
  CHECK(s == g);
}

TEST_CASE("min/max pointwise at random sample points") {
  Paf f = Paf::from_pieces(QLog(-4), QLog(4), {rat(-1), rat(2)}, {rat(2), rat(-1), rat(3)}, rat(5));
  Paf g = Paf::from_pieces(QLog(-4), QLog(4), {rat(0)}, {rat(0), rat(1)}, rat(1));
  Paf mn = Paf::combine(f, g, CombineOp::Min);
  Paf mx = Paf::combine(f, g, CombineOp::Max);
  for (long n = -16; n <= 16; ++n) {
    QLog L(rat(n, 4));
    QLog fv = f.eval(L), gv = g.eval(L);
    CHECK(mn.eval(L) == qmin(fv, gv));
    CHECK(mx.eval(L) == qmax(fv, gv));
    CHECK(mn.eval(L) <= fv);
    CHECK(mx.eval(L) >= gv);
  }
}

TEST_CASE("slope_at sides") {
  Paf g = Paf::from_pieces(QLog(-1), QLog(1), {rat(0)}, {rat(0), rat(2)}, rat(2));
  CHECK(g.slope_at(QLog(rat(-1, 2)), Side::Left) == rat(0));
  CHECK(g.slope_at(QLog(0), Side::Left) == rat(0));
  CHECK(g.slope_at(QLog(0), Side::Right) == rat(2));
  CHECK(g.slope_at(QLog(-1), Side::Right) == rat(0));
  CHECK(g.slope_at(QLog(1), Side::Left) == rat(2));
  CHECK_THROWS(g.slope_at(QLog(-1), Side::Left));
  CHECK_THROWS(g.slope_at(QLog(1), Side::Right));
}

TEST_CASE("concavity") {
  Paf aff = Paf::affine(QLog(-1), QLog(1), rat(0), rat(3));
  CHECK(aff.is_concave());
  Paf f = Paf::diagonal(QLog(-1), QLog(1));
  Paf g = Paf::constant(QLog(-1), QLog(1), rat(0));
  CHECK(Paf::combine(f, g, CombineOp::Min).is_concave());
  Paf mx = Paf::combine(f, g, CombineOp::Max);
  CHECK_FALSE(mx.is_concave());
  CHECK(mx.convex_kinks().size() == 1);
  CHECK(mx.is_concave(QLog(0), QLog(1)));
}

TEST_CASE("diagonal_crossing") {
  CHECK(Paf::diagonal(QLog(-1), QLog(0)).diagonal_crossing() == QLog(0));
  Paf above = Paf::constant(QLog(-1), QLog(0), rat(5));
  CHECK(above.diagonal_crossing() == QLog(-1));
  // identity on [-1,-1/2] then constant
  Paf m = Paf::from_pieces(QLog(-1), QLog(0), {rat(-1, 2)}, {rat(1), rat(0)}, rat(-1, 2));
  CHECK(m.diagonal_crossing() == QLog(rat(-1, 2)));
  Paf below = Paf::affine(QLog(-1), QLog(0), rat(-2), rat(0));
  CHECK_THROWS(below.diagonal_crossing());
}

TEST_CASE("rebuild from rows reproduces the function") {
  Paf f = Paf::from_pieces(QLog(-4), QLog(4), {rat(-1), rat(2)}, {rat(2), rat(-1), rat(3)}, rat(5));
  auto rows = f.rows();
  std::vector<Rat> knots, slopes;
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) knots.push_back(rows[i].pos.rat());
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) slopes.push_back(rows[i].slope_right);
  Paf g = Paf::from_pieces(f.lo(), f.hi(), knots, slopes, rows.back().value);
  CHECK(f == g);
}

TEST_CASE("laplacian of branch slopes") {
  Prime p(2);
  Point x(rat(0), QLog(0));
  BranchSlopes bs;
  bs.at = x;
  // |T|^{-1} at the Gauss point: +1 toward 0, -1 toward infinity
  bs.set(direction_of(x, Rat(0), p), rat(1), p);
  bs.set(DirectionId::infinity_dir(), rat(-1), p);
  CHECK(bs.laplacian() == rat(0));

  BranchSlopes none;
  CHECK(none.laplacian() == rat(0));

  BranchSlopes three;
  three.at = x;
  three.set(direction_of(x, Rat(0), p), rat(1), p);
  three.set(direction_of(x, Rat(1), p), rat(1), p);
  three.set(DirectionId::infinity_dir(), rat(-1), p);
  CHECK(three.laplacian() == rat(1));
}

TEST_CASE("laplacian is linear in the function") {
  Prime p(3);
  Point x(rat(0), QLog(0));
  auto d0 = direction_of(x, Rat(0), p);
  auto d1 = direction_of(x, Rat(1), p);
  BranchSlopes f, g, comb;
  f.at = g.at = comb.at = x;
  f.set(d0, rat(2), p);
  f.set(d1, rat(-1), p);
  g.set(d0, rat(1, 2), p);
  g.set(d1, rat(3), p);
  Rat alpha = rat(2), beta = rat(-3);
  comb.set(d0, alpha * f.get(d0, p) + beta * g.get(d0, p), p);
  comb.set(d1, alpha * f.get(d1, p) + beta * g.get(d1, p), p);
  CHECK(comb.laplacian() == alpha * f.laplacian() + beta * g.laplacian());
}
