#include <doctest.h>

#include "padic/spectral.hpp"

using namespace padic;

namespace {

FactoredRatFun frf(long num, long den) { return FactoredRatFun::from_constant(rat(num, den)); }

DifferentialOperator rank1(const FactoredRatFun& g1) {
  DifferentialOperator op;
  op.rank = 1;
  op.coeffs = {g1};
  return op;
}

DifferentialOperator rank2(const FactoredRatFun& g1, const FactoredRatFun& g2) {
  DifferentialOperator op;
  op.rank = 2;
  op.coeffs = {g1, g2};
  return op;
}

bool close(const QLog& a, const QLog& b, const Rat& tol) {
  if (!a.is_finite() || !b.is_finite()) return a == b;
  Rat d = a.rat() - b.rat();
  if (d < 0) d = -d;
  return d <= tol;
}

}  // namespace

TEST_CASE("operator spectral polygon at a point") {
  Prime p3(3), p2(2);
  // d/dT - 1/3: v_1 = -1 - 1/2 = -3/2
  NewtonPolygon a = spectral_polygon_at(rank1(frf(-1, 3)), Point(rat(0), QLog(0)), p3);
  CHECK(np_slopes(a) == std::vector<QLog>{QLog(rat(-3, 2))});

  // unit coefficient: s_1 = omega_log
  NewtonPolygon b = spectral_polygon_at(rank1(frf(-1, 1)), Point(rat(5), QLog(0)), p3);
  CHECK(np_slopes(b) == std::vector<QLog>{p3.omega_log()});

  // rank 2, p = 2, |g_1| = 2, |g_2| = 1/2: v = (0, -2, -1), hull slopes (-2, 1)
  NewtonPolygon c = spectral_polygon_at(rank2(frf(-1, 2), frf(-2, 1)), Point(rat(0), QLog(0)), p2);
  CHECK(np_slopes(c) == std::vector<QLog>{QLog(-2), QLog(1)});

  // zero coefficient: infinite tail
  NewtonPolygon d = spectral_polygon_at(rank2(frf(-1, 1), FactoredRatFun::zero()),
                                        Point(rat(0), QLog(0)), p2);
  CHECK(np_slopes(d)[1].is_pos_inf());
}

TEST_CASE("Young small-radius certification") {
  Prime p3(3);
  Point x(rat(0), QLog(0));
  NewtonPolygon a = spectral_polygon_at(rank1(frf(-1, 3)), x, p3);
  SpectralRadii ra = small_radius_certify(a, x, p3);
  CHECK(ra.values == std::vector<QLog>{QLog(rat(-3, 2))});
  CHECK(ra.certified == std::vector<bool>{true});

  // slope 0 at x_{0,0}: bound is -1/2, not certified, truncated to r(x) = 0
  NewtonPolygon c = np_from_values({QLog(0), QLog(0)});
  SpectralRadii rc = small_radius_certify(c, x, p3);
  CHECK(rc.values == std::vector<QLog>{QLog(0)});
  CHECK(rc.certified == std::vector<bool>{false});

  // slope exactly omega * r(x): strictness means not certified
  NewtonPolygon d = np_from_values({QLog(0), p3.omega_log()});
  SpectralRadii rd = small_radius_certify(d, x, p3);
  CHECK(rd.certified == std::vector<bool>{false});
  CHECK(rd.values == std::vector<QLog>{p3.omega_log()});
}

TEST_CASE("spectral profiles along a segment") {
  Prime p2(2);
  // rank 1 constant coefficient: h_1 affine with slope 0
  auto h = spectral_profile_along(rank1(frf(-1, 3)), rat(0), QLog(-2), QLog(0), p2);
  REQUIRE(h.size() == 2);
  REQUIRE(h[1].has_value());
  CHECK(h[1]->slopes() == std::vector<Rat>{rat(0)});

  // rank 1, g_1 = -T at c=0: v_1(L) = -L - 1, slope -1 throughout
  FactoredRatFun mt{rat(-1), {{rat(0), 1}}};
  auto h2 = spectral_profile_along(rank1(mt), rat(0), QLog(-2), QLog(0), p2);
  REQUIRE(h2[1].has_value());
  CHECK(h2[1]->slopes() == std::vector<Rat>{rat(-1)});
  for (long n = -4; n <= 0; ++n) {
    QLog L(rat(n, 2));
    NewtonPolygon np = spectral_polygon_at(rank1(mt), Point(rat(0), L), p2);
    CHECK(h2[1]->eval(L) == np.heights[1]);
  }

  // rank 2 with g_2 = -(T-1): break at L = 0 in h_2
  FactoredRatFun g2{rat(-1), {{rat(1), 1}}};
  auto h3 = spectral_profile_along(rank2(frf(-1, 1), g2), rat(0), QLog(-2), QLog(1), p2);
  REQUIRE(h3[2].has_value());
  CHECK(h3[2]->knots() == std::vector<Rat>{rat(0)});
  for (long n = -4; n <= 2; ++n) {
    QLog L(rat(n, 2));
    NewtonPolygon np = spectral_polygon_at(rank2(frf(-1, 1), g2), Point(rat(0), L), p2);
    CHECK(h3[1]->eval(L) == np.heights[1]);
    CHECK(h3[2]->eval(L) == np.heights[2]);
  }
  // slope denominators at most the rank
  for (const Rat& s : h3[2]->slopes())
    CHECK(Rat(s.get_den()) <= 2);
}

TEST_CASE("taylor matrix sequence") {
  // constant rank 1: G_n = a^n
  ConnectionMatrix G;
  G.rank = 1;
  G.entries = {{RF(rat(5, 3))}};
  TaylorMatrixSeq s = taylor_matrix_seq(G, 6);
  CHECK(s.den == Poly::one());
  Rat acc(1);
  for (int n = 0; n <= 6; ++n) {
    CHECK(s.P[(std::size_t)n][0][0] == Poly(acc));
    acc *= rat(5, 3);
  }

  // zero connection
  ConnectionMatrix Z;
  Z.rank = 1;
  Z.entries = {{RF()}};
  TaylorMatrixSeq sz = taylor_matrix_seq(Z, 4);
  for (int n = 1; n <= 4; ++n) CHECK(sz.P[(std::size_t)n][0][0].is_zero());

  // nilpotent [[0,1],[0,0]]: G_2 = G^2 + G' = 0
  ConnectionMatrix Nl;
  Nl.rank = 2;
  Nl.entries = {{RF(), RF(rat(1))}, {RF(), RF()}};
  TaylorMatrixSeq sn = taylor_matrix_seq(Nl, 3);
  for (auto& row : sn.P[2])
    for (auto& e : row) CHECK(e.is_zero());
}

TEST_CASE("radius oracle") {
  Prime p3(3);
  Point x(rat(0), QLog(0));
  ConnectionMatrix G;
  G.rank = 1;
  G.entries = {{RF(rat(1, 3))}};
  QLog est = radius_oracle(G, x, 100, p3);
  CHECK(close(est, QLog(rat(-3, 2)), rat(1, 10)));

  ConnectionMatrix Z;
  Z.rank = 1;
  Z.entries = {{RF()}};
  CHECK(radius_oracle(Z, x, 50, p3).is_pos_inf());

  ConnectionMatrix U;
  U.rank = 1;
  U.entries = {{RF(rat(1))}};
  CHECK(close(radius_oracle(U, x, 150, p3), p3.omega_log(), rat(1, 10)));
}

TEST_CASE("oracle agrees with certified polygon radii") {
  // rank 1 and rank 2 operators with unit-and-p-power constant coefficients
  Prime p2(2), p3(3);
  struct Case {
    Prime* p;
    long n1, d1, n2, d2;  // g_1, g_2 (g_2 = 0 if n2 == 0)
  };
  Prime* P2 = &p2;
  Prime* P3 = &p3;
  std::vector<Case> cases = {
      {P3, -1, 3, 0, 1},  {P3, -9, 1, 0, 1},  {P2, -1, 4, 0, 1},
      {P3, -1, 3, -1, 9}, {P2, -1, 2, -1, 8}, {P3, -3, 1, -1, 3},
  };
  for (const auto& cs : cases) {
    DifferentialOperator op =
        cs.n2 == 0 ? rank1(frf(cs.n1, cs.d1)) : rank2(frf(cs.n1, cs.d1), frf(cs.n2, cs.d2));
    Point x(rat(0), QLog(0));
    NewtonPolygon np = spectral_polygon_at(op, x, *cs.p);
    SpectralRadii sr = small_radius_certify(np, x, *cs.p);
    if (!sr.certified[0]) continue;
    QLog est = radius_oracle(companion_matrix(op), x, 150, *cs.p);
    CHECK(close(est, sr.values[0], rat(1, 10)));
  }
}

TEST_CASE("cyclic operator on a companion matrix returns the operator") {
  FactoredRatFun g1{rat(3), {{rat(1), 1}}};  // 3(T-1)
  FactoredRatFun g2 = frf(-7, 2);
  DifferentialOperator op = rank2(g1, g2);
  auto res = cyclic_operator(companion_matrix(op));
  REQUIRE(res.has_value());
  CHECK(res->op.rank == 2);
  CHECK(res->op.coeffs[0] == RF(g1.numerator(), g1.denominator()));
  CHECK(res->op.coeffs[1] == RF(g2.numerator(), g2.denominator()));
  // base change is the identity for the first candidate vector
  CHECK(res->base_change[0][0] == RF(rat(1)));
  CHECK(res->base_change[0][1].is_zero());
}

TEST_CASE("cyclic operator rank 1 and diagonal direct sum") {
  Prime p3(3);
  ConnectionMatrix G1;
  G1.rank = 1;
  G1.entries = {{RF(rat(9))}};
  auto r1 = cyclic_operator(G1);
  REQUIRE(r1.has_value());
  CHECK(r1->op.coeffs[0] == RF(rat(-9)));  // L = d/dT - g

  // diag(1/9, 1/3): radii are the union of the two rank-1 radii
  ConnectionMatrix D;
  D.rank = 2;
  D.entries = {{RF(rat(1, 9)), RF()}, {RF(), RF(rat(1, 3))}};
  auto rd = cyclic_operator(D);
  REQUIRE(rd.has_value());
  Point x(rat(0), QLog(0));
  NewtonPolygon np = spectral_polygon_at(rd->op, x, p3);
  SpectralRadii sr = small_radius_certify(np, x, p3);
  REQUIRE(sr.certified == std::vector<bool>{true, true});

  ConnectionMatrix Ga;
  Ga.rank = 1;
  Ga.entries = {{RF(rat(1, 9))}};
  ConnectionMatrix Gb;
  Gb.rank = 1;
  Gb.entries = {{RF(rat(1, 3))}};
  auto pa = small_radius_certify(spectral_polygon_at(cyclic_operator(Ga)->op, x, p3), x, p3);
  auto pb = small_radius_certify(spectral_polygon_at(cyclic_operator(Gb)->op, x, p3), x, p3);
  CHECK(sr.values == direct_sum_radii(pa.values, pb.values));
}

TEST_CASE("direct_sum_radii is a multiset merge") {
  std::vector<QLog> a = {QLog(-1)}, b = {QLog(-2)};
  CHECK(direct_sum_radii(a, b) == std::vector<QLog>{QLog(-2), QLog(-1)});
  CHECK(direct_sum_radii({}, b) == b);
  std::vector<QLog> dup = {QLog(-1)};
  CHECK(direct_sum_radii(dup, dup) == std::vector<QLog>{QLog(-1), QLog(-1)});
}
