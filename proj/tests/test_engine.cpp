#include <doctest.h>

#include "padic/engine.hpp"

using namespace padic;

namespace {

FactoredRatFun frf(long n, long d) { return FactoredRatFun::from_constant(rat(n, d)); }

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

int edge_at(const RadiiProfile& prof, const Rat& center, const QLog& level, const Prime& p) {
  for (std::size_t e = 0; e < prof.graph.edges.size(); ++e) {
    const auto& ed = prof.graph.edges[e];
    if (level >= ed.lo && level <= ed.hi &&
        point_eq(Point(ed.center, level), Point(center, level), p))
      return static_cast<int>(e);
  }
  return -1;
}

}  // namespace

TEST_CASE("convergence_from_spectral") {
  Prime p(2);
  AffinoidDomain X(Point(rat(0), QLog(0)), {}, p);
  Point x(rat(0), QLog(-1));
  // constant -2: spectral value
  CHECK(convergence_from_spectral(Paf::constant(QLog(-1), QLog(0), rat(-2)), x, X, p) ==
        QLog(-2));
  // identical to the diagonal: over-solvable plateau up to the maximal disk
  CHECK(convergence_from_spectral(Paf::diagonal(QLog(-1), QLog(0)), x, X, p) == QLog(0));
  // diagonal then constant: crossing value
  Paf m = Paf::from_pieces(QLog(-1), QLog(0), {rat(-1, 2)}, {rat(1), rat(0)}, rat(-1, 2));
  CHECK(convergence_from_spectral(m, x, X, p) == QLog(rat(-1, 2)));
  // profile above the diagonal violates the spectral bound
  CHECK_THROWS(convergence_from_spectral(Paf::constant(QLog(-1), QLog(0), rat(5)), x, X, p));
}

TEST_CASE("build_profile: constant coefficient on a disk and an annulus") {
  Prime p3(3);
  DifferentialOperator op = rank1(frf(-1, 3));
  // no-hole disk: single-vertex graph
  AffinoidDomain disk(Point(rat(0), QLog(0)), {}, p3);
  RadiiProfile prof = build_profile(op, disk, p3);
  CHECK(prof.graph.verts.size() == 1);
  CHECK(prof.verts[0].radii == std::vector<QLog>{QLog(rat(-3, 2))});
  CHECK(prof.verts[0].classes[0] == SolvClass::Spectral);

  // annulus: one skeleton edge, constant profile
  AffinoidDomain ann(Point(rat(0), QLog(0)), {Point(rat(0), QLog(-2))}, p3);
  RadiiProfile pr2 = build_profile(op, ann, p3);
  REQUIRE(pr2.graph.edges.size() == 1);
  // on the annulus skeleton the maximal disk has radius r(x), so the
  // radius is capped at the diagonal below -3/2
  const Paf& conv = pr2.edges[0].conv[0];
  CHECK(conv.knots() == std::vector<Rat>{rat(-3, 2)});
  CHECK(conv.slopes() == std::vector<Rat>{rat(1), rat(0)});
  CHECK(conv.eval(QLog(-1)) == QLog(rat(-3, 2)));
  CHECK(conv.eval(QLog(-2)) == QLog(-2));
  // oracle cross-check at three points
  ConnectionMatrix G = companion_matrix(op);
  for (long n : {0L, -1L, -2L}) {
    QLog est = radius_oracle(G, Point(rat(0), QLog(n)), 150, p3);
    Rat diff = est.rat() - rat(-3, 2);
    if (diff < 0) diff = -diff;
    CHECK(diff <= rat(1, 10));
  }
  // controlling graph is the skeleton
  ControllingGraph cg = prune_to_controlling_graph(pr2, 1);
  CHECK(cg.keep == std::vector<bool>{true});
  CHECK(cg.end_points.empty());
}

TEST_CASE("build_profile: trivial operator d/dT") {
  Prime p2(2);
  DifferentialOperator op = rank1(FactoredRatFun::zero());
  AffinoidDomain ann(Point(rat(0), QLog(0)), {Point(rat(0), QLog(-3))}, p2);
  RadiiProfile prof = build_profile(op, ann, p2);
  REQUIRE(prof.graph.edges.size() == 1);
  // constants converge on the maximal disk: R_1 = rho_{x,X} = r(x) on the skeleton
  CHECK(prof.edges[0].conv[0] == Paf::diagonal(QLog(-3), QLog(0)));
  for (const auto& vd : prof.verts) CHECK(vd.classes[0] == SolvClass::Solvable);
  ControllingGraph cg = prune_to_controlling_graph(prof, 1);
  CHECK(cg.keep == std::vector<bool>{true});
  AuditReport audit = audit_main_theorem(prof);
  CHECK(audit.pass());
}

TEST_CASE("build_profile: pole excised by a hole gives polynomial solutions") {
  // d/dT - 1/T on the annulus: solution T, over-solvable everywhere
  Prime p3(3);
  FactoredRatFun g{rat(-1), {{rat(0), -1}}};
  DifferentialOperator op = rank1(g);
  AffinoidDomain ann(Point(rat(0), QLog(0)), {Point(rat(0), QLog(-3))}, p3);
  RadiiProfile prof = build_profile(op, ann, p3);
  REQUIRE(prof.graph.edges.size() == 1);
  CHECK(prof.edges[0].conv[0] == Paf::diagonal(QLog(-3), QLog(0)));
  AuditReport audit = audit_main_theorem(prof);
  CHECK(audit.pass());

  // the same pole inside the domain is rejected
  AffinoidDomain disk(Point(rat(0), QLog(0)), {}, p3);
  CHECK_THROWS(build_profile(op, disk, p3));
}

TEST_CASE("build_profile: branch at a coefficient root") {
  // g_1 = -(1/16)(T-1), p = 2, X = D^+(0, |.|=4): solutions exp((T-1)^2/32).
  // R_1 = min(-5 - L, -3) along the branch at 1: constant -3 below L = -2.
  Prime p2(2);
  FactoredRatFun g{rat(-1, 16), {{rat(1), 1}}};
  DifferentialOperator op = rank1(g);
  AffinoidDomain X(Point(rat(0), QLog(2)), {}, p2);
  RadiiProfile prof = build_profile(op, X, p2);

  int e = edge_at(prof, rat(1), QLog(0), p2);
  REQUIRE(e >= 0);
  const Paf& conv = prof.edges[static_cast<std::size_t>(e)].conv[0];
  CHECK(conv.eval(QLog(0)) == QLog(-5));
  CHECK(conv.eval(QLog(-2)) == QLog(-3));
  CHECK(conv.eval(QLog(-3)) == QLog(-3));
  CHECK(conv.eval(QLog(2)) == QLog(-7));
  CHECK(conv.slope_at(QLog(-1), Side::Right) == rat(-1));
  CHECK(conv.slope_at(QLog(rat(-5, 2)), Side::Right) == rat(0));
  // descent certifies the window zone except a sliver above the solvable
  // boundary at -3, narrower than one Frobenius step
  for (const auto& st : prof.edges[static_cast<std::size_t>(e)].status[0])
    if (st.status == StretchStatus::Window) {
      CHECK(QLog(-3) <= st.lo);
      CHECK(st.hi <= QLog(rat(-23, 8)));
    }

  // oracle agreement at a window-zone point and a deep point
  ConnectionMatrix G = companion_matrix(op);
  for (const Rat& L : {rat(-9, 4), rat(-4)}) {
    QLog est = radius_oracle(G, Point(rat(1), QLog(L)), 150, p2);
    Rat diff = est.rat() - rat(-3);
    if (diff < 0) diff = -diff;
    CHECK(diff <= rat(1, 10));
  }

  // prune: branch kept, cut at the lowest break (-2), endpoint not solvable
  ControllingGraph cg = prune_to_controlling_graph(prof, 1);
  bool found_cut = false;
  for (std::size_t k = 0; k < cg.end_points.size(); ++k)
    if (point_eq(cg.end_points[k], Point(rat(1), QLog(-2)), p2)) {
      found_cut = true;
      CHECK_FALSE(cg.end_solvable[k]);
    }
  CHECK(found_cut);

  AuditReport audit = audit_main_theorem(prof);
  CHECK(audit.pass());

  // sandwich at samples along the branch
  for (long n = -6; n <= 4; ++n) {
    QLog L(rat(n, 2));
    if (L < conv.lo() || L > conv.hi()) continue;
    Point x(rat(1), L);
    CHECK(generic_radius(x) <= qmax(conv.eval(L), L));
    CHECK(conv.eval(L) <= maximal_radius(x, X, p2));
  }
}

TEST_CASE("vertex radii agree with point descent (eeetrich)") {
  Prime p2(2);
  FactoredRatFun g{rat(-1, 16), {{rat(1), 1}}};
  DifferentialOperator op = rank1(g);
  AffinoidDomain X(Point(rat(0), QLog(2)), {}, p2);
  RadiiProfile prof = build_profile(op, X, p2);
  for (std::size_t v = 0; v < prof.graph.verts.size(); ++v) {
    const Point& x = prof.graph.verts[v].pt;
    if (!x.log_radius.is_finite()) continue;
    DescentReport rep = descent_certify(op, x, p2);
    for (int i = 0; i < prof.rank; ++i) {
      // R^sp = min(R^F, r)
      QLog expected = qmin(prof.verts[v].radii[static_cast<std::size_t>(i)], x.log_radius);
      CHECK(rep.values[static_cast<std::size_t>(i)] == expected);
    }
  }
}

TEST_CASE("build_profile: rank-2 direct sum via operator product") {
  // (d/dT - 1/9)(d/dT - 1/3) = d^2/dT^2 - (1/9 + 1/3) d/dT + 1/27:
  // g_1 = -4/9, g_2 = 1/27; radii {-5/2, -3/2} at the Gauss point.
  Prime p3(3);
  DifferentialOperator op = rank2(frf(-4, 9), frf(1, 27));
  AffinoidDomain ann(Point(rat(0), QLog(0)), {Point(rat(0), QLog(-2))}, p3);
  RadiiProfile prof = build_profile(op, ann, p3);
  REQUIRE(prof.graph.edges.size() == 1);
  CHECK(prof.edges[0].conv[0].eval(QLog(-1)) == QLog(rat(-5, 2)));
  CHECK(prof.edges[0].conv[1].eval(QLog(-1)) == QLog(rat(-3, 2)));
  // heights are cumulative sums
  CHECK(prof.edges[0].height[1].eval(QLog(-1)) == QLog(-4));
  AuditReport audit = audit_main_theorem(prof);
  CHECK(audit.pass());
}

TEST_CASE("branch_bound") {
  CHECK(branch_bound(rat(0), rat(1, 2)) == 0);
  CHECK(branch_bound(rat(5, 2), rat(1, 2)) == 4);
  CHECK(branch_bound(rat(1, 2), rat(1, 2)) == 0);
  CHECK_THROWS(branch_bound(rat(1), rat(0)));
}

TEST_CASE("check_criterion on the retraction of an admissible graph") {
  Prime p2(2);
  AffinoidDomain X(Point(rat(0), QLog(1)), {}, p2);
  SkeletonGraph g = saturation_with_starts(
      X, {{rat(0), QLog(-2)}, {rat(1), QLog(-3)}, {rat(6), QLog(-4)}}, p2);
  FunctionProfile f;
  f.graph = g;
  f.rank = 1;
  for (const auto& ed : g.edges) {
    f.fn.push_back(Paf::diagonal(ed.lo, ed.hi));
    f.gamma_edge.push_back(true);  // Gamma is the graph itself
  }
  CriterionReport rep = check_criterion(f, {}, p2);
  CHECK(rep.pass());
  CHECK(rep.nu == rat(1));
  // Gamma(rho_Gamma) = Gamma
  ControllingGraph pr = prune_function_profile(f, p2);
  for (bool k : pr.keep) CHECK(k);
  CHECK(pr.end_points.empty());
}

TEST_CASE("check_criterion flags a hand-built concavity violation") {
  Prime p2(2);
  AffinoidDomain X(Point(rat(0), QLog(1)), {}, p2);
  SkeletonGraph g = saturation_with_starts(X, {{rat(0), QLog(-2)}}, p2);
  REQUIRE(g.edges.size() == 1);
  FunctionProfile f;
  f.graph = g;
  f.rank = 1;
  // convex elbow in the middle of the branch
  f.fn.push_back(
      Paf::from_pieces(QLog(-2), QLog(1), {rat(0)}, {rat(0), rat(2)}, rat(4)));
  f.gamma_edge.push_back(false);
  CriterionReport rep = check_criterion(f, {}, p2);
  CHECK_FALSE(rep.c3);
  CHECK_FALSE(rep.violations.empty());
}

TEST_CASE("solvability classification at vertices") {
  Prime p2(2);
  DifferentialOperator op = rank1(FactoredRatFun::zero());
  AffinoidDomain ann(Point(rat(0), QLog(0)), {Point(rat(0), QLog(-2))}, p2);
  RadiiProfile prof = build_profile(op, ann, p2);
  for (std::size_t v = 0; v < prof.graph.verts.size(); ++v)
    CHECK(solvability_classify(prof, static_cast<int>(v), 1) == SolvClass::Solvable);
}

TEST_CASE("retraction identity of the constancy radius") {
  // rho_F(lambda_x(rho)) = max(rho, rho_F(x)) for the pruned graph's
  // retraction, sampled along a branch
  Prime p2(2);
  FactoredRatFun g{rat(-1, 16), {{rat(1), 1}}};
  DifferentialOperator op{1, {g}};
  AffinoidDomain X(Point(rat(0), QLog(2)), {}, p2);
  RadiiProfile prof = build_profile(op, X, p2);
  ControllingGraph cg = prune_to_controlling_graph(prof, 1);
  auto retraction = [&](int e, QLog L) {
    int cur = e;
    for (;;) {
      const auto& ed = prof.graph.edges[static_cast<std::size_t>(cur)];
      if (cg.keep[static_cast<std::size_t>(cur)])
        return qmax(L, cg.cut_level[static_cast<std::size_t>(cur)]);
      L = ed.hi;
      int up = prof.graph.verts[static_cast<std::size_t>(ed.v_hi)].up_edge;
      if (up < 0) return L;
      cur = up;
    }
  };
  for (std::size_t e = 0; e < prof.graph.edges.size(); ++e) {
    const auto& ed = prof.graph.edges[e];
    for (int k = 1; k <= 5; ++k) {
      QLog L = ed.lo + (ed.hi - ed.lo).scaled(rat(k, 6));
      QLog base = retraction(static_cast<int>(e), L);
      for (int m = 1; m <= 3; ++m) {
        QLog up_level = L + QLog(rat(m, 7));
        if (up_level > ed.hi) break;  // stay on the same edge for the test
        CHECK(retraction(static_cast<int>(e), up_level) == qmax(up_level, base));
      }
    }
  }
}

TEST_CASE("spectral profile slope magnitudes are at least 1/r") {
  Prime p2(2);
  FactoredRatFun g1{rat(-1), {{rat(3, 2), 1}}};
  FactoredRatFun g2{rat(1, 4), {{rat(0), 1}, {rat(3), 1}}};
  DifferentialOperator op{2, {g1, g2}};
  auto h = spectral_profile_along(op, rat(0), QLog(-2), QLog(2), p2);
  for (int i = 1; i <= 2; ++i) {
    REQUIRE(h[static_cast<std::size_t>(i)].has_value());
    for (const Rat& s : h[static_cast<std::size_t>(i)]->slopes()) {
      if (s == 0) continue;
      Rat a = s < 0 ? Rat(-s) : s;
      CHECK(a >= rat(1, 2));
    }
  }
}
