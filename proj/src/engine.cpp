#include "padic/engine.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace padic {

namespace {

std::string point_str(const Point& x) {
  return "x_{" + rat_to_string(x.center) + "," + x.log_radius.str() + "}";
}

// ---------------------------------------------------------------- Paf utils

// g(L) = f(mL) on [lo/m, hi/m]
Paf paf_precompose_scale(const Paf& f, long m) {
  if (f.degenerate())
    return Paf::constant(f.lo().scaled(rat(1, m)), f.hi().scaled(rat(1, m)), f.value_hi());
  std::vector<Rat> knots, slopes;
  for (const auto& k : f.knots()) knots.push_back(k / m);
  for (const auto& s : f.slopes()) slopes.push_back(s * m);
  return Paf::from_pieces(f.lo().scaled(rat(1, m)), f.hi().scaled(rat(1, m)), std::move(knots),
                          std::move(slopes), f.value_hi());
}

// concatenate adjacent segments into one Paf; asserts continuity
Paf paf_concat(const std::vector<Paf>& segs) {
  if (segs.empty()) throw std::logic_error("paf_concat: empty");
  if (segs.size() == 1) return segs[0];
  QLog lo = segs.front().lo(), hi = segs.back().hi();
  std::vector<Rat> knots, slopes;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    const Paf& f = segs[s];
    if (f.degenerate()) throw std::logic_error("paf_concat: degenerate segment");
    if (s) {
      if (!(segs[s - 1].hi() == f.lo()))
        throw std::logic_error("paf_concat: segments not adjacent");
      if (!(segs[s - 1].value_hi() == f.eval(f.lo()).rat()))
        throw std::logic_error("paf_concat: discontinuity at junction");
      knots.push_back(f.lo().rat());
    }
    for (const auto& k : f.knots()) knots.push_back(k);
    for (const auto& sl : f.slopes()) slopes.push_back(sl);
  }
  if (knots.size() + 1 != slopes.size()) throw std::logic_error("paf_concat: piece mismatch");
  return Paf::from_pieces(lo, hi, std::move(knots), std::move(slopes), segs.back().value_hi());
}

// interior points where f may change sign: all knots plus piece roots
std::vector<QLog> zero_cuts(const Paf& f) {
  std::vector<QLog> cuts;
  if (f.degenerate()) return cuts;
  for (const auto& k : f.knots()) cuts.push_back(QLog(k));
  auto rows = f.rows();
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const Rat& s = rows[i].slope_right;
    if (s == 0) continue;
    Rat root = rows[i].pos.is_neg_inf() ? Rat(0) : rows[i].pos.rat() - rows[i].value / s;
    if (rows[i].pos.is_neg_inf()) continue;
    QLog t(root);
    if (t > rows[i].pos && t < rows[i + 1].pos) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end(), [](const QLog& a, const QLog& b) { return a < b; });
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

// maximal sub-intervals of [lo,hi] where the (<= 0) function f vanishes
// identically; f must be a Paf with f <= 0 pointwise
std::vector<std::pair<QLog, QLog>> zero_regions(const Paf& f) {
  std::vector<std::pair<QLog, QLog>> out;
  auto rows = f.rows();
  QLog cur_lo = QLog(0);
  bool open = false;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    bool zero_piece = rows[i].slope_right == 0 && rows[i].value == 0;
    if (zero_piece && !open) {
      cur_lo = rows[i].pos;
      open = true;
    }
    if (!zero_piece && open) {
      out.emplace_back(cur_lo, rows[i].pos);
      open = false;
    }
  }
  if (open) out.emplace_back(cur_lo, f.hi());
  return out;
}

// ------------------------------------------------------- edge certification

struct EdgeCert {
  std::vector<Paf> S;  // truncated/descended spectral profiles, 1..r
  std::vector<std::vector<std::pair<QLog, QLog>>> windows;  // per index
};

Paf diag_of(const QLog& a, const QLog& b) { return Paf::diagonal(a, b); }

// merge overlapping/adjacent intervals, dropping empty ones
std::vector<std::pair<QLog, QLog>> merge_intervals(std::vector<std::pair<QLog, QLog>> iv) {
  std::sort(iv.begin(), iv.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::pair<QLog, QLog>> out;
  for (const auto& [lo, hi] : iv) {
    if (!(lo < hi)) continue;
    if (!out.empty() && lo <= out.back().second)
      out.back().second = qmax(out.back().second, hi);
    else
      out.emplace_back(lo, hi);
  }
  return out;
}

// pointwise-sorted rearrangement of a family of Pafs on a common domain
std::vector<Paf> sort_paf_family(const std::vector<Paf>& fns) {
  if (fns.size() <= 1) return fns;
  const QLog &a = fns[0].lo(), &b = fns[0].hi();
  std::vector<QLog> cuts;
  cuts.push_back(a);
  cuts.push_back(b);
  for (std::size_t i = 0; i < fns.size(); ++i)
    for (std::size_t j = i + 1; j < fns.size(); ++j)
      for (const auto& z : zero_cuts(fns[i] - fns[j])) cuts.push_back(z);
  std::sort(cuts.begin(), cuts.end(), [](const QLog& x, const QLog& y) { return x < y; });
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<std::vector<Paf>> segs(fns.size());
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const QLog &u = cuts[c], &v = cuts[c + 1];
    QLog mid = (u + v).scaled(rat(1, 2));
    std::vector<std::size_t> order(fns.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return fns[x].eval(mid) < fns[y].eval(mid);
    });
    for (std::size_t rank = 0; rank < order.size(); ++rank)
      segs[rank].push_back(fns[order[rank]].restrict(u, v));
  }
  std::vector<Paf> out;
  for (auto& s : segs) out.push_back(paf_concat(s));
  return out;
}

EdgeCert certify_edge(const FrobMatrix& M, const QLog& a, const QLog& b, const Prime& p,
                      int level, int max_iter, int rank0);

// direct-sum split: certify blocks independently and merge sorted
EdgeCert certify_edge_split(const FrobMatrix& M, const QLog& a, const QLog& b, const Prime& p,
                            int level, int max_iter, int rank0) {
  auto comps = frob_components(M);
  if (comps.size() <= 1) return certify_edge(M, a, b, p, level, max_iter, rank0);
  std::vector<Paf> all;
  std::vector<std::pair<QLog, QLog>> all_windows;
  for (const auto& c : comps) {
    EdgeCert sub = certify_edge_split(frob_submatrix(M, c), a, b, p, level, max_iter, rank0);
    for (auto& f : sub.S) all.push_back(std::move(f));
    for (auto& per : sub.windows)
      for (auto& w : per) all_windows.push_back(w);
  }
  EdgeCert out;
  out.S = sort_paf_family(all);
  out.windows.assign(static_cast<std::size_t>(M.rank), merge_intervals(all_windows));
  return out;
}

EdgeCert certify_edge(const FrobMatrix& M, const QLog& a, const QLog& b, const Prime& p,
                      int level, int max_iter, int rank0) {
  long pv = static_cast<long>(p.value());
  int r = M.rank;
  auto cyc = cyclic_operator(frob_to_connection(M));
  if (!cyc) throw std::domain_error("certify_edge: cyclic reduction failed");
  auto heights = spectral_profile_along(cyc->op, rat(0), a, b, p);
  Paf diag = diag_of(a, b);
  Paf young = diag.plus_const(p.omega_log().rat());

  std::vector<std::optional<Paf>> s(static_cast<std::size_t>(r) + 1);
  for (int i = 1; i <= r; ++i) {
    const auto& hi_ = heights[static_cast<std::size_t>(i)];
    const auto& lo_ = heights[static_cast<std::size_t>(i - 1)];
    if (hi_ && lo_) s[static_cast<std::size_t>(i)] = *hi_ - *lo_;
  }

  bool has_window = false, has_pinned = false, all_young = true;
  for (int i = 1; i <= r; ++i) {
    if (!s[static_cast<std::size_t>(i)]) {
      has_pinned = true;
      all_young = false;
      continue;
    }
    const Paf& si = *s[static_cast<std::size_t>(i)];
    // D_y >= 0 somewhere <=> not fully Young
    Paf Dy = si - young;
    Paf Dd = si - diag;
    bool young_everywhere = true, pinned_somewhere = false, window_somewhere = false;
    std::vector<QLog> cuts = zero_cuts(Dy);
    std::vector<QLog> cuts2 = zero_cuts(Dd);
    cuts.insert(cuts.end(), cuts2.begin(), cuts2.end());
    cuts.push_back(a);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end(), [](const QLog& x, const QLog& y) { return x < y; });
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      QLog mid = (cuts[c] + cuts[c + 1]).scaled(rat(1, 2));
      QLog dy = Dy.eval(mid), dd = Dd.eval(mid);
      if (dy < QLog(0)) continue;
      young_everywhere = false;
      if (dd >= QLog(0))
        pinned_somewhere = true;
      else
        window_somewhere = true;
    }
    if (!young_everywhere) all_young = false;
    has_pinned = has_pinned || pinned_somewhere;
    has_window = has_window || window_somewhere;
  }

  bool need_push = has_window || (has_pinned && level == 0);
  bool can_push = level < max_iter && M.rank * pv <= kCyclicPracticalCap &&
                  M.rank * pv <= kDescentRankCap;

  EdgeCert out;
  out.S.reserve(static_cast<std::size_t>(r));
  out.windows.assign(static_cast<std::size_t>(r), {});
  if (all_young || !need_push || !can_push) {
    for (int i = 1; i <= r; ++i) {
      if (!s[static_cast<std::size_t>(i)]) {
        out.S.push_back(diag);
        continue;
      }
      out.S.push_back(Paf::combine(*s[static_cast<std::size_t>(i)], diag, CombineOp::Min));
    }
    if (need_push && !can_push && has_window) {
      // exhausted: flag the uncertified stretches of every index
      for (int i = 1; i <= r; ++i) {
        if (!s[static_cast<std::size_t>(i)]) continue;
        Paf Dy = *s[static_cast<std::size_t>(i)] - young;
        Paf Dd = *s[static_cast<std::size_t>(i)] - diag;
        std::vector<QLog> cuts = zero_cuts(Dy);
        for (const auto& z : zero_cuts(Dd)) cuts.push_back(z);
        cuts.push_back(a);
        cuts.push_back(b);
        std::sort(cuts.begin(), cuts.end(), [](const QLog& x, const QLog& y) { return x < y; });
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
          QLog mid = (cuts[c] + cuts[c + 1]).scaled(rat(1, 2));
          if (Dy.eval(mid) >= QLog(0) && Dd.eval(mid) < QLog(0))
            out.windows[static_cast<std::size_t>(i - 1)].emplace_back(cuts[c], cuts[c + 1]);
        }
      }
    }
    return out;
  }

  // push forward and descend the whole edge
  FrobMatrix Mp = pushforward_frobmatrix(M, p);
  EdgeCert sub = certify_edge_split(Mp, a.scaled(rat(pv)), b.scaled(rat(pv)), p, level + 1,
                                    max_iter, rank0);
  int R = Mp.rank;
  std::vector<Paf> K;  // K_j(L) = sub.S[j](pL)
  for (int j = 0; j < R; ++j) K.push_back(paf_precompose_scale(sub.S[static_cast<std::size_t>(j)], pv));
  Paf bound = Paf::affine(a, b, ((p.omega_log() + b).scaled(rat(pv))).rat(), rat(pv));

  std::vector<QLog> cuts;
  for (int j = 0; j < R; ++j)
    for (const auto& z : zero_cuts(K[static_cast<std::size_t>(j)] - bound)) cuts.push_back(z);
  cuts.push_back(a);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end(), [](const QLog& x, const QLog& y) { return x < y; });
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<std::vector<Paf>> pieces(static_cast<std::size_t>(r));
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const QLog &u = cuts[c], &v = cuts[c + 1];
    QLog mid = (u + v).scaled(rat(1, 2));
    int below = 0;
    for (int j = 0; j < R; ++j)
      if (K[static_cast<std::size_t>(j)].eval(mid) < bound.eval(mid)) ++below;
    if (below % pv != 0) throw std::logic_error("certify_edge: small-zone count not p-divisible");
    int i1 = below / static_cast<int>(pv);
    // prefix sums of restricted K
    std::vector<Paf> pref;
    pref.push_back(Paf::constant(u, v, rat(0)));
    for (int m = 0; m < R; ++m)
      pref.push_back(pref.back() + K[static_cast<std::size_t>(m)].restrict(u, v));
    Paf lam = Paf::affine(u, v, (QLog(-1) + v.scaled(rat(pv - 1))).rat(), rat(pv - 1));
    std::vector<Paf> h;
    h.push_back(Paf::constant(u, v, rat(0)));
    for (int i = 1; i <= r; ++i) {
      int pos = (i <= i1) ? static_cast<int>(pv) * i : (static_cast<int>(pv) - 1) * r + i;
      int d = (i <= i1) ? i : r;
      Paf hi_ = pref[static_cast<std::size_t>(pos)].scaled(rat(1, pv)) - lam.scaled(rat(d));
      h.push_back(hi_);
    }
    for (int i = 1; i <= r; ++i)
      pieces[static_cast<std::size_t>(i - 1)].push_back(h[static_cast<std::size_t>(i)] -
                                                        h[static_cast<std::size_t>(i - 1)]);
  }
  for (int i = 1; i <= r; ++i) {
    Paf Si = paf_concat(pieces[static_cast<std::size_t>(i - 1)]);
    // sanity: agree with the level-k Young readings
    if (s[static_cast<std::size_t>(i)]) {
      const Paf& si = *s[static_cast<std::size_t>(i)];
      Paf Dy = si - young;
      for (const auto& z : zero_cuts(Dy)) (void)z;
      std::vector<QLog> chk = zero_cuts(Dy);
      chk.push_back(a);
      chk.push_back(b);
      std::sort(chk.begin(), chk.end(), [](const QLog& x, const QLog& y) { return x < y; });
      for (std::size_t c = 0; c + 1 < chk.size(); ++c) {
        QLog mid = (chk[c] + chk[c + 1]).scaled(rat(1, 2));
        if (Dy.eval(mid) < QLog(0) && !(Si.eval(mid) == si.eval(mid)))
          throw std::logic_error("certify_edge: descended profile disagrees with Young");
      }
    }
    out.S.push_back(Si);
  }
  // windows: preimages of sub windows, attributed to every index whose
  // height draws on the affected position (conservative: all indices)
  {
    std::vector<std::pair<QLog, QLog>> pre;
    for (int j = 0; j < R; ++j)
      for (const auto& [wl, wh] : sub.windows[static_cast<std::size_t>(j)])
        pre.emplace_back(wl.scaled(rat(1, pv)), wh.scaled(rat(1, pv)));
    pre = merge_intervals(pre);
    for (int i = 1; i <= r; ++i) out.windows[static_cast<std::size_t>(i - 1)] = pre;
  }
  return out;
}

// ------------------------------------------------------------- propagation

struct PropResult {
  std::vector<Paf> conv;  // per index on one edge
};

}  // namespace

QLog convergence_from_spectral(const Paf& spec, const Point& x, const AffinoidDomain& X,
                               const Prime& p) {
  if (!(spec.lo() == x.log_radius))
    throw std::domain_error("convergence_from_spectral: profile must start at r(x)");
  // spectral bound: spec <= diagonal pointwise
  if (spec.lo().is_finite()) {
    Paf diag = Paf::diagonal(spec.lo(), spec.hi());
    Paf mx = Paf::combine(spec, diag, CombineOp::Max);
    if (!(mx == diag)) throw std::domain_error("convergence_from_spectral: profile above bound");
  }
  QLog cap = maximal_radius(x, X, p);
  QLog at = spec.eval(spec.lo());
  if (at < spec.lo()) return at;
  return qmin(spec.diagonal_crossing(), cap);
}

long branch_bound(const Rat& slope, const Rat& nu) {
  if (!(nu > 0)) throw std::domain_error("branch_bound: nu must be positive");
  Rat q = slope / nu;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  long n = static_cast<long>(fl.get_si()) - 1;
  return n > 0 ? n : 0;
}

namespace {

// greatest lower bound used to seed a branch bottom
QLog branch_seed_bottom(const Rat& z, const DifferentialOperator& op, const AffinoidDomain& X,
                        const Prime& p) {
  QLog m = X.outer.log_radius;
  auto see = [&](const Rat& w) {
    if (w == z) return;
    m = qmin(m, val_rational(z - w, p));
  };
  for (const auto& g : op.coeffs)
    for (const auto& [w, mm] : g.factors) see(w);
  for (const auto& h : X.holes) see(h.center);
  see(X.outer.center);
  return m - QLog(1);
}

}  // namespace

RadiiProfile build_profile(const DifferentialOperator& op, const AffinoidDomain& X, const Prime& p,
                           int max_frobenius) {
  op.validate();
  // poles must sit outside the domain
  std::vector<Rat> roots;
  for (const auto& g : op.coeffs)
    for (const auto& [z, m] : g.factors) {
      Point t1(z, QLog::neg_inf());
      if (m < 0 && membership(t1, X, p))
        throw std::invalid_argument("build_profile: coefficient pole inside the domain");
      if (m > 0 && membership(t1, X, p)) roots.push_back(z);
    }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

  std::map<Rat, QLog> bottoms;
  for (const auto& z : roots) bottoms[z] = branch_seed_bottom(z, op, X, p);

  RadiiProfile prof;
  prof.op = op;
  prof.domain = X;
  prof.prime = p.value();
  prof.rank = op.rank;
  prof.max_frobenius = max_frobenius;

  for (int pass = 0;; ++pass) {
    if (pass > 6) throw std::logic_error("build_profile: branch deepening did not settle");
    std::vector<std::pair<Rat, QLog>> starts;
    for (const auto& [z, B] : bottoms) starts.emplace_back(z, B);
    prof.graph = saturation_with_starts(X, starts, p);
    int ne = static_cast<int>(prof.graph.edges.size());
    prof.edges.assign(static_cast<std::size_t>(ne), EdgeProfile{});
    prof.edge_caps.assign(static_cast<std::size_t>(ne), QLog(0));

    // certified spectral profiles per edge
    for (int e = 0; e < ne; ++e) {
      const SkeletonEdge& ed = prof.graph.edges[static_cast<std::size_t>(e)];
      DifferentialOperator sh = op.shifted(ed.center);
      EdgeCert ec =
          certify_edge_split(frob_from_operator(sh), ed.lo, ed.hi, p, 0, max_frobenius, op.rank);
      EdgeProfile& ep = prof.edges[static_cast<std::size_t>(e)];
      ep.spectral = ec.S;
      ep.status.assign(static_cast<std::size_t>(op.rank), {});
      for (int i = 0; i < op.rank; ++i)
        for (const auto& [wl, wh] : merge_intervals(ec.windows[static_cast<std::size_t>(i)]))
          ep.status[static_cast<std::size_t>(i)].push_back(
              StatusStretch{wl, wh, StretchStatus::Window});
      prof.edge_caps[static_cast<std::size_t>(e)] =
          ed.on_skeleton ? ed.hi : maximal_radius(Point(ed.center, ed.lo), X, p);
    }

    // continuity of the spectral profiles across shared vertices
    for (std::size_t v = 0; v < prof.graph.verts.size(); ++v) {
      const auto& vx = prof.graph.verts[v];
      std::vector<std::pair<int, QLog>> touching;  // (edge, level at vertex)
      if (vx.up_edge >= 0) touching.emplace_back(vx.up_edge, vx.pt.log_radius);
      for (int de : vx.down_edges) touching.emplace_back(de, vx.pt.log_radius);
      for (int i = 0; i < op.rank; ++i) {
        std::optional<QLog> ref;
        for (const auto& [e, lvl] : touching) {
          QLog val = prof.edges[static_cast<std::size_t>(e)].spectral[static_cast<std::size_t>(i)]
                         .eval(lvl);
          if (!ref)
            ref = val;
          else if (!(*ref == val))
            throw std::logic_error("build_profile: spectral profile discontinuous at " +
                                   point_str(vx.pt));
        }
      }
    }

    // top-down propagation of convergence radii
    std::vector<std::vector<QLog>> plateau(prof.graph.verts.size(),
                                           std::vector<QLog>(static_cast<std::size_t>(op.rank)));
    const QLog& L0 = X.outer.log_radius;
    if (ne == 0) {
      // single-vertex graph: certify at the point
      DescentReport rep = descent_certify(op, X.outer, p, max_frobenius);
      prof.verts.assign(1, VertexData{});
      VertexData& vd = prof.verts[0];
      for (int i = 0; i < op.rank; ++i) {
        QLog v = rep.values[static_cast<std::size_t>(i)];
        vd.radii.push_back(v < L0 ? v : L0);
        vd.flagged = vd.flagged ||
                     rep.status[static_cast<std::size_t>(i)] == RadiusStatus::Undetermined;
      }
      for (int i = 0; i < op.rank; ++i) {
        const QLog& v = vd.radii[static_cast<std::size_t>(i)];
        vd.classes.push_back(v < L0 ? SolvClass::Spectral
                                    : (v == L0 ? SolvClass::Solvable : SolvClass::OverSolvable));
      }
      return prof;
    }

    // root values from any top edge
    {
      int top = prof.graph.verts[static_cast<std::size_t>(prof.graph.root)].down_edges.at(0);
      for (int i = 0; i < op.rank; ++i) {
        QLog sv =
            prof.edges[static_cast<std::size_t>(top)].spectral[static_cast<std::size_t>(i)].eval(
                L0);
        plateau[static_cast<std::size_t>(prof.graph.root)][static_cast<std::size_t>(i)] =
            sv < L0 ? sv : L0;
      }
    }

    for (int e : prof.graph.edges_top_down()) {
      const SkeletonEdge& ed = prof.graph.edges[static_cast<std::size_t>(e)];
      EdgeProfile& ep = prof.edges[static_cast<std::size_t>(e)];
      Paf cap_paf = ed.on_skeleton
                        ? Paf::diagonal(ed.lo, ed.hi)
                        : Paf::constant(ed.lo, ed.hi,
                                        prof.edge_caps[static_cast<std::size_t>(e)].rat());
      for (int i = 0; i < op.rank; ++i) {
        const Paf& S = ep.spectral[static_cast<std::size_t>(i)];
        Paf D = S - Paf::diagonal(ed.lo, ed.hi);
        auto zr = zero_regions(D);
        // assemble conv piecewise over [lo,hi]
        std::vector<Paf> segs;
        QLog cursor = ed.lo;
        auto flush_spectral = [&](const QLog& upto) {
          if (cursor < upto) segs.push_back(S.restrict(cursor, upto));
          cursor = upto;
        };
        for (const auto& [u, v] : zr) {
          flush_spectral(u);
          QLog P = (v == ed.hi)
                       ? plateau[static_cast<std::size_t>(ed.v_hi)][static_cast<std::size_t>(i)]
                       : v;
          Paf piece = Paf::combine(Paf::constant(u, v, P.rat()), cap_paf.restrict(u, v),
                                   CombineOp::Min);
          // continuity with the spectral region below
          if (u > ed.lo && !(piece.eval(u) == QLog(u.rat()))) {
            piece = Paf::diagonal(u, v);
            ep.status[static_cast<std::size_t>(i)].push_back(
                StatusStretch{u, v, StretchStatus::Window});
          }
          segs.push_back(piece);
          cursor = v;
        }
        flush_spectral(ed.hi);
        Paf conv = paf_concat(segs);
        ep.conv.push_back(conv);
        plateau[static_cast<std::size_t>(ed.v_lo)][static_cast<std::size_t>(i)] =
            conv.eval(ed.lo);
      }
      // heights
      Paf acc = Paf::constant(ed.lo, ed.hi, rat(0));
      for (int i = 0; i < op.rank; ++i) {
        acc = acc + ep.conv[static_cast<std::size_t>(i)];
        ep.height.push_back(acc);
      }
    }

    // vertex data
    prof.verts.assign(prof.graph.verts.size(), VertexData{});
    for (std::size_t v = 0; v < prof.graph.verts.size(); ++v) {
      VertexData& vd = prof.verts[v];
      const QLog& lvl = prof.graph.verts[v].pt.log_radius;
      for (int i = 0; i < op.rank; ++i) {
        QLog val = plateau[v][static_cast<std::size_t>(i)];
        vd.radii.push_back(val);
        vd.classes.push_back(val < lvl ? SolvClass::Spectral
                                       : (val == lvl ? SolvClass::Solvable
                                                     : SolvClass::OverSolvable));
      }
      // flag vertices inside a window stretch
      auto touches_window = [&](int e) {
        const EdgeProfile& ep = prof.edges[static_cast<std::size_t>(e)];
        for (const auto& per : ep.status)
          for (const auto& st : per)
            if (st.status == StretchStatus::Window && lvl >= st.lo && lvl <= st.hi) return true;
        return false;
      };
      if (prof.graph.verts[v].up_edge >= 0 && touches_window(prof.graph.verts[v].up_edge))
        vd.flagged = true;
      for (int de : prof.graph.verts[v].down_edges)
        if (touches_window(de)) vd.flagged = true;
    }

    // branch-bottom stability: every leaf edge must end in a constant piece
    bool stable = true;
    for (std::size_t v = 0; v < prof.graph.verts.size(); ++v) {
      const auto& vx = prof.graph.verts[v];
      if (!vx.down_edges.empty() || static_cast<int>(v) == prof.graph.root) continue;
      if (vx.up_edge < 0) continue;
      bool is_hole = false;
      for (const auto& h : X.holes) is_hole = is_hole || point_eq(vx.pt, h, p);
      if (is_hole) continue;
      const SkeletonEdge& ed = prof.graph.edges[static_cast<std::size_t>(vx.up_edge)];
      const EdgeProfile& ep = prof.edges[static_cast<std::size_t>(vx.up_edge)];
      auto it = bottoms.find(ed.center);
      if (it == bottoms.end()) continue;
      for (int i = 0; i < op.rank; ++i) {
        const Paf& conv = ep.conv[static_cast<std::size_t>(i)];
        Rat s0 = conv.slope_at(ed.lo, Side::Right);
        if (s0 == 0) continue;
        stable = false;
        // extend the bottom spectral piece and cut below its diagonal crossing
        const Paf& S = ep.spectral[static_cast<std::size_t>(i)];
        Rat sl = S.slope_at(ed.lo, Side::Right);
        QLog deeper;
        if (sl == 1) {
          deeper = it->second - QLog(4);
        } else {
          Rat val0 = S.eval(ed.lo).rat();
          Rat lstar = (val0 - sl * ed.lo.rat()) / (Rat(1) - sl);
          deeper = qmin(QLog(lstar), it->second) - QLog(1);
        }
        it->second = qmin(it->second, deeper);
      }
    }
    if (stable) break;
  }
  return prof;
}

// --------------------------------------------------------------- pruning

namespace {

ControllingGraph prune_core(const SkeletonGraph& g, const std::vector<Paf>& fn,
                            const std::vector<bool>& gamma_edge, const Prime& p,
                            bool strict = true) {
  ControllingGraph out;
  out.base = &g;
  out.keep.assign(g.edges.size(), false);
  out.cut_level.assign(g.edges.size(), QLog(0));
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    out.cut_level[e] = g.edges[e].lo;
    if (gamma_edge[e]) out.keep[e] = true;
  }
  // retained[v]: the graph reaches down to vertex v
  std::vector<bool> reach(g.verts.size(), false);
  if (g.root >= 0) reach[static_cast<std::size_t>(g.root)] = true;
  for (int e : g.edges_top_down()) {
    const SkeletonEdge& ed = g.edges[static_cast<std::size_t>(e)];
    const Paf& f = fn[static_cast<std::size_t>(e)];
    if (out.keep[static_cast<std::size_t>(e)]) {  // Gamma edge: always kept whole
      reach[static_cast<std::size_t>(ed.v_lo)] = true;
      continue;
    }
    if (!reach[static_cast<std::size_t>(ed.v_hi)]) {
      // detached below a pruned region: the profile must be constant
      if (!(f.slopes().size() == 1 && f.slopes()[0] == 0)) {
        if (strict) throw std::logic_error("prune: non-constant profile below a flat attachment");
        out.keep[static_cast<std::size_t>(e)] = true;
        reach[static_cast<std::size_t>(ed.v_lo)] = true;
      }
      continue;
    }
    Rat top_slope = f.degenerate() ? rat(0) : f.slope_at(ed.hi, Side::Left);
    if (top_slope == 0) {
      // flat attachment: Prop. "negative slope" forces constancy below
      if (f.knots().size() > 0) {
        if (strict) throw std::logic_error("prune: break below a flat attachment");
        out.keep[static_cast<std::size_t>(e)] = true;
        reach[static_cast<std::size_t>(ed.v_lo)] = true;
      }
      continue;
    }
    out.keep[static_cast<std::size_t>(e)] = true;
    if (f.knots().empty()) {
      reach[static_cast<std::size_t>(ed.v_lo)] = true;  // non-constant down to v_lo
      continue;
    }
    // cut at the lowest break; below it the profile must be constant
    Rat lowest = f.knots().front();
    if (!(f.slope_at(QLog(lowest), Side::Left) == 0)) {
      if (strict) throw std::logic_error("prune: non-constant tail below the lowest break");
      reach[static_cast<std::size_t>(ed.v_lo)] = true;
      continue;
    }
    out.cut_level[static_cast<std::size_t>(e)] = QLog(lowest);
    Point endpt(ed.center, QLog(lowest));
    out.end_points.push_back(endpt);
    out.end_solvable.push_back(f.eval(QLog(lowest)) == QLog(lowest));
  }
  (void)p;
  return out;
}

}  // namespace

int ControllingGraph::bifurcation_count(const Prime& p) const {
  (void)p;
  int n = 0;
  for (std::size_t v = 0; v < base->verts.size(); ++v) {
    int deg = 0;
    const auto& vx = base->verts[v];
    if (vx.up_edge >= 0 && keep[static_cast<std::size_t>(vx.up_edge)]) ++deg;
    for (int de : vx.down_edges) {
      if (!keep[static_cast<std::size_t>(de)]) continue;
      const SkeletonEdge& ed = base->edges[static_cast<std::size_t>(de)];
      if (cut_level[static_cast<std::size_t>(de)] < ed.hi) ++deg;
    }
    if (deg >= 3) ++n;
  }
  return n;
}

ControllingGraph prune_to_controlling_graph(const RadiiProfile& prof, int index) {
  if (index < 1 || index > prof.rank)
    throw std::invalid_argument("prune_to_controlling_graph: bad index");
  Prime p(prof.prime);
  std::vector<Paf> fn;
  std::vector<bool> gamma;
  for (std::size_t e = 0; e < prof.graph.edges.size(); ++e) {
    fn.push_back(prof.edges[e].conv[static_cast<std::size_t>(index - 1)]);
    gamma.push_back(prof.graph.edges[e].on_skeleton);
  }
  if (prof.graph.edges.empty()) {
    ControllingGraph out;
    out.base = &prof.graph;
    return out;
  }
  return prune_core(prof.graph, fn, gamma, p);
}

ControllingGraph prune_heights(const RadiiProfile& prof, int index) {
  if (index < 1 || index > prof.rank) throw std::invalid_argument("prune_heights: bad index");
  Prime p(prof.prime);
  std::vector<Paf> fn;
  std::vector<bool> gamma;
  for (std::size_t e = 0; e < prof.graph.edges.size(); ++e) {
    fn.push_back(prof.edges[e].height[static_cast<std::size_t>(index - 1)]);
    gamma.push_back(prof.graph.edges[e].on_skeleton);
  }
  if (prof.graph.edges.empty()) {
    ControllingGraph out;
    out.base = &prof.graph;
    return out;
  }
  return prune_core(prof.graph, fn, gamma, p);
}

ControllingGraph prune_function_profile(const FunctionProfile& f, const Prime& p) {
  return prune_core(f.graph, f.fn, f.gamma_edge, p);
}

// ------------------------------------------------------------- criteria

namespace {

// slopes of F at a vertex, one per graph direction (outward orientation)
std::vector<std::pair<int, Rat>> vertex_direction_slopes(const SkeletonGraph& g,
                                                         const std::vector<Paf>& fn, int v) {
  std::vector<std::pair<int, Rat>> out;  // (edge, outward slope)
  const auto& vx = g.verts[static_cast<std::size_t>(v)];
  const QLog& lvl = vx.pt.log_radius;
  if (vx.up_edge >= 0)
    out.emplace_back(vx.up_edge, fn[static_cast<std::size_t>(vx.up_edge)].slope_at(lvl, Side::Right));
  for (int de : vx.down_edges)
    out.emplace_back(de, -fn[static_cast<std::size_t>(de)].slope_at(lvl, Side::Left));
  return out;
}

bool in_point_set(const Point& x, const std::vector<Point>& set, const Prime& p) {
  for (const auto& q : set)
    if (point_eq(x, q, p)) return true;
  return false;
}

bool is_boundary_vertex(const SkeletonGraph& g, const AffinoidDomain& X, int v, const Prime& p) {
  if (v == g.root) return true;
  for (const auto& h : X.holes)
    if (point_eq(g.verts[static_cast<std::size_t>(v)].pt, h, p)) return true;
  return false;
}

CriterionReport check_criterion_core(const SkeletonGraph& graph, const std::vector<Paf>& fn,
                                     const std::vector<bool>& gamma_edge,
                                     const AffinoidDomain& domain, int rank, int max_frob,
                                     const std::vector<Point>& C, const Prime& p) {
  CriterionReport rep;
  std::ostringstream oss;

  // (C1) profiles finite-valued: PAF values are exact rationals by
  // construction; verify every edge carries a profile.
  if (fn.size() != graph.edges.size()) {
    rep.c1 = false;
    rep.violations.push_back("C1: missing edge profile");
  }

  // (C2) finitely many breaks along every maximal segment: count along
  // each leaf-to-root chain.
  for (std::size_t v = 0; v < graph.verts.size(); ++v) {
    if (!graph.verts[v].down_edges.empty()) continue;
    int breaks = 0;
    int cur = static_cast<int>(v);
    while (cur != graph.root) {
      int ue = graph.verts[static_cast<std::size_t>(cur)].up_edge;
      if (ue < 0) break;
      breaks += static_cast<int>(fn[static_cast<std::size_t>(ue)].knots().size());
      cur = graph.edges[static_cast<std::size_t>(ue)].v_hi;
    }
    rep.max_breaks_per_segment = std::max(rep.max_breaks_per_segment, breaks);
  }

  // (C3) concavity below rho_Gamma: along every maximal off-Gamma chain,
  // walking from the bottom up to the Gamma attachment.
  for (std::size_t v = 0; v < graph.verts.size(); ++v) {
    if (!graph.verts[v].down_edges.empty()) continue;  // leaves only
    int ue = graph.verts[v].up_edge;
    if (ue < 0 || gamma_edge[static_cast<std::size_t>(ue)]) continue;
    // collect the chain of off-Gamma edges upward
    std::vector<Rat> slopes;
    int cur = static_cast<int>(v);
    while (cur != graph.root) {
      int e = graph.verts[static_cast<std::size_t>(cur)].up_edge;
      if (e < 0 || gamma_edge[static_cast<std::size_t>(e)]) break;
      const Paf& f = fn[static_cast<std::size_t>(e)];
      auto rows = f.rows();
      for (std::size_t i = 0; i + 1 < rows.size(); ++i) slopes.push_back(rows[i].slope_right);
      cur = graph.edges[static_cast<std::size_t>(e)].v_hi;
    }
    for (std::size_t i = 0; i + 1 < slopes.size(); ++i)
      if (slopes[i] < slopes[i + 1]) {
        rep.c3 = false;
        oss.str("");
        oss << "C3: convex break along the branch at "
            << point_str(graph.verts[v].pt);
        rep.violations.push_back(oss.str());
        break;
      }
  }

  // (C4) minimal nonzero slope magnitude
  Rat nu(0);
  bool have = false;
  for (const auto& f : fn)
    for (const auto& s : f.slopes()) {
      if (s == 0) continue;
      Rat a = s < 0 ? Rat(-s) : s;
      if (!have || a < nu) {
        nu = a;
        have = true;
      }
    }
  rep.nu = nu;
  if (have) {
    Rat threshold = rat(1);
    long denom = rank;
    for (int k = 0; k < max_frob; ++k) denom *= static_cast<long>(p.value());
    threshold = rat(1, denom);
    if (nu < threshold) {
      rep.c4 = false;
      rep.violations.push_back("C4: observed slope below 1/(r p^maxiter)");
    }
  }

  // (C5) directional finiteness
  for (std::size_t v = 0; v < graph.verts.size(); ++v)
    rep.max_directions = std::max(rep.max_directions, graph.direction_count(static_cast<int>(v)));

  // (C6) super-harmonicity at bifurcation points of the controlling graph
  ControllingGraph pruned = prune_core(graph, fn, gamma_edge, p, /*strict=*/false);
  for (std::size_t v = 0; v < graph.verts.size(); ++v) {
    int deg = 0;
    const auto& vx = graph.verts[v];
    if (vx.up_edge >= 0 && pruned.keep[static_cast<std::size_t>(vx.up_edge)]) ++deg;
    for (int de : vx.down_edges)
      if (pruned.keep[static_cast<std::size_t>(de)] &&
          pruned.cut_level[static_cast<std::size_t>(de)] <
              graph.edges[static_cast<std::size_t>(de)].hi)
        ++deg;
    if (deg < 3) continue;
    if (is_boundary_vertex(graph, domain, static_cast<int>(v), p)) continue;
    if (in_point_set(vx.pt, C, p)) continue;
    Rat lap(0);
    for (const auto& [e, s] : vertex_direction_slopes(graph, fn, static_cast<int>(v))) lap += s;
    if (lap > 0) {
      rep.c6 = false;
      rep.violations.push_back("C6: positive Laplacian at " + point_str(vx.pt));
    }
  }
  return rep;
}

}  // namespace

CriterionReport check_criterion(const FunctionProfile& f, const std::vector<Point>& C,
                                const Prime& p) {
  AffinoidDomain dom;  // boundary detection: root only unless supplied
  dom.outer = f.graph.verts.empty() ? Point(rat(0), QLog(0))
                                    : f.graph.verts[static_cast<std::size_t>(f.graph.root)].pt;
  return check_criterion_core(f.graph, f.fn, f.gamma_edge, dom, f.rank, f.max_frobenius, C, p);
}

CriterionReport check_criterion(const RadiiProfile& prof, int index,
                                const std::vector<Point>& C) {
  Prime p(prof.prime);
  std::vector<Paf> fn;
  std::vector<bool> gamma;
  for (std::size_t e = 0; e < prof.graph.edges.size(); ++e) {
    fn.push_back(prof.edges[e].conv[static_cast<std::size_t>(index - 1)]);
    gamma.push_back(prof.graph.edges[e].on_skeleton);
  }
  return check_criterion_core(prof.graph, fn, gamma, prof.domain, prof.rank, prof.max_frobenius,
                              C, p);
}

SolvClass solvability_classify(const RadiiProfile& prof, int vertex, int index) {
  return prof.verts[static_cast<std::size_t>(vertex)]
      .classes[static_cast<std::size_t>(index - 1)];
}

// ----------------------------------------------------------------- audit

namespace {

// outward slope of log rho_{.,X} in a graph direction: +1 up the
// skeleton, -1 down the skeleton, 0 into residue disks
Rat rho_dir_slope(const SkeletonGraph& g, int edge, bool upward) {
  const SkeletonEdge& ed = g.edges[static_cast<std::size_t>(edge)];
  if (!ed.on_skeleton) return rat(0);
  return upward ? rat(1) : rat(-1);
}

struct VertexSlopes {
  // per direction: (edge id, upward?, slope of F)
  std::vector<std::tuple<int, bool, Rat>> dirs;
};

VertexSlopes slopes_at_vertex(const SkeletonGraph& g, const std::vector<Paf>& fn, int v) {
  VertexSlopes out;
  const auto& vx = g.verts[static_cast<std::size_t>(v)];
  const QLog& lvl = vx.pt.log_radius;
  if (vx.up_edge >= 0)
    out.dirs.emplace_back(vx.up_edge, true,
                          fn[static_cast<std::size_t>(vx.up_edge)].slope_at(lvl, Side::Right));
  for (int de : vx.down_edges)
    out.dirs.emplace_back(de, false,
                          -fn[static_cast<std::size_t>(de)].slope_at(lvl, Side::Left));
  return out;
}

bool windows_cover(const RadiiProfile& prof, int edge, const QLog& pos) {
  const EdgeProfile& ep = prof.edges[static_cast<std::size_t>(edge)];
  for (const auto& per : ep.status)
    for (const auto& st : per)
      if (st.status == StretchStatus::Window && pos >= st.lo && pos <= st.hi) return true;
  return false;
}

}  // namespace

AuditReport audit_main_theorem(const RadiiProfile& prof) {
  Prime p(prof.prime);
  AuditReport rep;
  std::ostringstream oss;
  const SkeletonGraph& g = prof.graph;
  int r = prof.rank;
  if (g.edges.empty()) return rep;  // single-vertex profile: nothing to audit

  std::vector<Point> sx = minimal_triangulation(prof.domain, p);

  // controlling graphs and exceptional sets C_i
  std::vector<ControllingGraph> prunedR, prunedH;
  for (int i = 1; i <= r; ++i) {
    prunedR.push_back(prune_to_controlling_graph(prof, i));
    std::vector<Paf> hf;
    std::vector<bool> gamma;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      hf.push_back(prof.edges[e].height[static_cast<std::size_t>(i - 1)]);
      gamma.push_back(g.edges[e].on_skeleton);
    }
    prunedH.push_back(prune_core(g, hf, gamma, p));
  }
  auto vertex_in_pruned = [&](const ControllingGraph& cg, int v) {
    const auto& vx = g.verts[static_cast<std::size_t>(v)];
    if (vx.up_edge >= 0 && cg.keep[static_cast<std::size_t>(vx.up_edge)]) return true;
    for (int de : vx.down_edges)
      if (cg.keep[static_cast<std::size_t>(de)] &&
          cg.cut_level[static_cast<std::size_t>(de)] <
              g.edges[static_cast<std::size_t>(de)].hi)
        return true;
    return false;
  };
  // C_i: solvable end points of Gamma(R_j), j <= i, plus solvable points
  // of the triple intersections Gamma(R_j) n Gamma(H_j) n Gamma_{j-1}
  std::vector<std::vector<Point>> C(static_cast<std::size_t>(r) + 1);
  for (int i = 1; i <= r; ++i) {
    C[static_cast<std::size_t>(i)] = C[static_cast<std::size_t>(i - 1)];
    const ControllingGraph& cg = prunedR[static_cast<std::size_t>(i - 1)];
    for (std::size_t k = 0; k < cg.end_points.size(); ++k)
      if (cg.end_solvable[k]) C[static_cast<std::size_t>(i)].push_back(cg.end_points[k]);
    for (std::size_t v = 0; v < g.verts.size(); ++v) {
      const QLog& lvl = g.verts[v].pt.log_radius;
      bool solv = prof.verts[v].radii[static_cast<std::size_t>(i - 1)] == lvl;
      if (!solv) continue;
      bool inR = vertex_in_pruned(prunedR[static_cast<std::size_t>(i - 1)], static_cast<int>(v));
      bool inH = vertex_in_pruned(prunedH[static_cast<std::size_t>(i - 1)], static_cast<int>(v));
      // Gamma_{i-1} = Gamma_X  u  union of Gamma(R_j), j < i
      bool inPrev = false;
      {
        const auto& vx = g.verts[v];
        if (vx.up_edge >= 0 && g.edges[static_cast<std::size_t>(vx.up_edge)].on_skeleton)
          inPrev = true;
        for (int de : vx.down_edges)
          if (g.edges[static_cast<std::size_t>(de)].on_skeleton) inPrev = true;
      }
      for (int j = 1; j < i && !inPrev; ++j)
        inPrev = vertex_in_pruned(prunedR[static_cast<std::size_t>(j - 1)], static_cast<int>(v));
      if (inR && inH && inPrev) C[static_cast<std::size_t>(i)].push_back(g.verts[v].pt);
    }
  }
  for (const auto& q : C[static_cast<std::size_t>(r)]) rep.exceptional.push_back(q);

  auto level_of = [&](int v) { return g.verts[static_cast<std::size_t>(v)].pt.log_radius; };
  auto isp_at = [&](int v) {
    int last = 0;
    for (int i = 1; i <= r; ++i)
      if (prof.verts[static_cast<std::size_t>(v)].radii[static_cast<std::size_t>(i - 1)] <
          level_of(v))
        last = i;
    return last;
  };
  auto polygon_vertex_at = [&](int v, int i) {
    if (i == r) return true;
    return prof.verts[static_cast<std::size_t>(v)].radii[static_cast<std::size_t>(i - 1)] <
           prof.verts[static_cast<std::size_t>(v)].radii[static_cast<std::size_t>(i)];
  };

  // count flagged stretches once
  for (const auto& ep : prof.edges)
    for (const auto& per : ep.status)
      for (const auto& st : per)
        if (st.status == StretchStatus::Window) ++rep.flagged_stretches;

  for (int i = 1; i <= r; ++i) {
    std::vector<Paf> H;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      H.push_back(prof.edges[e].height[static_cast<std::size_t>(i - 1)]);

    // (a) integrality at convergence-polygon vertices
    for (std::size_t v = 0; v < g.verts.size(); ++v) {
      if (!polygon_vertex_at(static_cast<int>(v), i)) continue;
      for (const auto& [e, up, s] : slopes_at_vertex(g, H, static_cast<int>(v)).dirs) {
        if (windows_cover(prof, e, level_of(static_cast<int>(v)))) continue;
        if (Rat(s.get_den()) != 1) {
          rep.integrality = false;
          oss.str("");
          oss << "integrality: dH_" << i << " slope " << rat_to_string(s) << " at "
              << point_str(g.verts[v].pt);
          rep.violations.push_back(oss.str());
        }
      }
    }

    // (b) slope denominators bounded by the rank
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      for (const auto& s : H[e].slopes())
        if (Rat(s.get_den()) > r) {
          rep.denominators = false;
          oss.str("");
          oss << "denominators: H_" << i << " slope " << rat_to_string(s) << " on edge " << e;
          rep.violations.push_back(oss.str());
        }

    // (c) concavity
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const SkeletonEdge& ed = g.edges[e];
      if (ed.on_skeleton) {
        if (!H[e].is_concave()) {
          rep.concavity = false;
          oss.str("");
          oss << "concavity iii.a: H_" << i << " convex on a skeleton edge at center "
              << rat_to_string(ed.center);
          rep.violations.push_back(oss.str());
        }
        continue;
      }
      // iii.b: convex kinks only at solvable levels of some k <= i
      for (const auto& kink : H[e].convex_kinks()) {
        if (windows_cover(prof, static_cast<int>(e), QLog(kink.pos))) continue;
        bool excused = false;
        for (int k = 1; k <= i; ++k)
          excused = excused ||
                    prof.edges[e].conv[static_cast<std::size_t>(k - 1)].eval(QLog(kink.pos)) ==
                        QLog(kink.pos);
        if (!excused) {
          rep.concavity = false;
          oss.str("");
          oss << "concavity iii.b: convex kink of H_" << i << " at level "
              << rat_to_string(kink.pos) << " on a residue branch";
          rep.violations.push_back(oss.str());
        }
      }
      // iii.c: nonpositive slopes on solvability-free stretches
      std::vector<std::pair<QLog, QLog>> solv;  // union over k <= i
      for (int k = 1; k <= i; ++k) {
        Paf D = prof.edges[e].conv[static_cast<std::size_t>(k - 1)] -
                Paf::diagonal(ed.lo, ed.hi);
        for (const auto& zr : zero_regions(D)) solv.push_back(zr);
      }
      auto rows = H[e].rows();
      for (std::size_t pi = 0; pi + 1 < rows.size(); ++pi) {
        if (!(rows[pi].slope_right > 0)) continue;
        // positive-slope piece [pos_i, pos_{i+1}]: violation unless fully
        // covered by solvable stretches
        QLog lo = rows[pi].pos, hi = rows[pi + 1].pos;
        bool covered = false;
        for (const auto& [sl, sh] : solv)
          if (sl <= lo && hi <= sh) covered = true;
        if (windows_cover(prof, static_cast<int>(e), lo)) covered = true;
        if (!covered) {
          rep.concavity = false;
          oss.str("");
          oss << "concavity iii.c: H_" << i
              << " increasing on a solvability-free stretch, center "
              << rat_to_string(ed.center);
          rep.violations.push_back(oss.str());
        }
      }
    }

    // (d) super-harmonicity of the normalized heights
    for (std::size_t v = 0; v < g.verts.size(); ++v) {
      if (is_boundary_vertex(g, prof.domain, static_cast<int>(v), p)) continue;
      bool in_sx = in_point_set(g.verts[v].pt, sx, p);
      bool in_Ci = in_point_set(g.verts[v].pt, C[static_cast<std::size_t>(i)], p);
      bool flagged = prof.verts[v].flagged;
      if (flagged) continue;
      Rat lap(0);
      int nx = 0;
      for (const auto& [e, up, s] : slopes_at_vertex(g, H, static_cast<int>(v)).dirs) {
        lap += s - rho_dir_slope(g, e, up) * rat(i);
        if (g.edges[static_cast<std::size_t>(e)].on_skeleton) ++nx;
      }
      if (in_sx) {
        Rat bound = rat(nx - 2) * rat(std::min(i, isp_at(static_cast<int>(v))));
        if (lap > bound) {
          rep.superharmonic = false;
          oss.str("");
          oss << "superharmonicity: dd^c H_" << i << " = " << rat_to_string(lap) << " > bound "
              << rat_to_string(bound) << " at " << point_str(g.verts[v].pt);
          rep.violations.push_back(oss.str());
        }
      } else if (!in_Ci && lap > 0) {
        rep.superharmonic = false;
        oss.str("");
        oss << "superharmonicity: dd^c H_" << i << " = " << rat_to_string(lap) << " at "
            << point_str(g.verts[v].pt);
        rep.violations.push_back(oss.str());
      }

      // (e) weak harmonicity at solvability-free polygon vertices
      bool free_solv = true;
      for (int k = 1; k <= i; ++k)
        free_solv = free_solv && !(prof.verts[v].radii[static_cast<std::size_t>(k - 1)] ==
                                   level_of(static_cast<int>(v)));
      if (free_solv && polygon_vertex_at(static_cast<int>(v), i) &&
          vertex_in_pruned(prunedH[static_cast<std::size_t>(i - 1)], static_cast<int>(v))) {
        Rat expect = in_sx ? rat(nx - 2) * rat(std::min(i, isp_at(static_cast<int>(v)))) : rat(0);
        if (!(lap == expect)) {
          rep.harmonic_vertices = false;
          oss.str("");
          oss << "harmonicity: dd^c H_" << i << " = " << rat_to_string(lap) << " expected "
              << rat_to_string(expect) << " at " << point_str(g.verts[v].pt);
          rep.violations.push_back(oss.str());
        }
      }
    }

    // interior breakpoints: concavity of H_i off the solvable/window set
    // is already enforced by (c); on skeleton edges by iii.a.
  }

  // dd^c R_1^F <= 0 everywhere off the boundary, no exceptional set
  {
    std::vector<Paf> R1;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      R1.push_back(prof.edges[e].conv[0]);
    for (std::size_t v = 0; v < g.verts.size(); ++v) {
      if (is_boundary_vertex(g, prof.domain, static_cast<int>(v), p)) continue;
      if (prof.verts[v].flagged) continue;
      Rat lap(0);
      for (const auto& [e, up, s] : slopes_at_vertex(g, R1, static_cast<int>(v)).dirs) lap += s;
      if (lap > 0) {
        rep.r1_superharmonic = false;
        oss.str("");
        oss << "R1 superharmonicity: dd^c R_1 = " << rat_to_string(lap) << " at "
            << point_str(g.verts[v].pt);
        rep.violations.push_back(oss.str());
      }
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      for (const auto& kink : R1[e].convex_kinks()) {
        if (windows_cover(prof, static_cast<int>(e), QLog(kink.pos))) continue;
        if (g.edges[e].on_skeleton) {
          rep.r1_superharmonic = false;
          rep.violations.push_back("R1 superharmonicity: convex kink on the skeleton");
        } else {
          // off the skeleton a convex kink is a positive Laplacian at a
          // two-valent point unless it is the solvable plateau corner
          bool excused = prof.edges[e].conv[0].eval(QLog(kink.pos)) == QLog(kink.pos);
          if (!excused) {
            rep.r1_superharmonic = false;
            rep.violations.push_back("R1 superharmonicity: convex kink on a branch");
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace padic
