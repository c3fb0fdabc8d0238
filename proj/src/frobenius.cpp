#include "padic/frobenius.hpp"

#include <algorithm>
#include <functional>

namespace padic {

QLog phi_radius(const QLog& sigma_log, const QLog& L, const Prime& p) {
  long pv = static_cast<long>(p.value());
  QLog mult = L.is_neg_inf() && sigma_log.is_neg_inf()
                  ? QLog::neg_inf()
                  : QLog(-1) + sigma_log.scaled(rat(pv - 1)) + L;
  return qmax(L.scaled(rat(pv)), mult);
}

QLog psi_radius(const QLog& sigma_log, const QLog& Lp, const Prime& p) {
  long pv = static_cast<long>(p.value());
  if (sigma_log.is_neg_inf()) return Lp.scaled(rat(1, pv));
  return qmin(Lp.scaled(rat(1, pv)), Lp + QLog(1) - sigma_log.scaled(rat(pv - 1)));
}

Point phi_point(const Point& x, const Prime& p) {
  QLog sigma = x.center == 0 ? QLog::neg_inf() : val_rational(x.center, p);
  Rat cp(1);
  for (unsigned long k = 0; k < p.value(); ++k) cp *= x.center;
  return Point(cp, phi_radius(sigma, x.log_radius, p));
}

int fiber_size(const Point& x, const Prime& p) {
  if (x.center == 0) return 1;
  QLog sigma = val_rational(x.center, p);
  return x.log_radius >= p.omega_log() + sigma ? 1 : static_cast<int>(p.value());
}

int compute_i1(const std::vector<QLog>& values, const Prime& p, const QLog& t_log) {
  QLog bound = p.omega_log() + t_log;
  int i1 = 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] <= bound) i1 = static_cast<int>(i) + 1;
  return i1;
}

IndexMap index_map(int i, const FrobContext& ctx) {
  if (i < 1 || i > ctx.rank) throw std::invalid_argument("index_map: index out of range");
  long pv = static_cast<long>(ctx.p.value());
  IndexMap m;
  if (i < ctx.i1) {
    m.phi_i = static_cast<int>(pv) * i;
    m.d_i = i;
  } else {
    m.phi_i = (static_cast<int>(pv) - 1) * ctx.rank + i;
    m.d_i = ctx.rank;
  }
  m.ell_val = (QLog(-1) + ctx.t_log.scaled(rat(pv - 1))).scaled(rat(m.d_i));
  return m;
}

SpectralRadii pushforward_radii(const SpectralRadii& s, const FrobContext& ctx) {
  for (bool c : s.certified)
    if (!c) throw std::domain_error("pushforward_radii: uncertified input radius");
  long pv = static_cast<long>(ctx.p.value());
  QLog lam = QLog(-1) + ctx.t_log.scaled(rat(pv - 1));           // log |p||t|^{p-1}
  QLog filler = (ctx.p.omega_log() + ctx.t_log).scaled(rat(pv));  // log omega^p |t|^p
  SpectralRadii out;
  out.at = phi_point(s.at, ctx.p);
  for (int i = 1; i <= ctx.rank; ++i) {
    const QLog& v = s.values[static_cast<std::size_t>(i - 1)];
    if (i <= ctx.i1) {
      for (long k = 0; k < pv; ++k) out.values.push_back(lam + v);
    } else {
      out.values.push_back(v.scaled(rat(pv)));
      for (long k = 0; k + 1 < pv; ++k) out.values.push_back(filler);
    }
  }
  std::sort(out.values.begin(), out.values.end(),
            [](const QLog& a, const QLog& b) { return a < b; });
  out.certified.assign(out.values.size(), true);
  return out;
}

QLog partial_height_descent(const QLog& H_phi, int i, const FrobContext& ctx) {
  IndexMap m = index_map(i, ctx);
  return H_phi.scaled(rat(1, static_cast<long>(ctx.p.value()))) - m.ell_val;
}

void FrobEntry::add_term(long e, const Rat& c) {
  if (c == 0) return;
  auto it = num.find(e);
  if (it == num.end()) {
    num.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0) num.erase(it);
}

RF FrobEntry::to_rf() const {
  if (num.empty()) return RF();
  long emin = num.begin()->first;
  long shift = emin < 0 ? -emin : 0;
  std::vector<Rat> cs(static_cast<std::size_t>(num.rbegin()->first + shift) + 1, rat(0));
  for (const auto& [e, c] : num) cs[static_cast<std::size_t>(e + shift)] = c;
  Poly n(std::move(cs));
  Poly d = Poly::monomial(rat(1), static_cast<std::size_t>(shift));
  for (const auto& [z, m] : den) {
    Poly lin(std::vector<Rat>{Rat(-z), rat(1)});
    for (long k = 0; k < m; ++k) d = d * lin;
  }
  return RF(std::move(n), std::move(d));
}

namespace {

// den = c (T - z)^k exactly? Returns (z, k) on success; k may be 0.
std::optional<std::pair<Rat, long>> linear_power_form(const Poly& den) {
  long k = den.degree();
  if (k < 0) return std::nullopt;
  if (k == 0) return std::make_pair(rat(0), 0L);
  Rat lead = den.coeffs().back();
  // monic candidate root from the subleading coefficient
  Rat z = -den.coeff(static_cast<std::size_t>(k - 1)) / (lead * rat(k));
  Poly lin(std::vector<Rat>{Rat(-z), rat(1)});
  Poly acc(lead);
  for (long i = 0; i < k; ++i) acc = acc * lin;
  if (acc == den) return std::make_pair(z, k);
  return std::nullopt;
}

FrobEntry entry_from_rf(const RF& f) {
  FrobEntry e;
  if (f.is_zero()) return e;
  auto lp = linear_power_form(f.den());
  if (!lp) throw std::domain_error("frob_from_connection: non-Laurent entry");
  auto [z, k] = *lp;
  Rat lead = f.den().coeffs().back();
  const auto& cs = f.num().coeffs();
  if (z == 0) {
    for (std::size_t i = 0; i < cs.size(); ++i)
      e.add_term(static_cast<long>(i) - k, cs[i] / lead);
  } else {
    for (std::size_t i = 0; i < cs.size(); ++i) e.add_term(static_cast<long>(i), cs[i] / lead);
    if (k > 0) e.den.emplace_back(z, k);
  }
  return e;
}

FrobEntry entry_from_factored(const FactoredRatFun& g) {
  FrobEntry e;
  if (g.is_zero()) return e;
  Poly numer(g.constant);
  long tpow = 0;
  for (const auto& [z, m] : g.factors) {
    if (m > 0) {
      Poly lin(std::vector<Rat>{Rat(-z), rat(1)});
      for (long k = 0; k < m; ++k) numer = numer * lin;
    } else if (z == 0) {
      tpow = m;
    } else {
      e.den.emplace_back(z, -m);
    }
  }
  for (std::size_t i = 0; i < numer.coeffs().size(); ++i)
    e.add_term(static_cast<long>(i) + tpow, numer.coeffs()[i]);
  return e;
}

}  // namespace

FrobMatrix frob_from_connection(const ConnectionMatrix& G) {
  G.validate();
  FrobMatrix M;
  M.rank = G.rank;
  for (const auto& row : G.entries) {
    M.entries.emplace_back();
    for (const auto& f : row) M.entries.back().push_back(entry_from_rf(f));
  }
  return M;
}

FrobMatrix frob_from_operator(const DifferentialOperator& op) {
  op.validate();
  int r = op.rank;
  FrobMatrix M;
  M.rank = r;
  M.entries.assign(static_cast<std::size_t>(r), std::vector<FrobEntry>(static_cast<std::size_t>(r)));
  for (int i = 0; i + 1 < r; ++i) M.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + 1)].add_term(0, rat(1));
  for (int j = 0; j < r; ++j) {
    FactoredRatFun g = op.coeffs[static_cast<std::size_t>(r - 1 - j)];
    if (g.is_zero()) continue;
    g.constant = -g.constant;
    M.entries[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(j)] = entry_from_factored(g);
  }
  return M;
}

ConnectionMatrix frob_to_connection(const FrobMatrix& M) {
  ConnectionMatrix G;
  G.rank = M.rank;
  for (const auto& row : M.entries) {
    G.entries.emplace_back();
    for (const auto& e : row) G.entries.back().push_back(e.to_rf());
  }
  return G;
}

FrobMatrix pushforward_frobmatrix(const FrobMatrix& M, const Prime& p) {
  long pv = static_cast<long>(p.value());
  int r = M.rank;
  int R = static_cast<int>(pv) * r;
  FrobMatrix out;
  out.rank = R;
  out.entries.assign(static_cast<std::size_t>(R), std::vector<FrobEntry>(static_cast<std::size_t>(R)));
  auto flat = [&](long k, int j) { return static_cast<std::size_t>(k * r + j); };

  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      const FrobEntry& E = M.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (E.is_zero()) continue;
      // clear the denominator into T^p-form: multiply by the norm cofactor
      // ((T^p - z^p)/(T - z))^m per factor (T - z)^m
      std::map<long, Rat> num = E.num;
      std::vector<std::pair<Rat, long>> den_new;
      for (const auto& [z, m] : E.den) {
        // cofactor = sum_{a=0}^{p-1} z^a T^{p-1-a}
        std::map<long, Rat> cof;
        Rat za(1);
        for (long a = 0; a < pv; ++a) {
          cof[pv - 1 - a] = za;
          za *= z;
        }
        for (long t = 0; t < m; ++t) {
          std::map<long, Rat> prod;
          for (const auto& [e1, c1] : num)
            for (const auto& [e2, c2] : cof) {
              Rat& slot = prod[e1 + e2];
              slot += c1 * c2;
            }
          for (auto it = prod.begin(); it != prod.end();)
            it = it->second == 0 ? prod.erase(it) : std::next(it);
          num = std::move(prod);
        }
        Rat zp = za;  // z^p
        bool merged = false;
        for (auto& [w, mm] : den_new)
          if (w == zp) {
            mm += m;
            merged = true;
          }
        if (!merged) den_new.emplace_back(zp, m);
      }
      // split T^{k+1-p} * num into congruence classes
      for (long k = 0; k < pv; ++k) {
        for (const auto& [m_exp, a] : num) {
          long e = m_exp + k + 1 - pv;
          long s = ((e % pv) + pv) % pv;
          long q = (e - s) / pv;
          FrobEntry& tgt = out.entries[flat(s, i)][flat(k, j)];
          tgt.add_term(q, a / rat(pv));
          if (tgt.den.empty() && !den_new.empty()) tgt.den = den_new;
          else if (!den_new.empty() && tgt.den != den_new)
            throw std::logic_error("pushforward_frobmatrix: denominator clash");
        }
      }
    }
  }
  // diagonal contribution -(k/p) T^{-1} on the T^k block; when the slot
  // already holds num/den, fold c/T in as c * den * T^{-1} on the numerator
  for (long k = 1; k < pv; ++k)
    for (int j = 0; j < r; ++j) {
      FrobEntry& tgt = out.entries[flat(k, j)][flat(k, j)];
      Rat c = rat(-k, pv);
      if (tgt.den.empty()) {
        tgt.add_term(-1, c);
        continue;
      }
      Poly dp = Poly::one();
      for (const auto& [z, m] : tgt.den) {
        Poly lin(std::vector<Rat>{Rat(-z), rat(1)});
        for (long t = 0; t < m; ++t) dp = dp * lin;
      }
      for (std::size_t i = 0; i < dp.coeffs().size(); ++i)
        tgt.add_term(static_cast<long>(i) - 1, c * dp.coeffs()[i]);
    }
  return out;
}

ConnectionMatrix pushforward_matrix(const ConnectionMatrix& G, const Prime& p) {
  FrobMatrix M = frob_from_connection(G);
  for (const auto& row : M.entries)
    for (const auto& e : row)
      if (!e.den.empty()) throw std::domain_error("pushforward_matrix: non-Laurent entry");
  return frob_to_connection(pushforward_frobmatrix(M, p));
}

std::vector<std::vector<int>> frob_components(const FrobMatrix& M) {
  int r = M.rank;
  std::vector<int> parent(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) parent[static_cast<std::size_t>(i)] = i;
  std::function<int(int)> find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  };
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (i != j && !M.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero())
        parent[static_cast<std::size_t>(find(i))] = find(j);
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < r; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [k, v] : groups) out.push_back(v);
  return out;
}

FrobMatrix frob_submatrix(const FrobMatrix& M, const std::vector<int>& idx) {
  FrobMatrix S;
  S.rank = static_cast<int>(idx.size());
  for (int i : idx) {
    S.entries.emplace_back();
    for (int j : idx)
      S.entries.back().push_back(M.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }
  return S;
}

namespace {

struct DescentVals {
  std::vector<QLog> values;            // sorted
  std::vector<RadiusStatus> status;    // parallel
  int depth = 0;
  bool exhausted = false;
};

DescentVals descent_rec(const FrobMatrix& M, const QLog& L, const Prime& p, int max_iter,
                        int level) {
  long pv = static_cast<long>(p.value());
  // direct sums split: radii of a direct sum are the multiset union
  auto comps = frob_components(M);
  if (comps.size() > 1) {
    DescentVals out;
    std::vector<std::pair<QLog, RadiusStatus>> merged;
    for (const auto& c : comps) {
      DescentVals sub = descent_rec(frob_submatrix(M, c), L, p, max_iter, level);
      out.depth = std::max(out.depth, sub.depth);
      out.exhausted = out.exhausted || sub.exhausted;
      for (std::size_t i = 0; i < sub.values.size(); ++i)
        merged.emplace_back(sub.values[i], sub.status[i]);
    }
    std::stable_sort(merged.begin(), merged.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [v, s] : merged) {
      out.values.push_back(v);
      out.status.push_back(s);
    }
    return out;
  }

  Point xk(rat(0), L);
  auto cyc = cyclic_operator(frob_to_connection(M));
  if (!cyc) throw std::domain_error("descent_certify: cyclic reduction failed");
  SpectralRadii sr = small_radius_certify(spectral_polygon_at(cyc->op, xk, p), xk, p);
  int r = M.rank;

  bool all_cert = true, only_pinned = true;
  for (std::size_t i = 0; i < sr.values.size(); ++i) {
    all_cert = all_cert && sr.certified[i];
    only_pinned = only_pinned && (sr.certified[i] || sr.values[i] == L);
  }
  DescentVals out;
  out.depth = level;
  if (all_cert || (only_pinned && level >= 1)) {
    out.values = sr.values;
    for (std::size_t i = 0; i < sr.values.size(); ++i)
      out.status.push_back(sr.certified[i] ? RadiusStatus::Certified : RadiusStatus::Solvable);
    return out;
  }
  if (level >= max_iter || M.rank * pv > kDescentRankCap || M.rank * pv > kCyclicPracticalCap) {
    out.exhausted = true;
    out.values = sr.values;
    for (std::size_t i = 0; i < sr.values.size(); ++i)
      out.status.push_back(sr.certified[i] ? RadiusStatus::Certified
                                           : RadiusStatus::Undetermined);
    return out;
  }

  DescentVals sub = descent_rec(pushforward_frobmatrix(M, p), L.scaled(rat(pv)), p, max_iter,
                                level + 1);
  out.depth = sub.depth;
  out.exhausted = sub.exhausted;

  QLog lam = QLog(-1) + L.scaled(rat(pv - 1));
  QLog b = (p.omega_log() + L).scaled(rat(pv));
  int below = 0;
  for (const auto& v : sub.values)
    if (v < b) ++below;
  if (below % pv != 0) throw std::logic_error("descent: small-zone count not divisible by p");
  int i1 = below / static_cast<int>(pv);
  std::vector<QLog> H(sub.values.size() + 1, QLog(0));
  std::vector<bool> exact(sub.values.size() + 1, true);
  for (std::size_t m = 0; m < sub.values.size(); ++m) {
    H[m + 1] = H[m] + sub.values[m];
    exact[m + 1] = exact[m] && sub.status[m] != RadiusStatus::Undetermined;
  }
  std::vector<QLog> hv(static_cast<std::size_t>(r) + 1, QLog(0));
  std::vector<bool> hex(static_cast<std::size_t>(r) + 1, true);
  for (int i = 1; i <= r; ++i) {
    std::size_t pos = (i <= i1) ? static_cast<std::size_t>(pv * i)
                                : static_cast<std::size_t>((pv - 1) * r + i);
    int d = (i <= i1) ? i : r;
    hv[static_cast<std::size_t>(i)] = H[pos].scaled(rat(1, pv)) - lam.scaled(rat(d));
    hex[static_cast<std::size_t>(i)] = exact[pos];
  }
  for (int i = 1; i <= r; ++i) {
    QLog v = hv[static_cast<std::size_t>(i)] - hv[static_cast<std::size_t>(i - 1)];
    bool ex = hex[static_cast<std::size_t>(i)];
    std::size_t k = static_cast<std::size_t>(i - 1);
    if (sr.certified[k]) {
      if (ex && !(v == sr.values[k]))
        throw std::logic_error("descent: certified value mismatch");
      out.values.push_back(sr.values[k]);
      out.status.push_back(RadiusStatus::Certified);
    } else if (!ex) {
      out.values.push_back(v);
      out.status.push_back(RadiusStatus::Undetermined);
    } else if (v == L) {
      out.values.push_back(v);
      out.status.push_back(RadiusStatus::Solvable);
    } else {
      out.values.push_back(v);
      out.status.push_back(RadiusStatus::Certified);
    }
  }
  for (std::size_t i = 0; i + 1 < out.values.size(); ++i)
    if (out.values[i + 1] < out.values[i])
      throw std::logic_error("descent: values not sorted");
  return out;
}

}  // namespace

DescentReport descent_certify_frob(const FrobMatrix& M0, const QLog& L, const Prime& p,
                                   int max_iter) {
  if (!L.is_finite()) throw std::domain_error("descent_certify: type-1 point");
  DescentVals dv = descent_rec(M0, L, p, max_iter, 0);
  DescentReport rep;
  rep.at = Point(rat(0), L);
  rep.values = dv.values;
  rep.status = dv.status;
  rep.iterations = dv.depth;
  rep.exhausted = dv.exhausted;
  return rep;
}

DescentReport descent_certify(const DifferentialOperator& op, const Point& x, const Prime& p,
                              int max_iter) {
  DescentReport rep =
      descent_certify_frob(frob_from_operator(op.shifted(x.center)), x.log_radius, p, max_iter);
  rep.at = x;
  return rep;
}

DescentReport descent_certify(const ConnectionMatrix& G, const Point& x, const Prime& p,
                              int max_iter) {
  ConnectionMatrix S;
  S.rank = G.rank;
  for (const auto& row : G.entries) {
    S.entries.emplace_back();
    for (const auto& e : row) S.entries.back().push_back(e.shifted(x.center));
  }
  DescentReport rep = descent_certify_frob(frob_from_connection(S), x.log_radius, p, max_iter);
  rep.at = x;
  return rep;
}

}  // namespace padic
