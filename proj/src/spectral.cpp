#include "padic/spectral.hpp"

#include <algorithm>

namespace padic {

void DifferentialOperator::validate() const {
  if (rank < 1) throw std::invalid_argument("DifferentialOperator: rank < 1");
  if (static_cast<int>(coeffs.size()) != rank)
    throw std::invalid_argument("DifferentialOperator: need g_1..g_r");
  for (const auto& g : coeffs) g.validate();
}

DifferentialOperator DifferentialOperator::shifted(const Rat& c) const {
  DifferentialOperator out = *this;
  for (auto& g : out.coeffs) g = g.shifted(c);
  return out;
}

void ConnectionMatrix::validate() const {
  if (rank < 1) throw std::invalid_argument("ConnectionMatrix: rank < 1");
  if (static_cast<int>(entries.size()) != rank)
    throw std::invalid_argument("ConnectionMatrix: row count");
  for (const auto& row : entries)
    if (static_cast<int>(row.size()) != rank)
      throw std::invalid_argument("ConnectionMatrix: column count");
}

ConnectionMatrix companion_matrix(const DifferentialOperator& op) {
  op.validate();
  int r = op.rank;
  ConnectionMatrix G;
  G.rank = r;
  G.entries.assign(r, std::vector<RF>(r, RF()));
  for (int i = 0; i + 1 < r; ++i) G.entries[i][i + 1] = RF(rat(1));
  for (int j = 0; j < r; ++j) {
    const FactoredRatFun& g = op.coeffs[static_cast<std::size_t>(r - 1 - j)];  // g_{r-j}
    if (!g.is_zero()) G.entries[r - 1][j] = -RF(g.numerator(), g.denominator());
  }
  return G;
}

namespace {

QLog op_value_term(const QLog& gv, int i, const Prime& p) {
  // v_i = -log|g_i(x)| - i/(p-1)
  return -gv + QLog(rat(-i, static_cast<long>(p.value()) - 1));
}

NewtonPolygon polygon_from_vals(const std::vector<QLog>& gvals, const Prime& p) {
  std::vector<QLog> v;
  v.push_back(QLog(0));
  for (std::size_t i = 0; i < gvals.size(); ++i)
    v.push_back(op_value_term(gvals[i], static_cast<int>(i) + 1, p));
  return np_from_values(v);
}

}  // namespace

NewtonPolygon spectral_polygon_at(const DifferentialOperator& op, const Point& x, const Prime& p) {
  op.validate();
  std::vector<QLog> gv;
  for (const auto& g : op.coeffs) gv.push_back(gauss_val(g, x, p));
  return polygon_from_vals(gv, p);
}

NewtonPolygon spectral_polygon_at(const RationalOperator& op, const Point& x, const Prime& p) {
  std::vector<QLog> gv;
  for (const auto& g : op.coeffs)
    gv.push_back(g.is_zero() ? QLog::neg_inf()
                             : gauss_val_poly(g.num(), x, p) - gauss_val_poly(g.den(), x, p));
  return polygon_from_vals(gv, p);
}

SpectralRadii small_radius_certify(const NewtonPolygon& np, const Point& x, const Prime& p) {
  if (!x.log_radius.is_finite())
    throw std::domain_error("small_radius_certify: generic radius must be positive");
  QLog bound = p.omega_log() + x.log_radius;
  SpectralRadii out;
  out.at = x;
  for (const auto& s : np_slopes(np)) {
    if (s < bound) {
      out.values.push_back(s);
      out.certified.push_back(true);
    } else {
      out.values.push_back(qmin(s, x.log_radius));
      out.certified.push_back(false);
    }
  }
  return out;
}

std::vector<std::optional<Paf>> hull_height_profiles(const std::vector<std::optional<Paf>>& V) {
  if (V.empty() || !V[0]) throw std::invalid_argument("hull_height_profiles: V_0 required");
  int r = static_cast<int>(V.size()) - 1;
  std::vector<std::optional<Paf>> out(V.size());
  out[0] = V[0];
  for (int i = 1; i <= r; ++i) {
    std::optional<Paf> acc = V[static_cast<std::size_t>(i)];
    for (int j = 0; j < i; ++j) {
      if (!V[static_cast<std::size_t>(j)]) continue;
      for (int k = i + 1; k <= r; ++k) {
        if (!V[static_cast<std::size_t>(k)]) continue;
        Rat wj = rat(k - i, k - j), wk = rat(i - j, k - j);
        Paf cand = Paf::combine(V[static_cast<std::size_t>(j)]->scaled(wj),
                                V[static_cast<std::size_t>(k)]->scaled(wk), CombineOp::Add);
        acc = acc ? Paf::combine(*acc, cand, CombineOp::Min) : cand;
      }
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

namespace {

template <typename OpT, typename ValProfileFn>
std::vector<std::optional<Paf>> profile_impl(const OpT& op, ValProfileFn vp, const QLog& lo,
                                             const QLog& hi, const Prime& p) {
  std::vector<std::optional<Paf>> V(static_cast<std::size_t>(op.rank) + 1);
  V[0] = Paf::constant(lo, hi, rat(0));
  for (int i = 1; i <= op.rank; ++i) {
    std::optional<Paf> g = vp(op.coeffs[static_cast<std::size_t>(i - 1)]);
    if (!g) continue;
    // v_i(L) = -val(g_i)(L) - i/(p-1)
    V[static_cast<std::size_t>(i)] =
        g->scaled(rat(-1)).plus_const(rat(-i, static_cast<long>(p.value()) - 1));
  }
  return hull_height_profiles(V);
}

}  // namespace

std::vector<std::optional<Paf>> spectral_profile_along(const DifferentialOperator& op, const Rat& c,
                                                       const QLog& lo, const QLog& hi,
                                                       const Prime& p) {
  op.validate();
  auto vp = [&](const FactoredRatFun& g) -> std::optional<Paf> {
    if (g.is_zero()) return std::nullopt;
    return gauss_profile(g, c, lo, hi, p);
  };
  return profile_impl(op, vp, lo, hi, p);
}

std::vector<std::optional<Paf>> spectral_profile_along(const RationalOperator& op, const Rat& c,
                                                       const QLog& lo, const QLog& hi,
                                                       const Prime& p) {
  auto vp = [&](const RF& g) -> std::optional<Paf> {
    if (g.is_zero()) return std::nullopt;
    Paf n = gauss_profile_poly(g.num(), c, lo, hi, p);
    if (g.den().degree() < 1 && g.den().coeff(0) == 1) return n;
    return n - gauss_profile_poly(g.den(), c, lo, hi, p);
  };
  return profile_impl(op, vp, lo, hi, p);
}

TaylorMatrixSeq taylor_matrix_seq(const ConnectionMatrix& G, int N) {
  G.validate();
  if (N < 0) throw std::invalid_argument("taylor_matrix_seq: N < 0");
  int r = G.rank;
  TaylorMatrixSeq seq;
  // common denominator: product of distinct entry denominators
  seq.den = Poly::one();
  std::vector<Poly> seen;
  for (const auto& row : G.entries)
    for (const auto& e : row) {
      if (e.den().degree() < 1 && e.den().coeff(0) == 1) continue;
      bool dup = false;
      for (const auto& s : seen) dup = dup || s == e.den();
      if (!dup) {
        seen.push_back(e.den());
        seq.den = seq.den * e.den();
      }
    }
  // A = G * den
  std::vector<std::vector<Poly>> A(static_cast<std::size_t>(r),
                                   std::vector<Poly>(static_cast<std::size_t>(r)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const RF& e = G.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          e.num() * seq.den.divexact(e.den());
    }
  Poly dprime = seq.den.derivative();
  std::vector<std::vector<Poly>> P(static_cast<std::size_t>(r),
                                   std::vector<Poly>(static_cast<std::size_t>(r)));
  for (int i = 0; i < r; ++i) P[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Poly::one();
  seq.P.push_back(P);
  for (int n = 0; n < N; ++n) {
    // P_{n+1} = P_n A + P_n' den - n P_n den'
    std::vector<std::vector<Poly>> Q(static_cast<std::size_t>(r),
                                     std::vector<Poly>(static_cast<std::size_t>(r)));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        Poly acc;
        for (int k = 0; k < r; ++k)
          acc = acc + P[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                          A[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        const Poly& pij = P[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        acc = acc + pij.derivative() * seq.den - pij * dprime * rat(n);
        Q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc;
      }
    P = Q;
    seq.P.push_back(P);
  }
  return seq;
}

QLog radius_oracle(const ConnectionMatrix& G, const Point& x, int N, const Prime& p) {
  if (N < 1) throw std::invalid_argument("radius_oracle: N < 1");
  TaylorMatrixSeq seq = taylor_matrix_seq(G, N);
  QLog dval = gauss_val_poly(seq.den, x, p);
  if (dval.is_neg_inf()) throw std::domain_error("radius_oracle: pole at the point");
  QLog best = QLog::pos_inf();
  for (int n = std::max(1, N / 2); n <= N; ++n) {
    QLog m = QLog::neg_inf();
    for (const auto& row : seq.P[static_cast<std::size_t>(n)])
      for (const auto& e : row) m = qmax(m, gauss_val_poly(e, x, p));
    if (m.is_neg_inf()) continue;  // G_n = 0: no constraint from this n
    QLog w = m - dval.scaled(rat(n)) - val_factorial(static_cast<unsigned long>(n), p);
    best = qmin(best, (-w).scaled(rat(1, n)));
  }
  return best;
}

namespace {

// delta(a) = a' + a G, the row transform whose iterates express the
// derivatives of y = a . v on horizontal sections v' = G v.
std::vector<RF> row_delta(const std::vector<RF>& a, const ConnectionMatrix& G) {
  std::size_t r = a.size();
  std::vector<RF> out(r);
  for (std::size_t j = 0; j < r; ++j) {
    RF acc = a[j].derivative();
    for (std::size_t k = 0; k < r; ++k)
      acc = acc + a[k] * G.entries[k][j];
    out[j] = acc;
  }
  return out;
}

// Solve x M = b over Q(T); returns nullopt when M is singular.
std::optional<std::vector<RF>> solve_row_system(std::vector<std::vector<RF>> M,
                                                std::vector<RF> b) {
  std::size_t n = b.size();
  // transpose: M^T y = b^T
  std::vector<std::vector<RF>> A(n, std::vector<RF>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A[i][j] = M[j][i];
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && A[piv][col].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || A[i][col].is_zero()) continue;
      RF f = A[i][col] / A[col][col];
      for (std::size_t j = col; j < n; ++j) A[i][j] = A[i][j] - f * A[col][j];
      b[i] = b[i] - f * b[col];
    }
  }
  std::vector<RF> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
  return x;
}

std::vector<RF> candidate_row(int attempt, int r) {
  std::vector<RF> a(static_cast<std::size_t>(r), RF());
  if (attempt < r) {
    a[static_cast<std::size_t>(attempt)] = RF(rat(1));
    return a;
  }
  int t = attempt - r;
  if (t < 4) {
    // (1, T^k, T^{2k}, ...)
    long k = t + 1;
    for (int j = 0; j < r; ++j)
      a[static_cast<std::size_t>(j)] =
          RF::from_poly(Poly::monomial(rat(1), static_cast<std::size_t>(k * j)));
    return a;
  }
  long c = (t - 4) + 2;
  Rat pw(1);
  for (int j = 0; j < r; ++j) {
    a[static_cast<std::size_t>(j)] = RF(pw);
    pw *= rat(c);
  }
  return a;
}

}  // namespace

std::optional<CyclicResult> cyclic_operator(const ConnectionMatrix& G, int max_attempts) {
  G.validate();
  int r = G.rank;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<RF> a = candidate_row(attempt, r);
    std::vector<std::vector<RF>> H;
    H.push_back(a);
    for (int k = 1; k < r; ++k) H.push_back(row_delta(H.back(), G));
    std::vector<RF> top = row_delta(H.back(), G);  // delta^r a
    auto c = solve_row_system(H, top);
    if (!c) continue;
    // residual check: delta^r a == sum c_k delta^k a
    for (std::size_t j = 0; j < static_cast<std::size_t>(r); ++j) {
      RF acc = top[j];
      for (std::size_t k = 0; k < static_cast<std::size_t>(r); ++k)
        acc = acc - (*c)[k] * H[k][j];
      if (!acc.is_zero()) throw std::logic_error("cyclic_operator: nonzero residual");
    }
    CyclicResult out;
    out.op.rank = r;
    out.op.coeffs.assign(static_cast<std::size_t>(r), RF());
    // L = d^r - c_{r-1} d^{r-1} - ... - c_0, so g_{r-k} = -c_k
    for (int k = 0; k < r; ++k)
      out.op.coeffs[static_cast<std::size_t>(r - 1 - k)] = -(*c)[static_cast<std::size_t>(k)];
    out.base_change = std::move(H);
    return out;
  }
  return std::nullopt;
}

std::vector<QLog> direct_sum_radii(const std::vector<QLog>& a, const std::vector<QLog>& b) {
  std::vector<QLog> out;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out),
             [](const QLog& x, const QLog& y) { return x < y; });
  return out;
}

}  // namespace padic
