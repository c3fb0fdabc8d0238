#include "padic/ratfun.hpp"

#include <algorithm>
#include <map>

namespace padic {

void FactoredRatFun::validate() const {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].second == 0) throw std::invalid_argument("FactoredRatFun: zero multiplicity");
    for (std::size_t j = 0; j < i; ++j)
      if (factors[i].first == factors[j].first)
        throw std::invalid_argument("FactoredRatFun: repeated root");
  }
  if (is_zero() && !factors.empty())
    throw std::invalid_argument("FactoredRatFun: zero function with factors");
}

namespace {

Poly linear_power(const Rat& z, long m) {
  Poly lin(std::vector<Rat>{Rat(-z), rat(1)});
  Poly acc = Poly::one();
  for (long k = 0; k < m; ++k) acc = acc * lin;
  return acc;
}

}  // namespace

Poly FactoredRatFun::numerator() const {
  if (is_zero()) return Poly::zero();
  Poly acc(constant);
  for (const auto& [z, m] : factors)
    if (m > 0) acc = acc * linear_power(z, m);
  return acc;
}

Poly FactoredRatFun::denominator() const {
  Poly acc = Poly::one();
  for (const auto& [z, m] : factors)
    if (m < 0) acc = acc * linear_power(z, -m);
  return acc;
}

FactoredRatFun FactoredRatFun::operator*(const FactoredRatFun& o) const {
  if (is_zero() || o.is_zero()) return zero();
  std::map<Rat, long> mult;
  for (const auto& [z, m] : factors) mult[z] += m;
  for (const auto& [z, m] : o.factors) mult[z] += m;
  FactoredRatFun out;
  out.constant = constant * o.constant;
  for (const auto& [z, m] : mult)
    if (m != 0) out.factors.emplace_back(z, m);
  return out;
}

FactoredRatFun FactoredRatFun::shifted(const Rat& c) const {
  FactoredRatFun out = *this;
  for (auto& [z, m] : out.factors) z -= c;
  return out;
}

QLog gauss_val_poly(const Poly& f, const Point& x, const Prime& p) {
  if (f.is_zero()) return QLog::neg_inf();
  Poly a = f.taylor_shift(x.center);
  QLog best = QLog::neg_inf();
  const auto& cs = a.coeffs();
  for (std::size_t n = 0; n < cs.size(); ++n) {
    if (cs[n] == 0) continue;
    QLog term = val_rational(cs[n], p);
    if (n > 0) term = term + x.log_radius.scaled(rat(static_cast<long>(n)));
    best = qmax(best, term);
  }
  return best;
}

QLog gauss_val(const FactoredRatFun& f, const Point& x, const Prime& p) {
  if (f.is_zero()) return QLog::neg_inf();
  QLog acc = val_rational(f.constant, p);
  for (const auto& [z, m] : f.factors) {
    QLog d = (x.center == z) ? x.log_radius : val_rational(x.center - z, p);
    QLog b = qmax(d, x.log_radius);
    // type-1 point on a root/pole: signal with the sign of m
    if (b.is_neg_inf()) return m > 0 ? QLog::neg_inf() : QLog::pos_inf();
    acc = acc + b.scaled(rat(m));
  }
  return acc;
}

Paf gauss_profile(const FactoredRatFun& f, const Rat& c, const QLog& lo, const QLog& hi,
                  const Prime& p) {
  if (f.is_zero()) throw std::domain_error("gauss_profile: zero function");
  if (lo == hi) return Paf::constant(lo, hi, gauss_val(f, Point(c, lo), p).rat());
  // breakpoints at log|c - z_j| inside (lo, hi); slope on a piece is the
  // multiplicity count of the roots below it
  std::vector<std::pair<QLog, long>> dists;  // (log distance, multiplicity)
  for (const auto& [z, m] : f.factors)
    dists.emplace_back(c == z ? QLog::neg_inf() : val_rational(c - z, p), m);
  std::vector<Rat> knots;
  for (const auto& [d, m] : dists)
    if (d > lo && d < hi) knots.push_back(d.rat());
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  std::vector<Rat> slopes;
  for (std::size_t i = 0; i <= knots.size(); ++i) {
    QLog left = (i == 0) ? lo : QLog(knots[i - 1]);
    long s = 0;
    for (const auto& [d, m] : dists)
      if (d <= left) s += m;
    slopes.push_back(rat(s));
  }
  Rat vh = gauss_val(f, Point(c, hi), p).rat();
  return Paf::from_pieces(lo, hi, std::move(knots), std::move(slopes), vh);
}

Paf gauss_profile_poly(const Poly& f, const Rat& c, const QLog& lo, const QLog& hi,
                       const Prime& p) {
  if (f.is_zero()) throw std::domain_error("gauss_profile_poly: zero polynomial");
  Poly a = f.taylor_shift(c);
  const auto& cs = a.coeffs();
  Paf acc;
  bool first = true;
  for (std::size_t n = 0; n < cs.size(); ++n) {
    if (cs[n] == 0) continue;
    Paf line = Paf::affine(lo, hi,
                           (val_rational(cs[n], p) + hi.scaled(rat(static_cast<long>(n)))).rat(),
                           rat(static_cast<long>(n)));
    acc = first ? line : Paf::combine(acc, line, CombineOp::Max);
    first = false;
  }
  return acc;
}

}  // namespace padic
