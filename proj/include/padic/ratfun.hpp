#ifndef PADIC_RATFUN_HPP
#define PADIC_RATFUN_HPP

#include "padic/paf.hpp"
#include "padic/poly.hpp"

namespace padic {

/// Rational function in factored form: constant * prod_j (T - z_j)^{m_j}
/// with pairwise distinct rational roots and nonzero integer
/// multiplicities.  constant == 0 encodes the zero function.
struct FactoredRatFun {
  Rat constant = Rat(1);
  std::vector<std::pair<Rat, long>> factors;

  static FactoredRatFun zero() { return FactoredRatFun{Rat(0), {}}; }
  static FactoredRatFun from_constant(const Rat& c) { return FactoredRatFun{c, {}}; }

  bool is_zero() const { return constant == 0; }
  void validate() const;

  /// constant * prod_{m_j > 0} (T - z_j)^{m_j}
  Poly numerator() const;
  /// prod_{m_j < 0} (T - z_j)^{-m_j}
  Poly denominator() const;

  FactoredRatFun operator*(const FactoredRatFun& o) const;
  /// f(T + c): roots shift to z_j - c.
  FactoredRatFun shifted(const Rat& c) const;
};

/// Gauss valuation of a polynomial: max_n(log|a_n| + n L) for the Taylor
/// coefficients a_n at the center of x.  Returns -inf for f == 0.
QLog gauss_val_poly(const Poly& f, const Point& x, const Prime& p);

/// Multiplicative Gauss valuation of a factored rational function.  At a
/// type-1 point sitting on a root (resp. pole) the result is -inf
/// (resp. +inf).
QLog gauss_val(const FactoredRatFun& f, const Point& x, const Prime& p);

/// L |-> gauss_val(f, x_{c,L}) on [lo, hi], as an exact piecewise-affine
/// function with integer slopes and breakpoints at the log-distances
/// from c to the roots.  f must be nonzero.
Paf gauss_profile(const FactoredRatFun& f, const Rat& c, const QLog& lo, const QLog& hi,
                  const Prime& p);

/// Same profile for a dense polynomial along center c (exact: the upper
/// envelope of the affine functions log|a_n| + n L).  f must be nonzero.
Paf gauss_profile_poly(const Poly& f, const Rat& c, const QLog& lo, const QLog& hi,
                       const Prime& p);

}  // namespace padic

#endif
