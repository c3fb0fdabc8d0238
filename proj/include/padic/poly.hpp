#ifndef PADIC_POLY_HPP
#define PADIC_POLY_HPP

#include <string>
#include <vector>

#include "padic/qlog.hpp"

namespace padic {

/// Dense polynomial over the rationals, ascending degree, trimmed
/// (highest-degree coefficient nonzero unless the zero polynomial).
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Rat& c) { coeffs_.push_back(c); trim(); }
  explicit Poly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Poly zero() { return Poly(); }
  static Poly one() { return Poly(rat(1)); }
  static Poly variable() { return Poly(std::vector<Rat>{rat(0), rat(1)}); }
  /// c * T^k
  static Poly monomial(const Rat& c, std::size_t k);

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  Rat coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : rat(0); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rat& c) const;
  Poly operator-() const { return *this * rat(-1); }
  bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Rat eval(const Rat& t) const;
  Poly derivative() const;

  /// Coefficients of f in powers of (T - c).
  Poly taylor_shift(const Rat& c) const;
  /// f(T + c); inverse of taylor_shift's re-centering direction.
  Poly compose_shift(const Rat& c) const { return taylor_shift(c); }

  /// Quotient and remainder; divisor must be nonzero.
  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
  /// Exact division; throws if the remainder is nonzero.
  Poly divexact(const Poly& b) const;
  /// Monic gcd over Q.
  static Poly gcd(const Poly& a, const Poly& b);

  std::string str(const std::string& var = "T") const;

 private:
  void trim();
  std::vector<Rat> coeffs_;
};

}  // namespace padic

#endif
