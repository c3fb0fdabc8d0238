#ifndef PADIC_SCALARS_HPP
#define PADIC_SCALARS_HPP

#include "padic/qlog.hpp"

namespace padic {

/// Residue characteristic.  Primality is checked at construction.
class Prime {
 public:
  explicit Prime(unsigned long p);
  unsigned long value() const { return p_; }
  const mpz_class& z() const { return z_; }
  /// log_p omega = -1/(p-1), with omega = |p|^{1/(p-1)} = lim |n!|^{1/n}.
  QLog omega_log() const { return QLog(rat(-1, static_cast<long>(p_) - 1)); }

 private:
  unsigned long p_;
  mpz_class z_;
};

/// log_p|q| = -v_p(q) for a nonzero rational.  Zero input is a domain error.
QLog val_rational(const Rat& q, const Prime& p);

/// log_p|n!| = -v_p(n!), by Legendre's digit formula.
QLog val_factorial(unsigned long n, const Prime& p);

}  // namespace padic

#endif
