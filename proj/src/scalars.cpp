#include "padic/scalars.hpp"

namespace padic {

Prime::Prime(unsigned long p) : p_(p), z_(static_cast<long>(p)) {
  if (p < 2 || mpz_probab_prime_p(z_.get_mpz_t(), 40) == 0)
    throw std::invalid_argument("Prime: " + std::to_string(p) + " is not prime");
}

namespace {

// v_p of a nonzero integer.
long int_valuation(const mpz_class& n, const mpz_class& p) {
  mpz_class m = abs(n), q, r;
  long v = 0;
  for (;;) {
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    if (r != 0) return v;
    ++v;
    m = q;
  }
}

}  // namespace

QLog val_rational(const Rat& q, const Prime& p) {
  if (q == 0) throw std::domain_error("val_rational: zero input");
  long v = int_valuation(q.get_num(), p.z()) - int_valuation(q.get_den(), p.z());
  return QLog(rat(-v));
}

QLog val_factorial(unsigned long n, const Prime& p) {
  // v_p(n!) = (n - digit_sum_p(n)) / (p - 1)
  mpz_class nn(static_cast<unsigned long>(n)), s = 0, m = nn, r;
  while (m != 0) {
    mpz_fdiv_qr(m.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p.z().get_mpz_t());
    s += r;
  }
  mpz_class num = -(nn - s);
  Rat q(num, p.z() - 1);
  q.canonicalize();
  return QLog(q);
}

}  // namespace padic
