#include "padic/ratfield.hpp"

namespace padic {

RF::RF(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("RF: zero denominator");
  if (num_.is_zero()) {
    den_ = Poly::one();
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_.divexact(g);
    den_ = den_.divexact(g);
  }
  Rat lead = den_.coeffs().back();
  if (lead != 1) {
    Rat inv = rat(1) / lead;
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

}  // namespace padic
