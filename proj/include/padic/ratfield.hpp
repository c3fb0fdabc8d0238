#ifndef PADIC_RATFIELD_HPP
#define PADIC_RATFIELD_HPP

#include "padic/poly.hpp"

namespace padic {

/// Element of Q(T): gcd-reduced numerator/denominator, monic denominator.
class RF {
 public:
  RF() : num_(Poly::zero()), den_(Poly::one()) {}
  RF(Poly num, Poly den);
  explicit RF(const Rat& c) : num_(Poly(c)), den_(Poly::one()) {}
  static RF from_poly(Poly f) { return RF(std::move(f), Poly::one()); }
  static RF variable() { return from_poly(Poly::variable()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RF operator+(const RF& o) const { return RF(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
  RF operator-(const RF& o) const { return RF(num_ * o.den_ - o.num_ * den_, den_ * o.den_); }
  RF operator*(const RF& o) const { return RF(num_ * o.num_, den_ * o.den_); }
  RF operator/(const RF& o) const {
    if (o.is_zero()) throw std::domain_error("RF: division by zero");
    return RF(num_ * o.den_, den_ * o.num_);
  }
  RF operator-() const { return RF(-num_, den_); }
  bool operator==(const RF& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RF& o) const { return !(*this == o); }

  RF derivative() const {
    return RF(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }
  RF shifted(const Rat& c) const { return RF(num_.taylor_shift(c), den_.taylor_shift(c)); }

 private:
  Poly num_, den_;
};

}  // namespace padic

#endif
