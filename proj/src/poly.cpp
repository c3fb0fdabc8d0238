#include "padic/poly.hpp"

#include <algorithm>

namespace padic {

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::monomial(const Rat& c, std::size_t k) {
  std::vector<Rat> v(k + 1, rat(0));
  v[k] = c;
  return Poly(std::move(v));
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rat> v(std::max(coeffs_.size(), o.coeffs_.size()), rat(0));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
  return Poly(std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + (o * rat(-1)); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<Rat> v(coeffs_.size() + o.coeffs_.size() - 1, rat(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
  return Poly(std::move(v));
}

Poly Poly::operator*(const Rat& c) const {
  std::vector<Rat> v = coeffs_;
  for (auto& x : v) x *= c;
  return Poly(std::move(v));
}

Rat Poly::eval(const Rat& t) const {
  Rat acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return Poly();
  std::vector<Rat> v(coeffs_.size() - 1, rat(0));
  for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * rat(static_cast<long>(i));
  return Poly(std::move(v));
}

Poly Poly::taylor_shift(const Rat& c) const {
  // Repeated synthetic division by (T - c); remainders are the a_n with
  // f(T) = sum a_n (T-c)^n.
  if (is_zero()) return Poly();
  std::vector<Rat> work = coeffs_;
  std::vector<Rat> out;
  out.reserve(coeffs_.size());
  while (!work.empty()) {
    if (work.size() == 1) {
      out.push_back(work[0]);
      break;
    }
    std::vector<Rat> q(work.size() - 1, rat(0));
    q[work.size() - 2] = work.back();
    for (std::size_t i = work.size() - 2; i >= 1; --i) q[i - 1] = work[i] + c * q[i];
    out.push_back(work[0] + c * q[0]);
    work = std::move(q);
  }
  return Poly(std::move(out));
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw std::domain_error("Poly::divmod: division by zero");
  std::vector<Rat> rem = a.coeffs_;
  long db = b.degree();
  Rat lead = b.coeffs_.back();
  std::vector<Rat> quo;
  if (a.degree() >= db) quo.assign(a.degree() - db + 1, rat(0));
  while (static_cast<long>(rem.size()) - 1 >= db && !rem.empty()) {
    long dr = static_cast<long>(rem.size()) - 1;
    Rat f = rem.back() / lead;
    quo[dr - db] = f;
    for (long i = 0; i <= db; ++i) rem[dr - db + i] -= f * b.coeffs_[i];
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
  }
  q = Poly(std::move(quo));
  r = Poly(std::move(rem));
}

Poly Poly::divexact(const Poly& b) const {
  Poly q, r;
  divmod(*this, b, q, r);
  if (!r.is_zero()) throw std::domain_error("Poly::divexact: remainder nonzero");
  return q;
}

Poly Poly::gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b, q, r;
  while (!y.is_zero()) {
    divmod(x, y, q, r);
    x = y;
    y = r;
  }
  if (x.is_zero()) return x;
  return x * (rat(1) / x.coeffs().back());  // monic
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Rat& c = coeffs_[i];
    if (c == 0) continue;
    Rat a = abs(c);
    std::string term;
    if (i == 0) {
      term = rat_to_string(a);
    } else {
      term = (a == 1) ? "" : rat_to_string(a) + "*";
      term += var;
      if (i > 1) term += "^" + std::to_string(i);
    }
    if (out.empty())
      out = (sgn(c) < 0 ? "-" : "") + term;
    else
      out += (sgn(c) < 0 ? " - " : " + ") + term;
  }
  return out;
}

}  // namespace padic
