#include "padic/qlog.hpp"

namespace padic {

Rat rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rat_from_string: empty string");
  Rat q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("rat_from_string: bad rational '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("rat_from_string: zero denominator");
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

QLog QLog::operator-() const {
  switch (kind_) {
    case Kind::NegInf: return pos_inf();
    case Kind::PosInf: return neg_inf();
    default: return QLog(Rat(-v_));
  }
}

QLog QLog::operator+(const QLog& o) const {
  if (is_finite() && o.is_finite()) return QLog(Rat(v_ + o.v_));
  if ((is_neg_inf() && o.is_pos_inf()) || (is_pos_inf() && o.is_neg_inf()))
    throw std::domain_error("QLog: -inf + +inf");
  if (is_neg_inf() || o.is_neg_inf()) return neg_inf();
  return pos_inf();
}

QLog QLog::operator-(const QLog& o) const { return *this + (-o); }

QLog QLog::scaled(const Rat& c) const {
  if (is_finite()) return QLog(Rat(v_ * c));
  int s = sgn(c);
  if (s == 0) throw std::domain_error("QLog: 0 * inf");
  if (s > 0) return *this;
  return is_neg_inf() ? pos_inf() : neg_inf();
}

bool QLog::operator==(const QLog& o) const {
  if (kind_ != o.kind_) return false;
  return !is_finite() || v_ == o.v_;
}

bool QLog::operator<(const QLog& o) const {
  if (is_neg_inf()) return !o.is_neg_inf();
  if (is_pos_inf()) return false;
  if (o.is_neg_inf()) return false;
  if (o.is_pos_inf()) return true;
  return v_ < o.v_;
}

std::string QLog::str() const {
  if (is_neg_inf()) return "-inf";
  if (is_pos_inf()) return "+inf";
  return rat_to_string(v_);
}

QLog QLog::from_string(const std::string& s) {
  if (s == "-inf") return neg_inf();
  if (s == "+inf" || s == "inf") return pos_inf();
  return QLog(rat_from_string(s));
}

double QLog::approx() const {
  if (is_neg_inf()) return -1.0 / 0.0;
  if (is_pos_inf()) return 1.0 / 0.0;
  return v_.get_d();
}

}  // namespace padic
