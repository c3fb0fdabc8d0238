#ifndef PADIC_QLOG_HPP
#define PADIC_QLOG_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace padic {

using Rat = mpq_class;

// Canonicalized rational from a (num, den) pair.
Rat rat(long num, long den = 1);
// Parse "a/b" or "a" (decimal-free). Throws std::invalid_argument on junk.
Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& q);

/// Extended exact rational on the base-p logarithmic scale.
///
/// Carrier for every norm, radius and slope in the library.  -inf is the
/// value of log|0| and of the radius of type-1 points; it absorbs under
/// addition and is minimal in the order.  +inf shows up only as the
/// polygon sentinel for identically-zero coefficients.
class QLog {
 public:
  QLog() : kind_(Kind::Finite), v_(0) {}
  QLog(const Rat& v) : kind_(Kind::Finite), v_(v) {}
  QLog(long v) : kind_(Kind::Finite), v_(v) {}

  static QLog neg_inf() { return QLog(Kind::NegInf); }
  static QLog pos_inf() { return QLog(Kind::PosInf); }

  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }

  /// Finite value; throws on a sentinel.
  const Rat& rat() const {
    if (!is_finite()) throw std::domain_error("QLog: sentinel has no rational value");
    return v_;
  }

  QLog operator-() const;
  QLog operator+(const QLog& o) const;
  QLog operator-(const QLog& o) const;
  QLog& operator+=(const QLog& o) { return *this = *this + o; }
  QLog& operator-=(const QLog& o) { return *this = *this - o; }

  /// Multiply by an exact rational scalar.  0 * (+-inf) is a domain error.
  QLog scaled(const Rat& c) const;

  bool operator==(const QLog& o) const;
  bool operator!=(const QLog& o) const { return !(*this == o); }
  bool operator<(const QLog& o) const;
  bool operator<=(const QLog& o) const { return *this < o || *this == o; }
  bool operator>(const QLog& o) const { return o < *this; }
  bool operator>=(const QLog& o) const { return o <= *this; }

  std::string str() const;
  static QLog from_string(const std::string& s);

  double approx() const;  // reporting only, never used in decisions

 private:
  enum class Kind { NegInf, Finite, PosInf };
  explicit QLog(Kind k) : kind_(k), v_(0) {}
  Kind kind_;
  Rat v_;
};

inline QLog qmin(const QLog& a, const QLog& b) { return a < b ? a : b; }
inline QLog qmax(const QLog& a, const QLog& b) { return a < b ? b : a; }

}  // namespace padic

#endif
