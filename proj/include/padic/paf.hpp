#ifndef PADIC_PAF_HPP
#define PADIC_PAF_HPP

#include <functional>
#include <utility>
#include <vector>

#include "padic/line.hpp"

namespace padic {

enum class Side { Left, Right };
enum class CombineOp { Add, Min, Max };

/// Continuous piecewise-affine function of the log-radius on a segment
/// [lo, hi].  lo may be -inf, in which case the leftmost piece has slope
/// zero and stores the eventual constant value; hi is finite.  Pieces are
/// maximal (adjacent slopes distinct) and breakpoints strictly interior.
class Paf {
 public:
  Paf() : lo_(0), hi_(0), value_hi_(0) {}

  static Paf constant(QLog lo, QLog hi, Rat value);
  /// Affine with the given slope, anchored at its right end.
  static Paf affine(QLog lo, QLog hi, Rat value_hi, Rat slope);
  /// L |-> L on a finite interval.
  static Paf diagonal(QLog lo, QLog hi);
  /// General builder; merges redundant breakpoints, checks continuity
  /// invariants.  knots/slopes sized k and k+1.
  static Paf from_pieces(QLog lo, QLog hi, std::vector<Rat> knots, std::vector<Rat> slopes,
                         Rat value_hi);

  const QLog& lo() const { return lo_; }
  const QLog& hi() const { return hi_; }
  bool degenerate() const { return lo_ == hi_; }
  const std::vector<Rat>& knots() const { return knots_; }
  const std::vector<Rat>& slopes() const { return slopes_; }
  const Rat& value_hi() const { return value_hi_; }

  QLog eval(const QLog& L) const;
  /// One-sided slope; throws when the requested side leaves the domain.
  Rat slope_at(const QLog& L, Side side) const;

  static Paf combine(const Paf& f, const Paf& g, CombineOp op);
  Paf operator+(const Paf& o) const { return combine(*this, o, CombineOp::Add); }
  Paf operator-(const Paf& o) const { return combine(*this, o.scaled(rat(-1)), CombineOp::Add); }

  Paf scaled(const Rat& c) const;
  Paf plus_const(const Rat& c) const;
  Paf restrict(const QLog& l, const QLog& r) const;

  /// Slopes nonincreasing left to right on [l, r].
  bool is_concave(const QLog& l, const QLog& r) const;
  bool is_concave() const { return is_concave(lo_, hi_); }

  /// sup { L : f == id on [lo, L] } when f(lo) = lo, else lo.
  /// Precondition: f(lo) >= lo.
  QLog diagonal_crossing() const;

  /// Positions (with one-sided slopes) where convexity fails, i.e. the
  /// slope increases across the breakpoint.
  struct Kink {
    Rat pos, slope_below, slope_above;
  };
  std::vector<Kink> convex_kinks() const;

  /// Rows (L, value, slope_right) at both endpoints and every interior
  /// breakpoint; slope_right at hi repeats the last slope.
  struct Row {
    QLog pos;
    Rat value, slope_right;
  };
  std::vector<Row> rows() const;

  bool operator==(const Paf& o) const;

 private:
  QLog lo_, hi_;
  std::vector<Rat> knots_;   // strictly increasing, in (lo, hi)
  std::vector<Rat> slopes_;  // one per piece; empty iff degenerate
  Rat value_hi_;
  void normalize();
  Rat value_at_boundary(std::size_t piece_end) const;  // value at right end of piece
};

/// Finitely many nonzero outward log-slopes at a point, one per germ of
/// segment; unlisted directions have slope zero.
struct BranchSlopes {
  Point at;
  std::vector<std::pair<DirectionId, Rat>> entries;

  void set(const DirectionId& d, const Rat& slope, const Prime& p);
  Rat get(const DirectionId& d, const Prime& p) const;
  /// dd^c F = sum of outward slopes (all multiplicities are 1 here).
  Rat laplacian() const;
};

}  // namespace padic

#endif
