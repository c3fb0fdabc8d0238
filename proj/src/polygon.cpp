#include "padic/polygon.hpp"

#include <stdexcept>

namespace padic {

void NewtonPolygon::check() const {
  if (heights.empty() || rank() < 1) throw std::invalid_argument("NewtonPolygon: rank < 1");
  if (!(heights[0] == QLog(0))) throw std::invalid_argument("NewtonPolygon: h_0 != 0");
  // convexity with +inf tail
  for (int i = 1; i + 1 <= rank(); ++i) {
    const QLog &a = heights[i - 1], &b = heights[i], &c = heights[i + 1];
    if (b.is_pos_inf() && !c.is_pos_inf())
      throw std::invalid_argument("NewtonPolygon: finite height after +inf");
    if (a.is_pos_inf() || b.is_pos_inf() || c.is_pos_inf()) continue;
    if ((b - a) > (c - b)) throw std::invalid_argument("NewtonPolygon: slopes not nondecreasing");
  }
}

NewtonPolygon np_from_values(const std::vector<QLog>& v) {
  if (v.size() < 2) throw std::invalid_argument("np_from_values: need v_0..v_r with r >= 1");
  if (!(v[0] == QLog(0))) throw std::invalid_argument("np_from_values: v_0 != 0");
  for (const auto& x : v)
    if (x.is_neg_inf()) throw std::invalid_argument("np_from_values: -inf entry");

  // lower hull over the finite support, Andrew scan with exact arithmetic
  struct Pt {
    long x;
    Rat y;
  };
  std::vector<Pt> pts;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i].is_finite()) pts.push_back(Pt{static_cast<long>(i), v[i].rat()});
  std::vector<Pt> hull;
  for (const auto& q : pts) {
    while (hull.size() >= 2) {
      const Pt &a = hull[hull.size() - 2], &b = hull.back();
      // pop b unless it lies strictly below segment a-q
      Rat lhs = (b.y - a.y) * Rat(q.x - a.x);
      Rat rhs = (q.y - a.y) * Rat(b.x - a.x);
      if (lhs < rhs) break;
      hull.pop_back();
    }
    hull.push_back(q);
  }

  NewtonPolygon np;
  np.heights.assign(v.size(), QLog::pos_inf());
  long last = hull.back().x;
  std::size_t seg = 0;
  for (long i = 0; i <= last; ++i) {
    while (seg + 1 < hull.size() && hull[seg + 1].x < i) ++seg;
    if (hull[seg].x == i) {
      np.heights[static_cast<std::size_t>(i)] = QLog(hull[seg].y);
      continue;
    }
    const Pt &a = hull[seg], &b = hull[seg + 1];
    Rat y = a.y + (b.y - a.y) * Rat(i - a.x) / Rat(b.x - a.x);
    np.heights[static_cast<std::size_t>(i)] = QLog(y);
  }
  np.check();
  return np;
}

std::vector<QLog> np_slopes(const NewtonPolygon& np) {
  std::vector<QLog> s;
  for (int i = 1; i <= np.rank(); ++i) {
    const QLog &a = np.heights[i - 1], &b = np.heights[i];
    s.push_back(a.is_pos_inf() || b.is_pos_inf() ? QLog::pos_inf() : b - a);
  }
  return s;
}

std::vector<int> np_vertices(const NewtonPolygon& np) {
  std::vector<QLog> s = np_slopes(np);
  std::vector<int> out;
  for (int i = 1; i <= np.rank(); ++i) {
    if (i == np.rank()) {
      out.push_back(i);
      break;
    }
    const QLog &a = s[i - 1], &b = s[i];
    bool lt = !a.is_pos_inf() && (b.is_pos_inf() || a < b);
    if (lt) out.push_back(i);
  }
  return out;
}

std::vector<QLog> truncate_slopes(const std::vector<QLog>& s, const QLog& C) {
  std::vector<QLog> out;
  for (const auto& x : s) out.push_back(qmin(x, C));
  return out;
}

}  // namespace padic
