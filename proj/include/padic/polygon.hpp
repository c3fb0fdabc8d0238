#ifndef PADIC_POLYGON_HPP
#define PADIC_POLYGON_HPP

#include <vector>

#include "padic/qlog.hpp"

namespace padic {

/// Lower Newton polygon of rank r: partial heights h_0..h_r with h_0 = 0
/// and convex (nondecreasing) slope sequence.  +inf heights appear past
/// the last finite support point.
struct NewtonPolygon {
  std::vector<QLog> heights;

  int rank() const { return static_cast<int>(heights.size()) - 1; }
  void check() const;
};

/// Lower convex hull of the half-lines {x = i, y >= v_i}; v_0 must be 0.
NewtonPolygon np_from_values(const std::vector<QLog>& v);

/// s_i = h_i - h_{i-1}, i = 1..r; +inf when either height is infinite.
std::vector<QLog> np_slopes(const NewtonPolygon& np);

/// Indices i with s_i < s_{i+1}, plus i = r.
std::vector<int> np_vertices(const NewtonPolygon& np);

/// s'_i = min(s_i, C).
std::vector<QLog> truncate_slopes(const std::vector<QLog>& s, const QLog& C);

}  // namespace padic

#endif
