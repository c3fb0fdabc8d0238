#ifndef PADIC_SPECTRAL_HPP
#define PADIC_SPECTRAL_HPP

#include <optional>

#include "padic/polygon.hpp"
#include "padic/ratfield.hpp"
#include "padic/ratfun.hpp"

namespace padic {

/// L = sum_{i=0}^r g_{r-i} (d/dT)^i with g_0 = 1; coefficients in
/// factored form so the candidate skeleton is exactly computable.
struct DifferentialOperator {
  int rank = 1;
  std::vector<FactoredRatFun> coeffs;  // g_1..g_r

  void validate() const;
  DifferentialOperator shifted(const Rat& c) const;
};

/// Same operator shape with general rational-function coefficients, as
/// produced by the cyclic-vector reduction.  Valid for point and
/// center-0 profile evaluations.
struct RationalOperator {
  int rank = 1;
  std::vector<RF> coeffs;  // g_1..g_r
};

/// Matrix G of a connection d/dT - G: solutions satisfy Y' = G Y.
struct ConnectionMatrix {
  int rank = 1;
  std::vector<std::vector<RF>> entries;

  void validate() const;
};

/// Companion matrix whose horizontal sections are the solution vectors
/// (y, y', ..., y^{(r-1)}) of the operator.
ConnectionMatrix companion_matrix(const DifferentialOperator& op);

struct SpectralRadii {
  Point at;
  std::vector<QLog> values;     // nondecreasing
  std::vector<bool> certified;  // Young-certified vs truncated
};

/// Operator spectral polygon at a point: NP of v_i = -log|g_i(x)| - i/(p-1).
NewtonPolygon spectral_polygon_at(const DifferentialOperator& op, const Point& x, const Prime& p);
NewtonPolygon spectral_polygon_at(const RationalOperator& op, const Point& x, const Prime& p);

/// Young's small-radius theorem: slopes strictly below omega * r(x) are
/// exact spectral radii; the rest are truncated at r(x).
SpectralRadii small_radius_certify(const NewtonPolygon& np, const Point& x, const Prime& p);

/// Lower-hull partial heights of a family of value profiles (V_0 = 0
/// implicit entry must be supplied); nullopt = identically +inf.
std::vector<std::optional<Paf>> hull_height_profiles(const std::vector<std::optional<Paf>>& V);

/// Partial heights h_1..h_r of the operator polygon along the segment
/// {x_{c,L} : L in [lo, hi]}, untruncated; nullopt = identically +inf
/// (identically-zero trailing coefficients).
std::vector<std::optional<Paf>> spectral_profile_along(const DifferentialOperator& op, const Rat& c,
                                                       const QLog& lo, const QLog& hi,
                                                       const Prime& p);
std::vector<std::optional<Paf>> spectral_profile_along(const RationalOperator& op, const Rat& c,
                                                       const QLog& lo, const QLog& hi,
                                                       const Prime& p);

/// G_0 = Id, G_{n+1} = G_n G + G_n', held as G_n = P[n] / d^n.
struct TaylorMatrixSeq {
  std::vector<std::vector<std::vector<Poly>>> P;
  Poly den;
};
TaylorMatrixSeq taylor_matrix_seq(const ConnectionMatrix& G, int N);

/// Tail-minimum estimate of log R^Y(x) = log liminf |G_n/n!|(x)^{-1/n}
/// over n in [N/2, N].  +inf when the connection is eventually zero.
QLog radius_oracle(const ConnectionMatrix& G, const Point& x, int N, const Prime& p);

/// Cyclic-vector reduction: an operator annihilating y = a . v for every
/// horizontal v, plus the base change H (rows a, Da, ..., D^{r-1}a).
struct CyclicResult {
  RationalOperator op;
  std::vector<std::vector<RF>> base_change;
};
std::optional<CyclicResult> cyclic_operator(const ConnectionMatrix& G, int max_attempts = 32);

/// Multiset union (merge of sorted lists).
std::vector<QLog> direct_sum_radii(const std::vector<QLog>& a, const std::vector<QLog>& b);

}  // namespace padic

#endif
