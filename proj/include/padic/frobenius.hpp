#ifndef PADIC_FROBENIUS_HPP
#define PADIC_FROBENIUS_HPP

#include <map>

#include "padic/spectral.hpp"

namespace padic {

/// phi(sigma, rho) = max(rho^p, |p| sigma^{p-1} rho) on the log scale.
QLog phi_radius(const QLog& sigma_log, const QLog& L, const Prime& p);
/// psi(sigma, rho') = min(rho'^{1/p}, rho' / (|p| sigma^{p-1})).
QLog psi_radius(const QLog& sigma_log, const QLog& Lp, const Prime& p);
/// phi(x_{c,rho}) = x_{c^p, phi(|c|, rho)}.
Point phi_point(const Point& x, const Prime& p);
/// Cardinality of phi^{-1}(phi(x)): 1 iff rho >= omega |c|, else p.
int fiber_size(const Point& x, const Prime& p);

/// Working data at a point x for the push-forward index bookkeeping.
struct FrobContext {
  Prime p;
  QLog t_log;  // log|T|(x) = max(log|c|, L)
  int rank;    // rank of the module downstairs
  int i1;      // largest i with R_i^sp <= omega |t|; 0 when none
};

/// Largest i with values[i-1] <= omega_log + t_log.
int compute_i1(const std::vector<QLog>& values, const Prime& p, const QLog& t_log);

struct IndexMap {
  int phi_i;
  int d_i;
  QLog ell_val;  // log |l_{i,x}| = d_i (-1 + (p-1) t_log)
};
IndexMap index_map(int i, const FrobContext& ctx);

/// Spectral radii multiset of the push-forward, sorted (rank p*r).
SpectralRadii pushforward_radii(const SpectralRadii& s, const FrobContext& ctx);

/// log H_i(x) from log H_{phi(i,x)}(phi(x)): H_phi / p - log|l_{i,x}|.
QLog partial_height_descent(const QLog& H_phi, int i, const FrobContext& ctx);

/// Connection matrix with Laurent numerators over factored denominators
/// prod (T - z)^m, z != 0; closed under Frobenius push-forward.
struct FrobEntry {
  std::map<long, Rat> num;                   // exponent -> coefficient
  std::vector<std::pair<Rat, long>> den;     // (root != 0, multiplicity > 0)

  bool is_zero() const { return num.empty(); }
  void add_term(long e, const Rat& c);
  RF to_rf() const;
};

struct FrobMatrix {
  int rank = 1;
  std::vector<std::vector<FrobEntry>> entries;
};

/// Strict conversion: every denominator must be a monomial c T^k (or a
/// power of one linear factor, which arises from re-centering).
FrobMatrix frob_from_connection(const ConnectionMatrix& G);
FrobMatrix frob_from_operator(const DifferentialOperator& op);
ConnectionMatrix frob_to_connection(const FrobMatrix& M);

/// Push-forward along T -> T^p in the basis {T^k e_j}: the matrix M'
/// with horizontal sections W' = M' W upstairs of rank p*r.
FrobMatrix pushforward_frobmatrix(const FrobMatrix& M, const Prime& p);

/// Connected components of the coupling graph; a direct sum's radii are
/// the multiset union of the blocks'.
std::vector<std::vector<int>> frob_components(const FrobMatrix& M);
FrobMatrix frob_submatrix(const FrobMatrix& M, const std::vector<int>& idx);

/// Public form of the push-forward; requires Laurent entries.
ConnectionMatrix pushforward_matrix(const ConnectionMatrix& G, const Prime& p);

enum class RadiusStatus { Certified, Solvable, Undetermined };

struct DescentReport {
  Point at;
  std::vector<QLog> values;           // sorted, one per index
  std::vector<RadiusStatus> status;
  int iterations = 0;
  bool exhausted = false;
};

/// Certify all spectral radii at x by iterated Frobenius push-forward:
/// translate the center to 0, push until Young's theorem reads every
/// index off a cyclic operator polygon, then invert the height maps.
/// Indices pinned at the solvability bound throughout are reported
/// Solvable; exhaustion leaves Undetermined entries (upper bounds).
DescentReport descent_certify(const DifferentialOperator& op, const Point& x, const Prime& p,
                              int max_iter = 6);
DescentReport descent_certify(const ConnectionMatrix& G, const Point& x, const Prime& p,
                              int max_iter = 6);
DescentReport descent_certify_frob(const FrobMatrix& M0, const QLog& L, const Prime& p,
                                   int max_iter);

/// Rank cap for the descent loop (rank multiplies by p per iteration).
inline constexpr int kDescentRankCap = 64;
/// Ceiling on the rank the cyclic reduction is asked to handle; deeper
/// levels report exhaustion instead.
inline constexpr int kCyclicPracticalCap = 16;

}  // namespace padic

#endif
