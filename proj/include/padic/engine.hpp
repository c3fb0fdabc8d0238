#ifndef PADIC_ENGINE_HPP
#define PADIC_ENGINE_HPP

#include <string>

#include "padic/frobenius.hpp"

namespace padic {

enum class SolvClass { Spectral, Solvable, OverSolvable };

/// Certification state of a profile stretch: Exact values (Young or
/// descended), Solvable (pinned at the bound, value = r(x) there), or
/// Window (descent exhausted; values are upper bounds).
enum class StretchStatus { Exact, Solvable, Window };

struct StatusStretch {
  QLog lo, hi;
  StretchStatus status;
};

struct EdgeProfile {
  std::vector<Paf> spectral;  // log R_i^sp along the edge, i = 1..r
  std::vector<Paf> conv;      // log R_i^F
  std::vector<Paf> height;    // log H_i^F = sum of the first i conv entries
  std::vector<std::vector<StatusStretch>> status;  // per index
};

struct VertexData {
  std::vector<QLog> radii;  // R_i^F at the vertex, nondecreasing
  std::vector<SolvClass> classes;
  bool flagged = false;  // some index undetermined here
};

struct RadiiProfile {
  DifferentialOperator op;
  AffinoidDomain domain;
  unsigned long prime = 2;
  int rank = 1;
  int max_frobenius = 6;
  SkeletonGraph graph;
  std::vector<EdgeProfile> edges;  // parallel to graph.edges
  std::vector<VertexData> verts;   // parallel to graph.verts
  std::vector<QLog> edge_caps;     // rho_{y,X} along each edge's interior
};

/// Controlling graph of one radius index: the profile graph with
/// constant off-skeleton tails removed.  A kept off-skeleton edge may be
/// cut at an interior level (cut_level > lo).
struct ControllingGraph {
  const SkeletonGraph* base = nullptr;
  std::vector<bool> keep;       // per edge
  std::vector<QLog> cut_level;  // per edge; == edge.lo when kept whole
  std::vector<Point> end_points;        // boundary points off Gamma_X
  std::vector<bool> end_solvable;       // KEY-lemma endpoints
  int bifurcation_count(const Prime& p) const;
};

/// Generic single-function profile on a graph, used for the finiteness
/// criterion self-tests (e.g. the retraction rho_Gamma).
struct FunctionProfile {
  SkeletonGraph graph;
  std::vector<Paf> fn;            // one PAF per edge
  std::vector<bool> gamma_edge;   // the designated admissible graph Gamma
  int rank = 1;
  int max_frobenius = 6;
};

struct CriterionReport {
  bool c1 = true, c2 = true, c3 = true, c4 = true, c5 = true, c6 = true;
  Rat nu = Rat(0);  // minimal observed nonzero slope magnitude
  int max_breaks_per_segment = 0;
  int max_directions = 0;
  std::vector<std::string> violations;
  bool pass() const { return c1 && c2 && c3 && c4 && c5 && c6; }
};

struct AuditReport {
  bool integrality = true;        // slopes of H_i integer at polygon vertices
  bool denominators = true;       // all H_i slope denominators <= r
  bool concavity = true;          // clauses iii.a / iii.b / iii.c
  bool superharmonic = true;      // dd^c H_i <= 0 off S_X u C_i, bound at S_X
  bool r1_superharmonic = true;   // dd^c R_1^F <= 0 off the boundary
  bool harmonic_vertices = true;  // equality clause at solvability-free vertices
  std::vector<std::string> violations;
  std::vector<Point> exceptional;  // the sets C_i actually used (union)
  int flagged_stretches = 0;       // Window stretches skipped, reported
  bool pass() const {
    return integrality && denominators && concavity && superharmonic && r1_superharmonic &&
           harmonic_vertices;
  }
};

/// R_i^F(x) from the certified spectral profile along Lambda(x):
/// the spectral value when it sits below the diagonal at r(x), else the
/// over-solvable plateau min(diagonal crossing, rho_{x,X}).
QLog convergence_from_spectral(const Paf& spec, const Point& x, const AffinoidDomain& X,
                               const Prime& p);

/// Full pipeline: candidate graph, certified spectral profiles along
/// every edge, convergence radii by top-down propagation, heights.
RadiiProfile build_profile(const DifferentialOperator& op, const AffinoidDomain& X, const Prime& p,
                           int max_frobenius = 6);

ControllingGraph prune_to_controlling_graph(const RadiiProfile& prof, int index);

/// Controlling graph of the partial height H_index (the functions the
/// finiteness machinery is stated for).
ControllingGraph prune_heights(const RadiiProfile& prof, int index);

/// N <= max(0, floor(slope/nu) - 1).
long branch_bound(const Rat& slope, const Rat& nu);

CriterionReport check_criterion(const FunctionProfile& f, const std::vector<Point>& C,
                                const Prime& p);
CriterionReport check_criterion(const RadiiProfile& prof, int index, const std::vector<Point>& C);

AuditReport audit_main_theorem(const RadiiProfile& prof);

SolvClass solvability_classify(const RadiiProfile& prof, int vertex, int index);

/// Controlling graph of a single-function profile (prune constant
/// off-Gamma tails).
ControllingGraph prune_function_profile(const FunctionProfile& f, const Prime& p);

}  // namespace padic

#endif
