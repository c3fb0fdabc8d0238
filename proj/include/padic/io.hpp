#ifndef PADIC_IO_HPP
#define PADIC_IO_HPP

#include <json.hpp>

#include <string>

#include "padic/engine.hpp"

namespace padic {

using json = nlohmann::ordered_json;

/// Reproducibility record embedded in every output file.  The digest
/// covers tool version, inputs and flags, so identical runs are
/// byte-identical (wall time is reported on stderr only).
struct RunManifest {
  std::string version;
  unsigned long p = 0;
  int oracle_depth = 150;
  int max_frobenius = 6;
  std::vector<std::pair<std::string, std::string>> input_digests;  // (path, digest)
  std::string seed_note;  // PADIC_POLYGON_SEED is recorded but ignored

  std::string digest() const;
  json to_json() const;
};

std::string tool_version();
/// FNV-1a over the bytes, hex-encoded.
std::string fnv1a_hex(const std::string& bytes);

// -- parsing (schemas documented in README) --------------------------------
Rat parse_rat(const json& j, const std::string& field);
QLog parse_qlog(const json& j, const std::string& field);
FactoredRatFun parse_factored(const json& j);
DifferentialOperator parse_operator(const json& j);
ConnectionMatrix parse_matrix(const json& j);
AffinoidDomain parse_domain(const json& j, const Prime& p);
Poly parse_poly_string(const std::string& s);

// -- emission ---------------------------------------------------------------
json factored_to_json(const FactoredRatFun& f);
json operator_to_json(const DifferentialOperator& op);
json domain_to_json(const AffinoidDomain& X);
json polygon_to_json(const NewtonPolygon& np);
json paf_to_json(const Paf& f);
json point_to_json(const Point& x);
json profile_to_json(const RadiiProfile& prof, const RunManifest& m);
json descent_to_json(const DescentReport& rep);
json audit_to_json(const AuditReport& rep, const RunManifest& m);
json criterion_to_json(const CriterionReport& rep, const RunManifest& m);

/// Deterministic DOT rendering of a controlling graph: vertices labelled
/// x_{c,L}, edges labelled with the slope lists of the radius profiles.
std::string graph_to_dot(const RadiiProfile& prof, const ControllingGraph& cg, int index);

/// CSV rows (L, value, slope_right) at every breakpoint, per edge and index.
std::string profile_to_csv(const RadiiProfile& prof, bool approx_column = false);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

}  // namespace padic

#endif
