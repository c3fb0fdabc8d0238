// padic-polygon: spectral and convergence Newton polygons of p-adic
// differential operators on affinoid domains, with controlling-graph
// construction and structural audits.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "padic/io.hpp"

using namespace padic;

namespace {

struct CommonArgs {
  std::string op_path, domain_path, matrix_path, out_path;
  unsigned long p = 2;
  int oracle_depth = 150;
  int max_frobenius = 6;
  int index = 1;
  std::string format = "json";
  std::string at;  // "c,L"
};

RunManifest make_manifest(const CommonArgs& a, const std::vector<std::string>& inputs) {
  RunManifest m;
  m.version = tool_version();
  m.p = a.p;
  m.oracle_depth = a.oracle_depth;
  m.max_frobenius = a.max_frobenius;
  for (const auto& path : inputs)
    m.input_digests.emplace_back(path, fnv1a_hex(read_file(path)));
  if (const char* seed = std::getenv("PADIC_POLYGON_SEED")) m.seed_note = seed;
  return m;
}

Point parse_at(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("--at expects \"center,log_radius\"");
  return Point(rat_from_string(s.substr(0, comma)),
               QLog::from_string(s.substr(comma + 1)));
}

void emit(const CommonArgs& a, const std::string& bytes) {
  if (a.out_path.empty())
    std::cout << bytes;
  else
    write_file(a.out_path, bytes);
}

json load_json(const std::string& path) {
  return json::parse(read_file(path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Newton polygons of p-adic differential operators"};
  app.require_subcommand(1);
  CommonArgs a;

  auto add_common = [&](CLI::App* sub, bool needs_domain) {
    sub->add_option("-p,--prime", a.p, "residue characteristic")->required();
    sub->add_option("-N,--oracle-depth", a.oracle_depth, "Taylor oracle depth (default 150)");
    sub->add_option("--max-frobenius", a.max_frobenius, "Frobenius descent depth (default 6)");
    sub->add_option("-o,--out", a.out_path, "output file (stdout when absent)");
    if (needs_domain)
      sub->add_option("-d,--domain", a.domain_path, "affinoid domain JSON")->required();
  };

  auto* cprof = app.add_subcommand("profile", "radius profiles over the candidate graph");
  add_common(cprof, true);
  cprof->add_option("-i,--operator", a.op_path, "operator JSON")->required();
  cprof->add_option("--format", a.format, "json or csv");

  auto* cgraph = app.add_subcommand("graph", "controlling graph as DOT");
  add_common(cgraph, true);
  cgraph->add_option("-i,--operator", a.op_path, "operator JSON")->required();
  cgraph->add_option("--index", a.index, "radius index (default 1)");

  auto* caudit = app.add_subcommand("audit", "main-theorem property audit");
  add_common(caudit, true);
  caudit->add_option("-i,--operator", a.op_path, "operator JSON")->required();

  auto* cpoly = app.add_subcommand("polygon", "operator spectral polygon at a point");
  add_common(cpoly, false);
  cpoly->add_option("-i,--operator", a.op_path, "operator JSON")->required();
  cpoly->add_option("--at", a.at, "point \"center,log_radius\"")->required();

  auto* coracle = app.add_subcommand("oracle", "Taylor-recursion radius estimate at a point");
  add_common(coracle, false);
  coracle->add_option("-i,--operator", a.op_path, "operator JSON");
  coracle->add_option("-m,--matrix", a.matrix_path, "connection matrix JSON");
  coracle->add_option("--at", a.at, "point \"center,log_radius\"")->required();

  auto* cfrob = app.add_subcommand("frobenius", "push-forward machinery");
  auto* fpush = cfrob->add_subcommand("push", "push a Laurent connection forward along T -> T^p");
  add_common(fpush, false);
  fpush->add_option("-m,--matrix", a.matrix_path, "connection matrix JSON")->required();
  auto* fradii = cfrob->add_subcommand("radii", "transform certified radii at a point");
  add_common(fradii, false);
  fradii->add_option("-i,--operator", a.op_path, "operator JSON")->required();
  fradii->add_option("--at", a.at, "point \"center,log_radius\"")->required();
  auto* fdesc = cfrob->add_subcommand("descend", "certify all radii at a point by descent");
  add_common(fdesc, false);
  fdesc->add_option("-i,--operator", a.op_path, "operator JSON");
  fdesc->add_option("-m,--matrix", a.matrix_path, "connection matrix JSON");
  fdesc->add_option("--at", a.at, "point \"center,log_radius\"")->required();

  CLI11_PARSE(app, argc, argv);

  auto t0 = std::chrono::steady_clock::now();
  int exit_code = 0;
  try {
    Prime p(a.p);

    if (cprof->parsed()) {
      RunManifest m = make_manifest(a, {a.op_path, a.domain_path});
      DifferentialOperator op = parse_operator(load_json(a.op_path));
      AffinoidDomain X = parse_domain(load_json(a.domain_path), p);
      RadiiProfile prof = build_profile(op, X, p, a.max_frobenius);
      if (a.format == "csv")
        emit(a, profile_to_csv(prof));
      else
        emit(a, profile_to_json(prof, m).dump(2) + "\n");
    } else if (cgraph->parsed()) {
      DifferentialOperator op = parse_operator(load_json(a.op_path));
      AffinoidDomain X = parse_domain(load_json(a.domain_path), p);
      RadiiProfile prof = build_profile(op, X, p, a.max_frobenius);
      ControllingGraph cg = prune_to_controlling_graph(prof, a.index);
      emit(a, graph_to_dot(prof, cg, a.index));
    } else if (caudit->parsed()) {
      RunManifest m = make_manifest(a, {a.op_path, a.domain_path});
      DifferentialOperator op = parse_operator(load_json(a.op_path));
      AffinoidDomain X = parse_domain(load_json(a.domain_path), p);
      RadiiProfile prof = build_profile(op, X, p, a.max_frobenius);
      AuditReport rep = audit_main_theorem(prof);
      emit(a, audit_to_json(rep, m).dump(2) + "\n");
      if (!rep.pass()) exit_code = 2;
    } else if (cpoly->parsed()) {
      DifferentialOperator op = parse_operator(load_json(a.op_path));
      Point x = parse_at(a.at);
      NewtonPolygon np = spectral_polygon_at(op, x, p);
      json out = polygon_to_json(np);
      SpectralRadii sr = small_radius_certify(np, x, p);
      json vals = json::array(), cert = json::array();
      for (std::size_t i = 0; i < sr.values.size(); ++i) {
        vals.push_back(sr.values[i].str());
        cert.push_back(static_cast<bool>(sr.certified[i]));
      }
      out["log_radii"] = vals;
      out["young_certified"] = cert;
      emit(a, out.dump(2) + "\n");
    } else if (coracle->parsed()) {
      ConnectionMatrix G;
      if (!a.matrix_path.empty())
        G = parse_matrix(load_json(a.matrix_path));
      else if (!a.op_path.empty())
        G = companion_matrix(parse_operator(load_json(a.op_path)));
      else
        throw std::invalid_argument("oracle: need --operator or --matrix");
      Point x = parse_at(a.at);
      QLog est = radius_oracle(G, x, a.oracle_depth, p);
      json out;
      out["estimate_log_radius"] = est.str();
      out["depth"] = a.oracle_depth;
      if (est.is_finite()) out["approx"] = est.approx();
      emit(a, out.dump(2) + "\n");
    } else if (fpush->parsed()) {
      ConnectionMatrix G = parse_matrix(load_json(a.matrix_path));
      ConnectionMatrix M = pushforward_matrix(G, p);
      json out;
      out["rank"] = M.rank;
      json rows = json::array();
      for (const auto& row : M.entries) {
        json r = json::array();
        for (const auto& e : row) r.push_back({e.num().str(), e.den().str()});
        rows.push_back(r);
      }
      out["entries"] = rows;
      emit(a, out.dump(2) + "\n");
    } else if (fradii->parsed()) {
      DifferentialOperator op = parse_operator(load_json(a.op_path));
      Point x = parse_at(a.at);
      DescentReport rep = descent_certify(op, x, p, a.max_frobenius);
      for (const auto& st : rep.status)
        if (st != RadiusStatus::Certified)
          throw std::domain_error("frobenius radii: input radii not fully certified at the point");
      SpectralRadii in;
      in.at = x;
      in.values = rep.values;
      in.certified.assign(rep.values.size(), true);
      QLog t_log = qmax(x.center == 0 ? QLog::neg_inf() : val_rational(x.center, p),
                        x.log_radius);
      FrobContext ctx{p, t_log, op.rank, compute_i1(rep.values, p, t_log)};
      SpectralRadii out_r = pushforward_radii(in, ctx);
      json out;
      out["at"] = point_to_json(out_r.at);
      json vals = json::array();
      for (const auto& v : out_r.values) vals.push_back(v.str());
      out["log_radii"] = vals;
      emit(a, out.dump(2) + "\n");
    } else if (fdesc->parsed()) {
      Point x = parse_at(a.at);
      DescentReport rep;
      if (!a.op_path.empty())
        rep = descent_certify(parse_operator(load_json(a.op_path)), x, p, a.max_frobenius);
      else if (!a.matrix_path.empty())
        rep = descent_certify(parse_matrix(load_json(a.matrix_path)), x, p, a.max_frobenius);
      else
        throw std::invalid_argument("descend: need --operator or --matrix");
      emit(a, descent_to_json(rep).dump(2) + "\n");
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  auto t1 = std::chrono::steady_clock::now();
  std::cerr << "wall time: "
            << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() << " ms\n";
  return exit_code;
}
