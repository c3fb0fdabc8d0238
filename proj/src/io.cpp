#include "padic/io.hpp"

#include <fstream>
#include <sstream>

namespace padic {

std::string tool_version() { return "padic-polygon 0.1.0"; }

std::string fnv1a_hex(const std::string& bytes) {
  unsigned long long h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream oss;
  oss << std::hex << h;
  return oss.str();
}

std::string RunManifest::digest() const {
  std::ostringstream oss;
  oss << version << "|p=" << p << "|N=" << oracle_depth << "|maxfrob=" << max_frobenius;
  for (const auto& [path, d] : input_digests) oss << "|" << path << ":" << d;
  oss << "|" << seed_note;
  return fnv1a_hex(oss.str());
}

json RunManifest::to_json() const {
  json j;
  j["version"] = version;
  j["p"] = p;
  j["oracle_depth"] = oracle_depth;
  j["max_frobenius"] = max_frobenius;
  json ins = json::array();
  for (const auto& [path, d] : input_digests) ins.push_back({{"path", path}, {"digest", d}});
  j["inputs"] = ins;
  if (!seed_note.empty()) j["seed"] = seed_note;
  j["digest"] = digest();
  return j;
}

namespace {

void expect(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument("input: " + msg);
}

}  // namespace

Rat parse_rat(const json& j, const std::string& field) {
  expect(j.is_string(), "field '" + field + "' must be a rational string \"a/b\"");
  return rat_from_string(j.get<std::string>());
}

QLog parse_qlog(const json& j, const std::string& field) {
  expect(j.is_string(), "field '" + field + "' must be a rational string or \"-inf\"");
  return QLog::from_string(j.get<std::string>());
}

FactoredRatFun parse_factored(const json& j) {
  expect(j.is_object() && j.contains("constant"), "factored function needs \"constant\"");
  FactoredRatFun f;
  f.constant = parse_rat(j.at("constant"), "constant");
  if (j.contains("factors")) {
    expect(j.at("factors").is_array(), "\"factors\" must be an array of [root, mult]");
    for (const auto& e : j.at("factors")) {
      expect(e.is_array() && e.size() == 2, "factor must be [root, multiplicity]");
      Rat z = parse_rat(e.at(0), "factor root");
      expect(e.at(1).is_number_integer(), "factor multiplicity must be an integer");
      f.factors.emplace_back(z, e.at(1).get<long>());
    }
  }
  f.validate();
  return f;
}

DifferentialOperator parse_operator(const json& j) {
  expect(j.is_object() && j.contains("rank") && j.contains("coeffs"),
         "operator needs \"rank\" and \"coeffs\"");
  DifferentialOperator op;
  expect(j.at("rank").is_number_integer(), "\"rank\" must be an integer");
  op.rank = j.at("rank").get<int>();
  for (const auto& c : j.at("coeffs")) op.coeffs.push_back(parse_factored(c));
  op.validate();
  return op;
}

Poly parse_poly_string(const std::string& s) {
  // terms like "1 - 2*T + 3/4*T^2"; '*' optional, spaces optional
  std::vector<Rat> coeffs;
  auto add = [&](std::size_t k, const Rat& c) {
    if (coeffs.size() <= k) coeffs.resize(k + 1, rat(0));
    coeffs[k] += c;
  };
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skip_ws();
  expect(i < s.size(), "empty polynomial string");
  bool first = true;
  while (i < s.size()) {
    skip_ws();
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
      skip_ws();
    } else {
      expect(first, "missing +/- between terms in '" + s + "'");
    }
    first = false;
    // coefficient (optional if the term starts with T)
    std::string num;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) {
      num += s[i];
      ++i;
    }
    skip_ws();
    Rat c = num.empty() ? rat(1) : rat_from_string(num);
    if (sign < 0) c = -c;
    if (i < s.size() && s[i] == '*') {  // "3*T^2"
      expect(!num.empty(), "dangling '*' in '" + s + "'");
      ++i;
      skip_ws();
      expect(i < s.size() && (s[i] == 'T' || s[i] == 't'), "expected T after '*'");
    }
    std::size_t k = 0;
    if (i < s.size() && (s[i] == 'T' || s[i] == 't')) {
      ++i;
      k = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string ex;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
          ex += s[i];
          ++i;
        }
        expect(!ex.empty(), "missing exponent in '" + s + "'");
        k = std::stoul(ex);
      }
    } else {
      expect(!num.empty(), "bad term in '" + s + "'");
    }
    add(k, c);
    skip_ws();
  }
  return Poly(std::move(coeffs));
}

ConnectionMatrix parse_matrix(const json& j) {
  expect(j.is_object() && j.contains("rank") && j.contains("entries"),
         "matrix needs \"rank\" and \"entries\"");
  ConnectionMatrix G;
  G.rank = j.at("rank").get<int>();
  for (const auto& row : j.at("entries")) {
    G.entries.emplace_back();
    for (const auto& e : row) {
      expect(e.is_array() && e.size() == 2, "matrix entry must be [num, den]");
      Poly n = parse_poly_string(e.at(0).get<std::string>());
      Poly d = parse_poly_string(e.at(1).get<std::string>());
      G.entries.back().emplace_back(n, d);
    }
  }
  G.validate();
  return G;
}

AffinoidDomain parse_domain(const json& j, const Prime& p) {
  expect(j.is_object() && j.contains("outer"), "domain needs \"outer\"");
  auto parse_point = [&](const json& q) {
    expect(q.is_object() && q.contains("center") && q.contains("log_radius"),
           "disk needs \"center\" and \"log_radius\"");
    return Point(parse_rat(q.at("center"), "center"), parse_qlog(q.at("log_radius"), "log_radius"));
  };
  Point outer = parse_point(j.at("outer"));
  std::vector<Point> holes;
  if (j.contains("holes"))
    for (const auto& h : j.at("holes")) holes.push_back(parse_point(h));
  return AffinoidDomain(outer, holes, p);
}

json factored_to_json(const FactoredRatFun& f) {
  json j;
  j["constant"] = rat_to_string(f.constant);
  json fs = json::array();
  for (const auto& [z, m] : f.factors) fs.push_back({rat_to_string(z), m});
  j["factors"] = fs;
  return j;
}

json operator_to_json(const DifferentialOperator& op) {
  json j;
  j["rank"] = op.rank;
  json cs = json::array();
  for (const auto& g : op.coeffs) cs.push_back(factored_to_json(g));
  j["coeffs"] = cs;
  return j;
}

json domain_to_json(const AffinoidDomain& X) {
  json j;
  j["outer"] = {{"center", rat_to_string(X.outer.center)},
                {"log_radius", X.outer.log_radius.str()}};
  json hs = json::array();
  for (const auto& h : X.holes)
    hs.push_back({{"center", rat_to_string(h.center)}, {"log_radius", h.log_radius.str()}});
  j["holes"] = hs;
  return j;
}

json polygon_to_json(const NewtonPolygon& np) {
  json j;
  json hs = json::array();
  for (const auto& h : np.heights) hs.push_back(h.str());
  j["heights"] = hs;
  return j;
}

json point_to_json(const Point& x) {
  return json{{"center", rat_to_string(x.center)}, {"log_radius", x.log_radius.str()}};
}

json paf_to_json(const Paf& f) {
  json j;
  j["lo"] = f.lo().str();
  j["hi"] = f.hi().str();
  json rows = json::array();
  for (const auto& r : f.rows())
    rows.push_back({{"L", r.pos.str()},
                    {"value", rat_to_string(r.value)},
                    {"slope_right", rat_to_string(r.slope_right)}});
  j["rows"] = rows;
  return j;
}

namespace {

const char* solv_name(SolvClass c) {
  switch (c) {
    case SolvClass::Spectral: return "spectral";
    case SolvClass::Solvable: return "solvable";
    default: return "over-solvable";
  }
}

const char* status_name(RadiusStatus s) {
  switch (s) {
    case RadiusStatus::Certified: return "certified";
    case RadiusStatus::Solvable: return "solvable";
    default: return "undetermined";
  }
}

}  // namespace

json profile_to_json(const RadiiProfile& prof, const RunManifest& m) {
  json j;
  j["manifest"] = m.to_json();
  j["operator"] = operator_to_json(prof.op);
  j["domain"] = domain_to_json(prof.domain);
  j["rank"] = prof.rank;
  json verts = json::array();
  for (std::size_t v = 0; v < prof.graph.verts.size(); ++v) {
    json jv;
    jv["point"] = point_to_json(prof.graph.verts[v].pt);
    json radii = json::array(), classes = json::array();
    for (int i = 0; i < prof.rank; ++i) {
      radii.push_back(prof.verts[v].radii[static_cast<std::size_t>(i)].str());
      classes.push_back(solv_name(prof.verts[v].classes[static_cast<std::size_t>(i)]));
    }
    jv["log_radii"] = radii;
    jv["classes"] = classes;
    if (prof.verts[v].flagged) jv["flagged"] = true;
    verts.push_back(jv);
  }
  j["vertices"] = verts;
  json edges = json::array();
  for (std::size_t e = 0; e < prof.graph.edges.size(); ++e) {
    const auto& ed = prof.graph.edges[e];
    json je;
    je["center"] = rat_to_string(ed.center);
    je["lo"] = ed.lo.str();
    je["hi"] = ed.hi.str();
    je["on_skeleton"] = ed.on_skeleton;
    json conv = json::array(), spec = json::array(), height = json::array(), win = json::array();
    for (int i = 0; i < prof.rank; ++i) {
      conv.push_back(paf_to_json(prof.edges[e].conv[static_cast<std::size_t>(i)]));
      spec.push_back(paf_to_json(prof.edges[e].spectral[static_cast<std::size_t>(i)]));
      height.push_back(paf_to_json(prof.edges[e].height[static_cast<std::size_t>(i)]));
      for (const auto& st : prof.edges[e].status[static_cast<std::size_t>(i)])
        if (st.status == StretchStatus::Window)
          win.push_back({{"index", i + 1}, {"lo", st.lo.str()}, {"hi", st.hi.str()}});
    }
    je["log_conv_radius"] = conv;
    je["log_spectral_radius"] = spec;
    je["log_partial_height"] = height;
    if (!win.empty()) je["unresolved"] = win;
    edges.push_back(je);
  }
  j["edges"] = edges;
  return j;
}

json descent_to_json(const DescentReport& rep) {
  json j;
  j["at"] = point_to_json(rep.at);
  json vals = json::array(), st = json::array();
  for (std::size_t i = 0; i < rep.values.size(); ++i) {
    vals.push_back(rep.values[i].str());
    st.push_back(status_name(rep.status[i]));
  }
  j["log_radii"] = vals;
  j["status"] = st;
  j["iterations"] = rep.iterations;
  j["exhausted"] = rep.exhausted;
  return j;
}

json audit_to_json(const AuditReport& rep, const RunManifest& m) {
  json j;
  j["manifest"] = m.to_json();
  j["pass"] = rep.pass();
  j["integrality"] = rep.integrality;
  j["denominators"] = rep.denominators;
  j["concavity"] = rep.concavity;
  j["superharmonic"] = rep.superharmonic;
  j["r1_superharmonic"] = rep.r1_superharmonic;
  j["harmonic_vertices"] = rep.harmonic_vertices;
  j["flagged_stretches"] = rep.flagged_stretches;
  json ex = json::array();
  for (const auto& q : rep.exceptional) ex.push_back(point_to_json(q));
  j["exceptional_set"] = ex;
  j["violations"] = rep.violations;
  return j;
}

json criterion_to_json(const CriterionReport& rep, const RunManifest& m) {
  json j;
  j["manifest"] = m.to_json();
  j["pass"] = rep.pass();
  j["C1"] = rep.c1;
  j["C2"] = rep.c2;
  j["C3"] = rep.c3;
  j["C4"] = rep.c4;
  j["C5"] = rep.c5;
  j["C6"] = rep.c6;
  j["nu"] = rat_to_string(rep.nu);
  j["max_breaks_per_segment"] = rep.max_breaks_per_segment;
  j["max_directions"] = rep.max_directions;
  j["violations"] = rep.violations;
  return j;
}

std::string graph_to_dot(const RadiiProfile& prof, const ControllingGraph& cg, int index) {
  std::ostringstream oss;
  oss << "graph controlling {\n";
  auto vname = [&](const Point& x) {
    return "\"x_{" + rat_to_string(x.center) + "," + x.log_radius.str() + "}\"";
  };
  const SkeletonGraph& g = prof.graph;
  // vertices incident to kept edges; a bare root still renders
  std::vector<bool> used(g.verts.size(), false);
  if (g.root >= 0 && g.edges.empty()) used[static_cast<std::size_t>(g.root)] = true;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (!cg.keep[e]) continue;
    used[static_cast<std::size_t>(g.edges[e].v_hi)] = true;
    if (cg.cut_level[e] == g.edges[e].lo) used[static_cast<std::size_t>(g.edges[e].v_lo)] = true;
  }
  for (std::size_t v = 0; v < g.verts.size(); ++v)
    if (used[v]) oss << "  " << vname(g.verts[v].pt) << ";\n";
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (!cg.keep[e]) continue;
    const auto& ed = g.edges[e];
    const Paf& f = prof.edges[e].conv[static_cast<std::size_t>(index - 1)];
    std::string slopes;
    Paf vis = f.restrict(qmax(cg.cut_level[e], ed.lo), ed.hi);
    for (const auto& s : vis.slopes()) slopes += (slopes.empty() ? "" : ",") + rat_to_string(s);
    std::string lower = cg.cut_level[e] == ed.lo
                            ? vname(g.verts[static_cast<std::size_t>(ed.v_lo)].pt)
                            : vname(Point(ed.center, cg.cut_level[e]));
    oss << "  " << lower << " -- " << vname(g.verts[static_cast<std::size_t>(ed.v_hi)].pt)
        << " [label=\"" << slopes << "\"];\n";
  }
  oss << "}\n";
  return oss.str();
}

std::string profile_to_csv(const RadiiProfile& prof, bool approx_column) {
  std::ostringstream oss;
  oss << "edge,center,index,L,value,slope_right";
  if (approx_column) oss << ",approx";
  oss << "\n";
  for (std::size_t e = 0; e < prof.graph.edges.size(); ++e)
    for (int i = 0; i < prof.rank; ++i)
      for (const auto& r : prof.edges[e].conv[static_cast<std::size_t>(i)].rows()) {
        oss << e << "," << rat_to_string(prof.graph.edges[e].center) << "," << (i + 1) << ","
            << r.pos.str() << "," << rat_to_string(r.value) << "," << rat_to_string(r.slope_right);
        if (approx_column) oss << "," << r.pos.approx();
        oss << "\n";
      }
  return oss.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream oss;
  oss << in.rdbuf();
  return oss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << bytes;
}

}  // namespace padic
