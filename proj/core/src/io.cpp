#include "phasekit/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "phasekit/error.hpp"

namespace phasekit {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::Schema, path + ": " + msg);
}

json parse_doc(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail("$", std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, "missing field '" + key + "'");
  return *it;
}

int get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

Scalar get_scalar(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Scalar(v.get<long>());
  if (!v.is_string()) fail(path, "expected an exact number (string or integer)");
  try {
    return Scalar::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    fail(path, std::string("bad number: ") + e.what());
  }
}

Rational get_rational(const json& v, const std::string& path) {
  Scalar s = get_scalar(v, path);
  if (!s.is_real()) fail(path, "expected a real rational");
  return s.re();
}

void check_header(const json& doc, ModelKind kind) {
  int version = get_int(field(doc, "schema_version", "$"), "$.schema_version");
  if (version != kSchemaVersion)
    fail("$.schema_version", "unsupported version " + std::to_string(version));
  std::string k = get_string(field(doc, "kind", "$"), "$.kind");
  if (k != to_string(kind)) fail("$.kind", "expected '" + std::string(to_string(kind)) + "', got '" + k + "'");
}

json header(ModelKind kind) {
  json j = json::object();
  j["schema_version"] = kSchemaVersion;
  j["kind"] = to_string(kind);
  return j;
}

std::vector<std::string> get_names(const json& v, int dim, const std::string& path) {
  if (!v.is_array() || static_cast<int>(v.size()) != dim) fail(path, "expected " + std::to_string(dim) + " names");
  std::vector<std::string> out;
  for (size_t i = 0; i < v.size(); ++i) out.push_back(get_string(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Poly get_poly(const json& v, int dim, const std::string& path) {
  if (!v.is_array()) fail(path, "expected a list of terms");
  Poly p(dim);
  for (size_t t = 0; t < v.size(); ++t) {
    std::string tp = path + "[" + std::to_string(t) + "]";
    Scalar c = get_scalar(field(v[t], "coeff", tp), tp + ".coeff");
    const json& e = field(v[t], "exponents", tp);
    if (!e.is_array() || static_cast<int>(e.size()) != dim)
      fail(tp + ".exponents", "expected " + std::to_string(dim) + " exponents");
    Monomial m;
    for (size_t i = 0; i < e.size(); ++i) {
      int k = get_int(e[i], tp + ".exponents");
      if (k < 0) fail(tp + ".exponents", "negative exponent");
      m.push_back(k);
    }
    p.add_term(m, c);
  }
  return p;
}

json put_poly(const Poly& p) {
  json arr = json::array();
  for (const auto& [m, c] : p.terms()) arr.push_back({{"coeff", c.to_string()}, {"exponents", m}});
  return arr;
}

json action_object(const ActionModel& m) {
  json j = json::object();
  j["dimension"] = m.dimension();
  j["names"] = m.names.empty() ? default_names(m.dimension()) : m.names;
  j["polynomial"] = put_poly(m.S);
  j["density"] = m.density.to_string();
  j["gauge"] = m.gauge;
  if (!m.critical_points.empty()) {
    json pts = json::array();
    for (const auto& cp : m.critical_points) {
      json x = json::array();
      for (const auto& s : cp.x) x.push_back(s.to_string());
      pts.push_back(x);
    }
    j["critical_points"] = pts;
  }
  return j;
}

ActionModel action_from(const json& j, const std::string& path) {
  ActionModel m;
  int dim = get_int(field(j, "dimension", path), path + ".dimension");
  if (dim < 0) fail(path + ".dimension", "negative dimension");
  m.S = get_poly(field(j, "polynomial", path), dim, path + ".polynomial");
  m.names = j.contains("names") ? get_names(j["names"], dim, path + ".names") : default_names(dim);
  if (j.contains("density")) m.density = get_scalar(j["density"], path + ".density");
  if (j.contains("gauge")) {
    if (!j["gauge"].is_boolean()) fail(path + ".gauge", "expected a boolean");
    m.gauge = j["gauge"].get<bool>();
  }
  if (j.contains("critical_points")) {
    const json& pts = j["critical_points"];
    if (!pts.is_array()) fail(path + ".critical_points", "expected a list of points");
    for (size_t p = 0; p < pts.size(); ++p) {
      std::string pp = path + ".critical_points[" + std::to_string(p) + "]";
      if (!pts[p].is_array() || static_cast<int>(pts[p].size()) != dim) fail(pp, "wrong point dimension");
      std::vector<Scalar> x;
      for (const auto& c : pts[p]) x.push_back(get_scalar(c, pp));
      try {
        m.add_critical_point(x);
      } catch (const Error& e) {
        fail(pp, e.what());
      }
    }
  }
  return m;
}

// The even and odd generator lists induced by Darboux pairs, in pair order.
struct PairLayout {
  std::vector<std::string> even, odd;
  std::vector<std::pair<std::string, std::string>> names;
};

PairLayout pair_layout(const json& pairs) {
  if (!pairs.is_array() || pairs.empty()) fail("$.pairs", "expected a nonempty list");
  // fields of each parity in pair order, followed by the antifields of the
  // other parity (the layout produced by bv_from_gauge)
  PairLayout out;
  std::vector<std::string> even_anti, odd_anti;
  for (size_t i = 0; i < pairs.size(); ++i) {
    std::string pp = "$.pairs[" + std::to_string(i) + "]";
    std::string name = get_string(field(pairs[i], "name", pp), pp + ".name");
    std::string parity = get_string(field(pairs[i], "parity", pp), pp + ".parity");
    std::string anti = pairs[i].contains("anti") ? get_string(pairs[i]["anti"], pp + ".anti") : antifield_name(name);
    if (parity == "even") {
      out.even.push_back(name);
      odd_anti.push_back(anti);
    } else if (parity == "odd") {
      out.odd.push_back(name);
      even_anti.push_back(anti);
    } else {
      fail(pp + ".parity", "expected 'even' or 'odd'");
    }
    out.names.emplace_back(name, anti);
  }
  out.even.insert(out.even.end(), even_anti.begin(), even_anti.end());
  out.odd.insert(out.odd.end(), odd_anti.begin(), odd_anti.end());
  return out;
}

SuperFunction get_super(const json& v, const SpacePtr& space, const std::string& path) {
  if (!v.is_array()) fail(path, "expected a list of terms");
  SuperFunction f(space);
  for (size_t t = 0; t < v.size(); ++t) {
    std::string tp = path + "[" + std::to_string(t) + "]";
    Scalar c = get_scalar(field(v[t], "coeff", tp), tp + ".coeff");
    Monomial m(size_t(space->n_even()), 0);
    if (v[t].contains("even")) {
      const json& e = v[t]["even"];
      if (!e.is_object()) fail(tp + ".even", "expected {name: power}");
      for (auto it = e.begin(); it != e.end(); ++it) {
        if (!space->has_even(it.key())) fail(tp + ".even", "unknown even generator '" + it.key() + "'");
        int k = get_int(it.value(), tp + ".even." + it.key());
        if (k < 0) fail(tp + ".even", "negative exponent");
        m[size_t(space->even_index(it.key()))] = k;
      }
    }
    SuperFunction term = SuperFunction::term(space, m, 0, c);
    if (v[t].contains("odd")) {
      const json& o = v[t]["odd"];
      if (!o.is_array()) fail(tp + ".odd", "expected an ordered list of odd generators");
      for (const auto& name : o) {
        std::string s = get_string(name, tp + ".odd");
        if (!space->has_odd(s)) fail(tp + ".odd", "unknown odd generator '" + s + "'");
        term = super_mul(term, SuperFunction::odd_var(space, space->odd_index(s)));
      }
    }
    f += term;
  }
  return f;
}

json put_super(const SuperFunction& f) {
  json arr = json::array();
  const SpacePtr& sp = f.space();
  for (const auto& [mask, p] : f.terms()) {
    json odd = json::array();
    for (int a = 0; a < sp->n_odd(); ++a)
      if ((mask >> a) & 1) odd.push_back(sp->odd_names()[size_t(a)]);
    for (const auto& [m, c] : p.terms()) {
      json even = json::object();
      for (size_t i = 0; i < m.size(); ++i)
        if (m[i]) even[sp->even_names()[i]] = m[i];
      arr.push_back({{"coeff", c.to_string()}, {"even", even}, {"odd", odd}});
    }
  }
  return arr;
}

}  // namespace

const char* to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Action:
      return "action";
    case ModelKind::Gauge:
      return "gauge";
    case ModelKind::BV:
      return "bv";
    case ModelKind::Lie:
      return "lie";
    case ModelKind::Graph:
      return "graph";
  }
  return "?";
}

ModelKind model_kind(const std::string& json_text) {
  json doc = parse_doc(json_text);
  std::string k = get_string(field(doc, "kind", "$"), "$.kind");
  for (ModelKind m : {ModelKind::Action, ModelKind::Gauge, ModelKind::BV, ModelKind::Lie, ModelKind::Graph})
    if (k == to_string(m)) return m;
  fail("$.kind", "unknown model kind '" + k + "'");
}

ActionModel read_action_model(const std::string& json_text) {
  json doc = parse_doc(json_text);
  check_header(doc, ModelKind::Action);
  return action_from(doc, "$");
}

std::string write_action_model(const ActionModel& m) {
  json j = header(ModelKind::Action);
  j.update(action_object(m));
  return j.dump(2);
}

GaugeModel read_gauge_model(const std::string& json_text) {
  json doc = parse_doc(json_text);
  check_header(doc, ModelKind::Gauge);
  GaugeModel gm;
  gm.action = action_from(field(doc, "action", "$"), "$.action");
  const int n = gm.action.dimension();
  const json& lie = field(doc, "lie", "$");
  int k = get_int(field(lie, "dim", "$.lie"), "$.lie.dim");
  if (k < 1) fail("$.lie.dim", "expected a positive dimension");
  gm.lie_dim = k;
  gm.f.assign(size_t(k), std::vector<std::vector<Scalar>>(size_t(k), std::vector<Scalar>(size_t(k))));
  const json& f = field(lie, "f", "$.lie");
  if (!f.is_array()) fail("$.lie.f", "expected [[a,b,c,value],...]");
  for (size_t t = 0; t < f.size(); ++t) {
    std::string tp = "$.lie.f[" + std::to_string(t) + "]";
    if (!f[t].is_array() || f[t].size() != 4) fail(tp, "expected [a,b,c,value]");
    int a = get_int(f[t][0], tp), b = get_int(f[t][1], tp), c = get_int(f[t][2], tp);
    if (a < 0 || b < 0 || c < 0 || a >= k || b >= k || c >= k) fail(tp, "index out of range");
    gm.f[size_t(a)][size_t(b)][size_t(c)] = get_scalar(f[t][3], tp);
  }
  const json& vf = field(doc, "vector_fields", "$");
  if (!vf.is_array() || static_cast<int>(vf.size()) != k) fail("$.vector_fields", "expected one field per generator");
  for (size_t a = 0; a < vf.size(); ++a) {
    std::string ap = "$.vector_fields[" + std::to_string(a) + "]";
    if (!vf[a].is_array() || static_cast<int>(vf[a].size()) != n) fail(ap, "expected n component polynomials");
    std::vector<Poly> comps;
    for (size_t i = 0; i < vf[a].size(); ++i) comps.push_back(get_poly(vf[a][i], n, ap + "[" + std::to_string(i) + "]"));
    gm.v.push_back(comps);
  }
  const json& phi = field(doc, "phi", "$");
  if (!phi.is_array() || (!phi.empty() && static_cast<int>(phi.size()) != k))
    fail("$.phi", "expected one gauge condition per generator (or none)");
  for (size_t a = 0; a < phi.size(); ++a) gm.phi.push_back(get_poly(phi[a], n, "$.phi[" + std::to_string(a) + "]"));
  if (doc.contains("vol_G")) {
    const json& vol = doc["vol_G"];
    gm.vol_rational = get_rational(field(vol, "rational", "$.vol_G"), "$.vol_G.rational");
    if (vol.contains("pi_power")) gm.vol_pi_power = get_int(vol["pi_power"], "$.vol_G.pi_power");
  }
  if (doc.contains("N")) {
    gm.N = get_int(doc["N"], "$.N");
    if (gm.N < 1) fail("$.N", "expected a positive intersection count");
  }
  return gm;
}

std::string write_gauge_model(const GaugeModel& gm) {
  json j = header(ModelKind::Gauge);
  j["action"] = action_object(gm.action);
  json f = json::array();
  for (int a = 0; a < gm.lie_dim; ++a)
    for (int b = 0; b < gm.lie_dim; ++b)
      for (int c = 0; c < gm.lie_dim; ++c)
        if (!gm.f_at(a, b, c).is_zero()) f.push_back({a, b, c, gm.f_at(a, b, c).to_string()});
  j["lie"] = {{"dim", gm.lie_dim}, {"f", f}};
  json vf = json::array();
  for (const auto& va : gm.v) {
    json comps = json::array();
    for (const auto& p : va) comps.push_back(put_poly(p));
    vf.push_back(comps);
  }
  j["vector_fields"] = vf;
  json phi = json::array();
  for (const auto& p : gm.phi) phi.push_back(put_poly(p));
  j["phi"] = phi;
  j["vol_G"] = {{"rational", to_string(gm.vol_rational)}, {"pi_power", gm.vol_pi_power}};
  j["N"] = gm.N;
  return j.dump(2);
}

BVFile read_bv_model(const std::string& json_text) {
  json doc = parse_doc(json_text);
  check_header(doc, ModelKind::BV);
  PairLayout layout = pair_layout(field(doc, "pairs", "$"));
  BVFile out;
  try {
    out.bv = BVSpace(make_space(layout.even, layout.odd), layout.names);
  } catch (const Error& e) {
    fail("$.pairs", e.what());
  }
  out.action[0] = get_super(field(doc, "action", "$"), out.bv.space(), "$.action");
  if (doc.contains("hbar_terms")) {
    const json& h = doc["hbar_terms"];
    if (!h.is_array()) fail("$.hbar_terms", "expected a list");
    for (size_t t = 0; t < h.size(); ++t) {
      std::string tp = "$.hbar_terms[" + std::to_string(t) + "]";
      int p = get_int(field(h[t], "power", tp), tp + ".power");
      if (p < 1) fail(tp + ".power", "hbar powers start at 1");
      out.action[p] += get_super(field(h[t], "action", tp), out.bv.space(), tp + ".action");
    }
  }
  return out;
}

std::string write_bv_model(const BVFile& m) {
  json j = header(ModelKind::BV);
  json pairs = json::array();
  for (size_t i = 0; i < m.bv.pairs().size(); ++i) {
    const BVPair& p = m.bv.pairs()[i];
    pairs.push_back({{"name", m.bv.field_name(int(i))},
                     {"anti", m.bv.anti_name(int(i))},
                     {"parity", p.field.odd ? "odd" : "even"}});
  }
  j["pairs"] = pairs;
  json hterms = json::array();
  j["action"] = json::array();
  for (const auto& [p, f] : m.action) {
    if (p == 0)
      j["action"] = put_super(f);
    else
      hterms.push_back({{"power", p}, {"action", put_super(f)}});
  }
  if (!hterms.empty()) j["hbar_terms"] = hterms;
  return j.dump(2);
}

LieData read_lie_data(const std::string& json_text) {
  json doc = parse_doc(json_text);
  check_header(doc, ModelKind::Lie);
  int d = get_int(field(doc, "dim", "$"), "$.dim");
  if (d < 1) fail("$.dim", "expected a positive dimension");
  LieData ld(d);
  const json& f = field(doc, "f", "$");
  if (!f.is_array()) fail("$.f", "expected [[a,b,c,value],...]");
  for (size_t t = 0; t < f.size(); ++t) {
    std::string tp = "$.f[" + std::to_string(t) + "]";
    if (!f[t].is_array() || f[t].size() != 4) fail(tp, "expected [a,b,c,value]");
    int a = get_int(f[t][0], tp), b = get_int(f[t][1], tp), c = get_int(f[t][2], tp);
    if (a < 0 || b < 0 || c < 0 || a >= d || b >= d || c >= d) fail(tp, "index out of range");
    ld.at(a, b, c) = get_scalar(f[t][3], tp);
  }
  return ld;
}

std::string write_lie_data(const LieData& ld) {
  json j = header(ModelKind::Lie);
  j["dim"] = ld.dim;
  json f = json::array();
  for (int a = 0; a < ld.dim; ++a)
    for (int b = 0; b < ld.dim; ++b)
      for (int c = 0; c < ld.dim; ++c)
        if (!ld.at(a, b, c).is_zero()) f.push_back({a, b, c, ld.at(a, b, c).to_string()});
  j["f"] = f;
  return j.dump(2);
}

Graph read_graph(const std::string& json_text) {
  json doc = parse_doc(json_text);
  check_header(doc, ModelKind::Graph);
  Graph g;
  g.half_edges = get_int(field(doc, "half_edges", "$"), "$.half_edges");
  const json& vs = field(doc, "vertices", "$");
  if (!vs.is_array()) fail("$.vertices", "expected a list of half-edge lists");
  for (size_t v = 0; v < vs.size(); ++v) {
    std::string vp = "$.vertices[" + std::to_string(v) + "]";
    if (!vs[v].is_array()) fail(vp, "expected a list of half-edges");
    std::vector<int> hs;
    for (const auto& h : vs[v]) hs.push_back(get_int(h, vp));
    g.vertices.push_back(hs);
  }
  if (doc.contains("leaves")) {
    if (!doc["leaves"].is_array()) fail("$.leaves", "expected a list");
    for (const auto& h : doc["leaves"]) g.leaves.push_back(get_int(h, "$.leaves"));
  }
  const json& es = field(doc, "edges", "$");
  if (!es.is_array()) fail("$.edges", "expected a list of pairs");
  for (size_t e = 0; e < es.size(); ++e) {
    std::string ep = "$.edges[" + std::to_string(e) + "]";
    if (!es[e].is_array() || es[e].size() != 2) fail(ep, "expected [a,b]");
    g.edges.push_back({get_int(es[e][0], ep), get_int(es[e][1], ep)});
  }
  if (doc.contains("types")) {
    const json& ts = doc["types"];
    if (!ts.is_object()) fail("$.types", "expected {half_edge: type}");
    g.types.assign(size_t(std::max(g.half_edges, 0)), HalfEdgeType::Field);
    for (auto it = ts.begin(); it != ts.end(); ++it) {
      int h = -1;
      try {
        h = std::stoi(it.key());
      } catch (const std::exception&) {
        fail("$.types", "bad half-edge '" + it.key() + "'");
      }
      if (h < 0 || h >= g.half_edges) fail("$.types", "half-edge out of range");
      try {
        g.types[size_t(h)] = half_edge_type_from_string(get_string(it.value(), "$.types." + it.key()));
      } catch (const Error& e) {
        fail("$.types." + it.key(), e.what());
      }
    }
  }
  try {
    g.validate();
  } catch (const Error& e) {
    fail("$", e.what());
  }
  return g;
}

std::string write_graph(const Graph& g) {
  json j = header(ModelKind::Graph);
  j["half_edges"] = g.half_edges;
  j["vertices"] = g.vertices;
  j["leaves"] = g.leaves;
  json es = json::array();
  for (const auto& e : g.edges) es.push_back({e[0], e[1]});
  j["edges"] = es;
  if (g.typed()) {
    json ts = json::object();
    for (int h = 0; h < g.half_edges; ++h) ts[std::to_string(h)] = to_string(g.type(h));
    j["types"] = ts;
  }
  return j.dump(2);
}

bool graph_equal_unordered(const Graph& a, const Graph& b) {
  auto normalize = [](const Graph& g) {
    std::vector<std::vector<int>> vs = g.vertices;
    for (auto& v : vs) std::sort(v.begin(), v.end());
    std::sort(vs.begin(), vs.end());
    std::vector<std::array<int, 2>> es = g.edges;
    for (auto& e : es)
      if (e[0] > e[1]) std::swap(e[0], e[1]);
    std::sort(es.begin(), es.end());
    std::vector<int> ls = g.leaves;
    std::sort(ls.begin(), ls.end());
    std::vector<int> ts;
    for (int h = 0; h < g.half_edges; ++h) ts.push_back(int(g.type(h)));
    return std::make_tuple(g.half_edges, vs, es, ls, ts);
  };
  return normalize(a) == normalize(b);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Schema, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace phasekit
