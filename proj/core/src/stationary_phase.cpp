#include "phasekit/stationary_phase.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "phasekit/error.hpp"
#include "phasekit/gaussian.hpp"
#include "phasekit/wick.hpp"

namespace phasekit {

namespace {

std::vector<Poly> gradient(const Poly& S) {
  std::vector<Poly> g;
  for (int i = 0; i < S.dim(); ++i) g.push_back(S.derivative(i));
  return g;
}

Matrix exact_hessian(const Poly& S, const std::vector<Scalar>& x) {
  int n = S.dim();
  Matrix H(n, n);
  for (int i = 0; i < n; ++i) {
    Poly di = S.derivative(i);
    for (int j = 0; j < n; ++j) H(i, j) = di.derivative(j).evaluate(x);
  }
  return H;
}

}  // namespace

void ActionModel::add_critical_point(const std::vector<Scalar>& x) {
  if (static_cast<int>(x.size()) != dimension())
    throw Error(ErrorCode::InvalidArgument, "critical point has wrong dimension");
  for (const Poly& g : gradient(S))
    if (!g.evaluate(x).is_zero()) throw Error(ErrorCode::InvalidArgument, "gradient does not vanish at point");
  CriticalPoint cp;
  cp.x = x;
  cp.exact = true;
  for (const auto& s : x) cp.approx.push_back(s.re().get_d());
  cp.degenerate = determinant(exact_hessian(S, x)).is_zero();
  if (cp.degenerate && !gauge) throw Error(ErrorCode::DegenerateHessian, "registered critical point is degenerate");
  critical_points.push_back(cp);
}

bool rationalize(double x, Rational& out, long max_den, double tol) {
  if (!std::isfinite(x)) return false;
  // continued-fraction convergents
  long double v = x;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 40; ++it) {
    long double a = std::floor(v);
    if (std::fabs(a) > 1e15L) break;
    long ai = static_cast<long>(a);
    long p2 = ai * p1 + p0;
    long q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::fabs(static_cast<double>(p1) / static_cast<double>(q1) - x) < tol) {
      out = Rational(p1, q1);
      out.canonicalize();
      return true;
    }
    long double frac = v - a;
    if (frac < 1e-18L) break;
    v = 1.0L / frac;
  }
  if (q1 != 0 && std::fabs(static_cast<double>(p1) / static_cast<double>(q1) - x) < tol) {
    out = Rational(p1, q1);
    out.canonicalize();
    return true;
  }
  return false;
}

std::vector<std::vector<double>> seed_grid(int dim, double lo, double hi, int steps) {
  std::vector<std::vector<double>> out;
  std::vector<int> idx(size_t(dim), 0);
  double h = steps > 1 ? (hi - lo) / (steps - 1) : 0.0;
  while (true) {
    std::vector<double> p;
    for (int i : idx) p.push_back(lo + h * i);
    out.push_back(p);
    int k = 0;
    while (k < dim && ++idx[size_t(k)] == steps) idx[size_t(k++)] = 0;
    if (k == dim) break;
  }
  return out;
}

CriticalSearch find_critical_points(const Poly& S, const std::vector<std::vector<double>>& seeds, double tol,
                                    int max_iter) {
  int n = S.dim();
  std::vector<Poly> grad = gradient(S);
  std::vector<std::vector<Poly>> hess(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) hess[size_t(i)].push_back(grad[size_t(i)].derivative(j));

  CriticalSearch out;
  for (const auto& seed : seeds) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = seed[size_t(i)];
    bool converged = false;
    Eigen::MatrixXd H(n, n);
    for (int it = 0; it < max_iter; ++it) {
      std::vector<double> pt(x.data(), x.data() + n);
      Eigen::VectorXd g(n);
      for (int i = 0; i < n; ++i) g(i) = grad[size_t(i)].evaluate(pt).real();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) H(i, j) = hess[size_t(i)][size_t(j)].evaluate(pt).real();
      if (g.norm() < tol) {
        converged = true;
        break;
      }
      Eigen::VectorXd step = H.completeOrthogonalDecomposition().solve(g);
      if (!step.allFinite()) break;
      x -= step;
      if (!x.allFinite() || x.norm() > 1e8) break;
    }
    if (!converged) {
      out.failures.push_back({seed, "NoConvergence"});
      continue;
    }
    CriticalPoint cp;
    cp.approx.assign(x.data(), x.data() + n);
    bool dup = false;
    for (const auto& q : out.points) {
      double d = 0;
      for (int i = 0; i < n; ++i) d = std::max(d, std::fabs(q.approx[size_t(i)] - cp.approx[size_t(i)]));
      if (d < 1e-6) dup = true;
    }
    if (dup) continue;
    std::vector<Scalar> xr;
    bool ok = true;
    for (double v : cp.approx) {
      Rational r;
      if (!rationalize(v, r)) {
        ok = false;
        break;
      }
      xr.emplace_back(r);
    }
    if (ok) {
      for (const Poly& g : grad)
        if (!g.evaluate(xr).is_zero()) ok = false;
    }
    if (ok) {
      cp.x = xr;
      cp.exact = true;
      cp.degenerate = determinant(exact_hessian(S, xr)).is_zero();
      if (cp.degenerate) cp.note = "DegenerateHessian";
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(H);
      double smax = svd.singularValues()(0);
      double smin = svd.singularValues()(n - 1);
      cp.degenerate = smax == 0.0 || smin < 1e-8 * std::max(1.0, smax);
      cp.note = cp.degenerate ? "DegenerateHessian (non-isolated critical set)" : "not rationalizable";
    }
    out.points.push_back(cp);
  }
  return out;
}

int ghost_cycles(const Graph& g) {
  if (!g.typed()) return 0;
  std::vector<int> vof = g.vertex_of();
  std::vector<int> partner = g.partner();
  int cycles = 0;
  std::vector<bool> seen(g.vertices.size(), false);
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (seen[size_t(v)]) continue;
    int ghost = -1;
    for (int h : g.vertices[size_t(v)])
      if (g.type(h) == HalfEdgeType::Ghost) ghost = h;
    if (ghost < 0) continue;
    // follow ghost -> antighost partner -> that vertex's ghost ...
    int cur = v;
    bool closed = true;
    while (!seen[size_t(cur)]) {
      seen[size_t(cur)] = true;
      int gh = -1;
      for (int h : g.vertices[size_t(cur)])
        if (g.type(h) == HalfEdgeType::Ghost) gh = h;
      if (gh < 0 || partner[size_t(gh)] < 0) {
        closed = false;
        break;
      }
      cur = vof[size_t(partner[size_t(gh)])];
    }
    if (closed) ++cycles;
  }
  return cycles;
}

namespace {

struct WeightState {
  const Graph* g;
  const FeynmanRules* r;
  std::vector<int> order;      // half-edges in vertex-block order
  std::vector<int> vertex_end; // position in order after which vertex v is complete (-1 otherwise)
  std::vector<int> vof;
  std::vector<int> partner;
  std::vector<int> leaf_pos;
  std::vector<int> assign;
  Scalar acc;
};

void weight_rec(WeightState& st, size_t pos, const Scalar& prod) {
  if (pos == st.order.size()) {
    st.acc += prod;
    return;
  }
  int h = st.order[pos];
  HalfEdgeType t = st.g->type(h);
  int range = st.r->range[size_t(t)];
  for (int i = 0; i < range; ++i) {
    st.assign[size_t(h)] = i;
    Scalar p = prod;
    int q = st.partner[size_t(h)];
    if (q >= 0 && st.assign[size_t(q)] >= 0 && q != h) {
      Scalar e = st.r->propagator(st.g->type(q), st.assign[size_t(q)], t, i);
      if (e.is_zero()) continue;
      p *= e;
    }
    if (st.leaf_pos[size_t(h)] >= 0) {
      Scalar l = st.r->leaf(st.leaf_pos[size_t(h)], i);
      if (l.is_zero()) continue;
      p *= l;
    }
    int v = st.vertex_end[pos];
    if (v >= 0) {
      std::vector<HalfEdgeType> types;
      std::vector<int> idx;
      for (int hh : st.g->vertices[size_t(v)]) {
        types.push_back(st.g->type(hh));
        idx.push_back(st.assign[size_t(hh)]);
      }
      Scalar w = st.r->vertex(types, idx);
      if (w.is_zero()) continue;
      p *= w;
    }
    weight_rec(st, pos + 1, p);
  }
  st.assign[size_t(h)] = -1;
}

}  // namespace

Scalar evaluate_weight(const Graph& g, const FeynmanRules& rules) {
  g.validate();
  WeightState st;
  st.g = &g;
  st.r = &rules;
  st.vof = g.vertex_of();
  st.partner = g.partner();
  st.assign.assign(size_t(g.half_edges), -1);
  st.leaf_pos.assign(size_t(g.half_edges), -1);
  for (size_t i = 0; i < g.leaves.size(); ++i) st.leaf_pos[size_t(g.leaves[i])] = static_cast<int>(i);
  for (int v = 0; v < g.num_vertices(); ++v) {
    for (int h : g.vertices[size_t(v)]) {
      st.order.push_back(h);
      st.vertex_end.push_back(-1);
    }
    if (!g.vertices[size_t(v)].empty()) st.vertex_end.back() = v;
  }
  st.acc = Scalar(0);
  weight_rec(st, 0, Scalar(1));
  if (rules.ghost_cycle_sign && ghost_cycles(g) % 2) return -st.acc;
  return st.acc;
}

Scalar feynman_weight(const Graph& g, const std::vector<SymTensor>& interactions, const Matrix& K,
                      const std::vector<std::vector<Scalar>>& leaf_values) {
  for (const auto& vb : g.vertices) {
    size_t val = vb.size();
    if (val >= interactions.size() || interactions[val].rank() != static_cast<int>(val))
      throw Error(ErrorCode::MissingTensor, "no interaction tensor of rank " + std::to_string(val));
  }
  if (static_cast<int>(leaf_values.size()) < g.num_leaves())
    throw Error(ErrorCode::InvalidArgument, "graph has leaves but no leaf values were supplied");
  FeynmanRules r;
  r.range[size_t(HalfEdgeType::Field)] = K.rows();
  r.propagator = [&](HalfEdgeType, int i, HalfEdgeType, int j) { return K(i, j); };
  r.vertex = [&](const std::vector<HalfEdgeType>& t, const std::vector<int>& idx) {
    return interactions[t.size()].at(idx);
  };
  r.leaf = [&](int pos, int i) { return leaf_values[size_t(pos)][size_t(i)]; };
  return evaluate_weight(g, r);
}

HbarSeries normalized_weight(const Graph& g, long long aut, const Scalar& weight, WeightMode mode) {
  int power;
  if (mode == WeightMode::PartitionFunction) {
    power = g.num_edges() - g.num_vertices();
  } else {
    if (!g.connected()) throw Error(ErrorCode::Disconnected, "effective-action weights need connected graphs");
    power = g.loop_count();
  }
  HbarSeries s = HbarSeries::minus_i_hbar(power);
  s *= weight / Scalar(Rational(static_cast<long>(aut)));
  return s;
}

HbarSeries series_exp(const HbarSeries& w, int max_power) {
  if (!w.coeff(0).is_zero()) throw Error(ErrorCode::InvalidArgument, "series_exp needs a vanishing constant term");
  HbarSeries out(Scalar(1));
  HbarSeries term(Scalar(1));
  for (int k = 1; k <= max_power; ++k) {
    term = (term * w).truncated(max_power);
    term *= Scalar(Rational(1, k));
    if (term.is_zero()) break;
    out += term;
  }
  return out;
}

std::complex<double> AsymptoticSeries::evaluate(double hbar) const {
  std::complex<double> acc = 0;
  for (const auto& p : points) acc += p.prefactor.numeric(hbar) * p.corrections.evaluate(hbar);
  return acc;
}

std::complex<double> AsymptoticSeries::leading(double hbar) const {
  std::complex<double> acc = 0;
  for (const auto& p : points) acc += p.prefactor.numeric(hbar);
  return acc;
}

double AsymptoticSeries::leading_scale(double hbar) const {
  double acc = 0;
  for (const auto& p : points) acc += std::abs(p.prefactor.amplitude(hbar));
  return acc;
}

AsymptoticSeries expand(const ActionModel& model, int order, const ExpandOptions& opt) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "order must be nonnegative");
  std::vector<CriticalPoint> pts = model.critical_points;
  if (pts.empty()) {
    CriticalSearch cs = find_critical_points(model.S, seed_grid(model.dimension()));
    pts = cs.points;
  }
  AsymptoticSeries out;
  out.order = order;
  int n = model.dimension();
  for (const auto& cp : pts) {
    if (!cp.exact) continue;
    if (cp.degenerate) throw Error(ErrorCode::DegenerateHessian, "degenerate critical point in expand");
    TaylorData td = taylor_data(model.S, cp.x, 2 * order + 2);
    QuadAnalysis qa = quad_analyze(td.hessian);
    CriticalContribution cc;
    cc.point = cp.x;
    cc.S0 = td.value;
    cc.prefactor = fresnel_value(td.hessian, FresnelNormalization::Hbar);
    cc.prefactor.constant = model.density;
    cc.prefactor.S0 = td.value;
    Matrix K = Scalar(-1) * qa.K;

    EnumerateOptions eo;
    eo.max_excess = order;
    eo.bound = opt.bound;
    for (int k = 3; k < static_cast<int>(td.interactions.size()); ++k)
      if (!td.interactions[size_t(k)].is_zero()) eo.degrees.insert(k);
    HbarSeries total(Scalar(1));
    HbarSeries connected_sum;
    if (order > 0 && !eo.degrees.empty()) {
      for (const GraphClass& gc : enumerate_graphs(eo)) {
        ClassContribution c;
        c.key = gc.canonical_key;
        c.excess = gc.excess;
        c.loops = gc.loop_count;
        c.aut = gc.aut_order;
        c.connected = gc.representative.connected();
        c.weight = feynman_weight(gc.representative, td.interactions, K);
        c.contribution = normalized_weight(gc.representative, gc.aut_order, c.weight, WeightMode::PartitionFunction);
        total += c.contribution;
        if (c.connected) connected_sum += c.contribution;
        cc.classes.push_back(std::move(c));
      }
    }
    cc.corrections = total.truncated(order);
    if (opt.check_exponential) {
      HbarSeries viaexp = series_exp(connected_sum, order);
      if (!(viaexp == cc.corrections))
        throw Error(ErrorCode::InvalidArgument, "all-graph sum disagrees with exp(connected sum): " +
                                                    viaexp.to_string() + " vs " + cc.corrections.to_string());
    }
    (void)n;
    out.points.push_back(std::move(cc));
  }
  return out;
}

HbarSeries corrections_by_moments(const Poly& S, const std::vector<Scalar>& x0, int order) {
  int n = S.dim();
  Poly shifted = S.shifted(x0);
  SpacePtr space = make_space(default_names(n), {});
  std::vector<int> fl;
  for (int i = 0; i < n; ++i) fl.push_back(i);
  PerturbativeExpansion pe(space, fl, {}, SuperFunction::from_poly(space, shifted));
  auto by_hbar = pe.to_hbar(pe.partition(2 * order));
  HbarSeries out;
  for (const auto& [p, f] : by_hbar)
    if (p <= order) out.add_term(p, f.body().constant_term());
  return out;
}

}  // namespace phasekit
