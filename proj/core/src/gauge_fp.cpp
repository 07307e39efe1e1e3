#include "phasekit/gauge_fp.hpp"

#include <sstream>

#include "phasekit/error.hpp"
#include "phasekit/wick.hpp"

namespace phasekit {

namespace {

std::string point_string(const std::vector<Scalar>& x) {
  std::string s = "(";
  for (size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + x[i].to_string();
  return s + ")";
}

SymTensor tensor_at(const Poly& p, const std::vector<Scalar>& x0, int rank) {
  return SymTensor::from_homogeneous(p.shifted(x0).homogeneous_part(rank), rank);
}

// vector field applied to a function: v^i d_i g
Poly apply_field(const std::vector<Poly>& v, const Poly& g) {
  Poly out(g.dim());
  for (size_t i = 0; i < v.size(); ++i) out += v[i] * g.derivative(static_cast<int>(i));
  return out;
}

}  // namespace

GaugeCheck check_gauge_model(const GaugeModel& gm) {
  GaugeCheck r;
  int k = gm.lie_dim;
  int n = gm.n();
  if (static_cast<int>(gm.f.size()) != k || static_cast<int>(gm.v.size()) != k)
    throw Error(ErrorCode::InvalidArgument, "structure constants / vector fields do not match the Lie dimension");
  for (int a = 0; a < k; ++a) {
    if (static_cast<int>(gm.v[size_t(a)].size()) != n)
      throw Error(ErrorCode::InvalidArgument, "vector field has wrong number of components");
    Poly ls = apply_field(gm.v[size_t(a)], gm.action.S);
    if (!ls.is_zero()) {
      r.invariant = false;
      r.witnesses.push_back("L_v" + std::to_string(a + 1) + " S = " + ls.to_string(gm.action.names));
    }
  }
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c)
        if (gm.f_at(a, b, c) != -gm.f_at(b, a, c)) {
          r.antisymmetric = false;
          r.witnesses.push_back("f_{" + std::to_string(a + 1) + std::to_string(b + 1) + "}^" + std::to_string(c + 1) +
                                " is not antisymmetric");
        }
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c)
        for (int e = 0; e < k; ++e) {
          Scalar s(0);
          for (int d = 0; d < k; ++d)
            s += gm.f_at(a, b, d) * gm.f_at(d, c, e) + gm.f_at(b, c, d) * gm.f_at(d, a, e) +
                 gm.f_at(c, a, d) * gm.f_at(d, b, e);
          if (!s.is_zero() && r.jacobi) {
            r.jacobi = false;
            r.witnesses.push_back("Jacobi fails at (a,b,c;e) = (" + std::to_string(a + 1) + "," + std::to_string(b + 1) +
                                  "," + std::to_string(c + 1) + ";" + std::to_string(e + 1) + "): " + s.to_string());
          }
        }
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int i = 0; i < n; ++i) {
        Poly lhs = apply_field(gm.v[size_t(a)], gm.v[size_t(b)][size_t(i)]) -
                   apply_field(gm.v[size_t(b)], gm.v[size_t(a)][size_t(i)]);
        Poly rhs(n);
        for (int c = 0; c < k; ++c) rhs += gm.v[size_t(c)][size_t(i)] * gm.f_at(a, b, c);
        if (lhs != rhs && r.bracket) {
          r.bracket = false;
          r.witnesses.push_back("[v" + std::to_string(a + 1) + ", v" + std::to_string(b + 1) + "]^" +
                                std::to_string(i + 1) + " = " + lhs.to_string(gm.action.names) +
                                " but f_ab^c v_c = " + rhs.to_string(gm.action.names));
        }
      }
  return r;
}

void validate_gauge_model(const GaugeModel& gm) {
  GaugeCheck r = check_gauge_model(gm);
  if (!r.invariant) throw Error(ErrorCode::NotGaugeInvariant, r.witnesses.front());
  if (!r.ok()) throw Error(ErrorCode::BadStructureConstants, r.witnesses.front());
}

std::vector<std::vector<Poly>> fp_operator_poly(const GaugeModel& gm) {
  int k = gm.lie_dim;
  if (static_cast<int>(gm.phi.size()) != k)
    throw Error(ErrorCode::InvalidArgument, "gauge condition must have one component per Lie generator");
  std::vector<std::vector<Poly>> out(static_cast<size_t>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) out[size_t(a)].push_back(apply_field(gm.v[size_t(b)], gm.phi[size_t(a)]));
  return out;
}

Matrix fp_operator(const GaugeModel& gm, const std::vector<Scalar>& x) {
  auto P = fp_operator_poly(gm);
  int k = gm.lie_dim;
  Matrix m(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) m(a, b) = P[size_t(a)][size_t(b)].evaluate(x);
  return m;
}

std::vector<std::string> fp_names_even(const GaugeModel& gm) {
  std::vector<std::string> names = gm.action.names.empty() ? default_names(gm.n()) : gm.action.names;
  for (int a = 0; a < gm.lie_dim; ++a) names.push_back("lambda" + std::to_string(a + 1));
  return names;
}

std::vector<std::string> fp_names_odd(const GaugeModel& gm) {
  std::vector<std::string> names;
  for (int a = 0; a < gm.lie_dim; ++a) {
    names.push_back("cb" + std::to_string(a + 1));
    names.push_back("c" + std::to_string(a + 1));
  }
  return names;
}

FPModel build_fp(const GaugeModel& gm_in, bool validate) {
  GaugeModel gm = gm_in;
  if (gm.phi.empty())
    for (int a = 0; a < gm.lie_dim; ++a) gm.phi.emplace_back(gm.n());
  if (validate) validate_gauge_model(gm);
  int n = gm.n();
  int k = gm.lie_dim;
  FPModel fp;
  fp.gauge = gm;
  if (fp.gauge.action.names.empty()) fp.gauge.action.names = default_names(n);
  fp.space = make_space(fp_names_even(gm), fp_names_odd(gm));
  int ne = n + k;
  std::vector<int> xt;
  for (int i = 0; i < n; ++i) {
    xt.push_back(i);
    fp.x_index.push_back(i);
  }
  for (int a = 0; a < k; ++a) {
    fp.lambda_index.push_back(n + a);
    fp.cbar_index.push_back(2 * a);
    fp.c_index.push_back(2 * a + 1);
  }
  auto lift = [&](const Poly& p) { return SuperFunction::from_poly(fp.space, p.embedded(ne, xt)); };
  SuperFunction S = lift(gm.action.S);
  auto FP = fp_operator_poly(gm);
  for (int a = 0; a < k; ++a) {
    S += super_mul(SuperFunction::even_var(fp.space, n + a), lift(gm.phi[size_t(a)]));
    for (int b = 0; b < k; ++b) {
      if (FP[size_t(a)][size_t(b)].is_zero()) continue;
      S += super_mul(super_mul(SuperFunction::odd_var(fp.space, 2 * a), lift(FP[size_t(a)][size_t(b)])),
                     SuperFunction::odd_var(fp.space, 2 * b + 1));
    }
  }
  fp.S_fp = S;
  return fp;
}

FPCritical fp_critical_data(const FPModel& fp, const std::vector<Scalar>& x) {
  const GaugeModel& gm = fp.gauge;
  int n = gm.n();
  int k = gm.lie_dim;
  for (int i = 0; i < n; ++i)
    if (!gm.action.S.derivative(i).evaluate(x).is_zero())
      throw Error(ErrorCode::InvalidArgument, "grad S does not vanish at " + point_string(x));
  for (int a = 0; a < k; ++a)
    if (!gm.phi[size_t(a)].evaluate(x).is_zero())
      throw Error(ErrorCode::InvalidArgument, "point " + point_string(x) + " is not on the gauge slice");
  FPCritical c;
  c.x = x;
  c.fp = fp_operator(gm, x);
  c.det_fp = determinant(c.fp);
  if (c.det_fp.is_zero()) throw Error(ErrorCode::DegenerateFP, "FP operator is singular at " + point_string(x));
  c.fp_inv = inverse(c.fp);
  Matrix M(n + k, n + k);
  for (int i = 0; i < n; ++i) {
    Poly di = gm.action.S.derivative(i);
    for (int j = 0; j < n; ++j) M(i, j) = di.derivative(j).evaluate(x);
  }
  for (int a = 0; a < k; ++a)
    for (int i = 0; i < n; ++i) {
      Scalar d = gm.phi[size_t(a)].derivative(i).evaluate(x);
      M(n + a, i) = d;
      M(i, n + a) = d;
    }
  c.hessian = M;
  if (determinant(M).is_zero())
    throw Error(ErrorCode::DegenerateSlice, "gauge-slice Hessian is singular at " + point_string(x));
  c.hessian_inv = inverse(M);
  std::vector<int> xs, ls;
  for (int i = 0; i < n; ++i) xs.push_back(i);
  for (int a = 0; a < k; ++a) ls.push_back(n + a);
  c.K = c.hessian_inv.block(xs, xs);
  c.gamma = c.hessian_inv.block(xs, ls);
  if (!c.hessian_inv.block(ls, ls).is_zero())
    throw Error(ErrorCode::DegenerateSlice,
                "lambda-lambda block of the inverse Hessian is nonzero at " + point_string(x) +
                    " (S is not degenerate exactly along the orbit)");
  return c;
}

FPCriticalSearch fp_critical_points(const FPModel& fp, const std::vector<std::vector<double>>& seeds_in) {
  const GaugeModel& gm = fp.gauge;
  int n = gm.n();
  int k = gm.lie_dim;
  std::vector<int> xt;
  for (int i = 0; i < n; ++i) xt.push_back(i);
  Poly G = gm.action.S.embedded(n + k, xt);
  for (int a = 0; a < k; ++a) G += Poly::variable(n + k, n + a) * gm.phi[size_t(a)].embedded(n + k, xt);
  std::vector<std::vector<double>> seeds;
  for (auto s : (seeds_in.empty() ? seed_grid(n) : seeds_in)) {
    s.resize(size_t(n + k), 0.0);
    seeds.push_back(s);
  }
  CriticalSearch cs = find_critical_points(G, seeds);
  FPCriticalSearch out;
  for (const auto& cp : cs.points) {
    std::vector<double> xd(cp.approx.begin(), cp.approx.begin() + n);
    if (!cp.exact) {
      out.diagnostics.push_back({xd, cp.note});
      continue;
    }
    std::vector<Scalar> x(cp.x.begin(), cp.x.begin() + n);
    bool lambda_zero = true;
    for (int a = 0; a < k; ++a) lambda_zero = lambda_zero && cp.x[size_t(n + a)].is_zero();
    if (!lambda_zero) {
      out.diagnostics.push_back({xd, "critical point of S restricted to the slice with lambda != 0 (not critical for S)"});
      continue;
    }
    try {
      out.points.push_back(fp_critical_data(fp, x));
    } catch (const Error& e) {
      out.diagnostics.push_back({xd, e.what()});
    }
  }
  return out;
}

AsymptoticSeries fp_expand(const FPModel& fp, int order, const FPExpandOptions& opt) {
  const GaugeModel& gm = fp.gauge;
  int n = gm.n();
  int k = gm.lie_dim;
  std::vector<FPCritical> pts;
  if (!opt.points.empty()) {
    for (const auto& x : opt.points) pts.push_back(fp_critical_data(fp, x));
  } else {
    pts = fp_critical_points(fp).points;
  }
  auto FP = fp_operator_poly(gm);
  AsymptoticSeries out;
  out.order = order;
  int maxdeg = 2 * order + 2;
  for (const FPCritical& c : pts) {
    if (!opt.half_space_normal.empty()) {
      Scalar s = opt.half_space_offset;
      for (int i = 0; i < n; ++i) s += opt.half_space_normal[size_t(i)] * c.x[size_t(i)];
      if (!(s.re() > 0)) continue;
    }
    TaylorData td = taylor_data(gm.action.S, c.x, maxdeg);
    // tensors of phi (rank >= 2) and FP (rank >= 1)
    std::vector<std::vector<SymTensor>> phiT(static_cast<size_t>(k));
    std::vector<std::vector<std::vector<SymTensor>>> fpT(static_cast<size_t>(k),
                                                         std::vector<std::vector<SymTensor>>(static_cast<size_t>(k)));
    TypeSystem ts;
    for (int s = 3; s < static_cast<int>(td.interactions.size()); ++s)
      if (!td.interactions[size_t(s)].is_zero()) ts.field_degrees.insert(s);
    for (int a = 0; a < k; ++a) {
      phiT[size_t(a)].resize(size_t(maxdeg));
      for (int l = 2; l < maxdeg; ++l) {
        phiT[size_t(a)][size_t(l)] = tensor_at(gm.phi[size_t(a)], c.x, l);
        if (!phiT[size_t(a)][size_t(l)].is_zero()) ts.lagrange_degrees.insert(l);
      }
      for (int b = 0; b < k; ++b) {
        fpT[size_t(a)][size_t(b)].resize(size_t(maxdeg - 1));
        for (int m = 1; m < maxdeg - 1; ++m) {
          fpT[size_t(a)][size_t(b)][size_t(m)] = tensor_at(FP[size_t(a)][size_t(b)], c.x, m);
          if (!fpT[size_t(a)][size_t(b)][size_t(m)].is_zero()) ts.ghost_degrees.insert(m);
        }
      }
    }
    Matrix Kfull = Scalar(-1) * c.hessian_inv;
    Matrix Kghost = Scalar(-1) * c.fp_inv;

    FeynmanRules rules;
    rules.range = {n, k, k, k};
    rules.ghost_cycle_sign = true;
    rules.propagator = [&](HalfEdgeType ta, int i, HalfEdgeType tb, int j) -> Scalar {
      auto idx = [&](HalfEdgeType t, int x) { return t == HalfEdgeType::Lagrange ? n + x : x; };
      if (ta == HalfEdgeType::Ghost && tb == HalfEdgeType::Antighost) return Kghost(i, j);
      if (ta == HalfEdgeType::Antighost && tb == HalfEdgeType::Ghost) return Kghost(j, i);
      return Kfull(idx(ta, i), idx(tb, j));
    };
    rules.vertex = [&](const std::vector<HalfEdgeType>& t, const std::vector<int>& idx) -> Scalar {
      int ghost = -1, anti = -1, lag = -1;
      std::vector<int> fields;
      for (size_t h = 0; h < t.size(); ++h) {
        switch (t[h]) {
          case HalfEdgeType::Ghost: ghost = idx[h]; break;
          case HalfEdgeType::Antighost: anti = idx[h]; break;
          case HalfEdgeType::Lagrange: lag = idx[h]; break;
          case HalfEdgeType::Field: fields.push_back(idx[h]); break;
        }
      }
      size_t r = fields.size();
      if (ghost >= 0) {
        const auto& v = fpT[size_t(anti)][size_t(ghost)];
        return r < v.size() ? v[r].at(fields) : Scalar(0);
      }
      if (lag >= 0) {
        const auto& v = phiT[size_t(lag)];
        return r < v.size() ? v[r].at(fields) : Scalar(0);
      }
      return r < td.interactions.size() ? td.interactions[r].at(fields) : Scalar(0);
    };

    CriticalContribution cc;
    cc.point = c.x;
    cc.S0 = td.value;
    QuadAnalysis qa = quad_analyze(c.hessian);
    Prefactor& p = cc.prefactor;
    Scalar det_used = c.det_fp;
    int Nused = gm.N;
    if (opt.mode == DetMode::Abs) {
      det_used = Scalar(abs(c.det_fp.re()));
    } else {
      Nused = opt.signed_N;
    }
    p.constant = det_used * Scalar(gm.vol_rational) / Scalar(Nused) * gm.action.density;
    p.two_pi_half = n - k;
    p.hbar_half = n - k;
    p.pi_half = 2 * gm.vol_pi_power;
    p.phase_eighths = ((qa.signature % 8) + 8) % 8;
    p.abs_det = abs(qa.det.re());
    p.S0 = td.value;

    HbarSeries total(Scalar(1));
    HbarSeries connected_sum;
    bool any = !ts.field_degrees.empty() || !ts.lagrange_degrees.empty() || !ts.ghost_degrees.empty();
    if (order > 0 && any) {
      EnumerateOptions eo;
      eo.max_excess = order;
      eo.typed = ts;
      eo.bound = opt.bound;
      for (const GraphClass& gc : enumerate_graphs(eo)) {
        ClassContribution cl;
        cl.key = gc.canonical_key;
        cl.excess = gc.excess;
        cl.loops = gc.loop_count;
        cl.aut = gc.aut_order;
        cl.connected = gc.representative.connected();
        cl.weight = evaluate_weight(gc.representative, rules);
        cl.contribution =
            normalized_weight(gc.representative, gc.aut_order, cl.weight, WeightMode::PartitionFunction);
        total += cl.contribution;
        if (cl.connected) connected_sum += cl.contribution;
        cc.classes.push_back(std::move(cl));
      }
    }
    cc.corrections = total.truncated(order);
    if (opt.check_exponential && !(series_exp(connected_sum, order) == cc.corrections))
      throw Error(ErrorCode::InvalidArgument, "typed all-graph sum disagrees with exp(connected sum)");
    out.points.push_back(std::move(cc));
  }
  return out;
}

std::vector<SuperFunction> brst_generator_images_even(const FPModel& fp) {
  const GaugeModel& gm = fp.gauge;
  int n = gm.n();
  int k = gm.lie_dim;
  std::vector<int> xt;
  for (int i = 0; i < n; ++i) xt.push_back(i);
  std::vector<SuperFunction> out;
  for (int i = 0; i < n; ++i) {
    SuperFunction q(fp.space);
    for (int a = 0; a < k; ++a) {
      const Poly& vi = gm.v[size_t(a)][size_t(i)];
      if (vi.is_zero()) continue;
      q += super_mul(SuperFunction::odd_var(fp.space, fp.c_index[size_t(a)]),
                     SuperFunction::from_poly(fp.space, vi.embedded(n + k, xt)));
    }
    out.push_back(q);
  }
  for (int a = 0; a < k; ++a) out.emplace_back(fp.space);  // Q lambda = 0
  return out;
}

std::vector<SuperFunction> brst_generator_images_odd(const FPModel& fp) {
  const GaugeModel& gm = fp.gauge;
  int k = gm.lie_dim;
  std::vector<SuperFunction> out(static_cast<size_t>(fp.space->n_odd()), SuperFunction(fp.space));
  for (int c = 0; c < k; ++c) {
    SuperFunction q(fp.space);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        Scalar f = gm.f_at(a, b, c);
        if (f.is_zero()) continue;
        q += super_mul(SuperFunction::odd_var(fp.space, fp.c_index[size_t(a)]),
                       SuperFunction::odd_var(fp.space, fp.c_index[size_t(b)])) *
             (f * Scalar(Rational(1, 2)));
      }
    out[size_t(fp.c_index[size_t(c)])] = q;
    out[size_t(fp.cbar_index[size_t(c)])] = SuperFunction::even_var(fp.space, fp.lambda_index[size_t(c)]);
  }
  return out;
}

SuperFunction brst_apply(const FPModel& fp, const SuperFunction& f) {
  if (!f.space() || !(*f.space() == *fp.space)) throw Error(ErrorCode::SpaceMismatch, "function is not in the FP space");
  auto qe = brst_generator_images_even(fp);
  auto qo = brst_generator_images_odd(fp);
  SuperFunction out(fp.space);
  int no = fp.space->n_odd();
  for (const auto& [mask, p] : f.terms()) {
    std::vector<int> bits;
    for (int j = 0; j < no; ++j)
      if (mask & (OddMask(1) << j)) bits.push_back(j);
    int r = static_cast<int>(bits.size());
    // p * Q(theta_1 ... theta_r)
    for (int kk = 0; kk < r; ++kk) {
      OddMask left = 0, right = 0;
      for (int j = 0; j < kk; ++j) left |= OddMask(1) << bits[size_t(j)];
      for (int j = kk + 1; j < r; ++j) right |= OddMask(1) << bits[size_t(j)];
      SuperFunction L(fp.space);
      L.add(left, p);
      SuperFunction R = SuperFunction::term(fp.space, Monomial(size_t(fp.space->n_even()), 0), right, Scalar(1));
      SuperFunction t = super_mul(super_mul(L, qo[size_t(bits[size_t(kk)])]), R);
      out += ((r - 1 - kk) % 2) ? -t : t;
    }
    // (-1)^r Q(p) theta
    SuperFunction qp(fp.space);
    for (int i = 0; i < fp.space->n_even(); ++i) {
      if (qe[size_t(i)].is_zero()) continue;
      Poly d = p.derivative(i);
      if (d.is_zero()) continue;
      qp += super_mul(SuperFunction::from_poly(fp.space, d), qe[size_t(i)]);
    }
    SuperFunction theta = SuperFunction::term(fp.space, Monomial(size_t(fp.space->n_even()), 0), mask, Scalar(1));
    SuperFunction t = super_mul(qp, theta);
    out += (r % 2) ? -t : t;
  }
  return out;
}

SuperFunction gauge_fermion(const FPModel& fp) {
  const GaugeModel& gm = fp.gauge;
  int n = gm.n();
  int k = gm.lie_dim;
  std::vector<int> xt;
  for (int i = 0; i < n; ++i) xt.push_back(i);
  SuperFunction psi(fp.space);
  for (int a = 0; a < k; ++a)
    psi += super_mul(SuperFunction::odd_var(fp.space, fp.cbar_index[size_t(a)]),
                     SuperFunction::from_poly(fp.space, gm.phi[size_t(a)].embedded(n + k, xt)));
  return psi;
}

GaugeFermionCheck gauge_fermion_check(const FPModel& fp) {
  const GaugeModel& gm = fp.gauge;
  std::vector<int> xt;
  for (int i = 0; i < gm.n(); ++i) xt.push_back(i);
  SuperFunction S = SuperFunction::from_poly(fp.space, gm.action.S.embedded(gm.n() + gm.lie_dim, xt));
  GaugeFermionCheck r;
  r.difference = S + brst_apply(fp, gauge_fermion(fp)) - fp.S_fp;
  r.ok = r.difference.is_zero();
  r.report = r.ok ? "S + Q psi = S_FP" : "S + Q psi - S_FP = " + r.difference.to_string();
  return r;
}

}  // namespace phasekit
