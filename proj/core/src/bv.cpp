#include "phasekit/bv.hpp"

#include <set>

#include "phasekit/error.hpp"
#include "phasekit/gaussian.hpp"
#include "phasekit/wick.hpp"

namespace phasekit {

namespace {

Generator lookup(const SuperSpace& sp, const std::string& name) {
  if (sp.has_even(name)) return {false, sp.even_index(name)};
  if (sp.has_odd(name)) return {true, sp.odd_index(name)};
  throw Error(ErrorCode::UnknownGenerator, name);
}

std::string name_of(const SuperSpace& sp, const Generator& g) {
  return g.odd ? sp.odd_names()[size_t(g.index)] : sp.even_names()[size_t(g.index)];
}

bool depends_on(const SuperFunction& f, const Generator& g) {
  for (const auto& [mask, p] : f.terms()) {
    if (g.odd) {
      if (mask & (OddMask(1) << g.index)) return true;
    } else {
      for (const auto& [m, c] : p.terms())
        if (m[size_t(g.index)] > 0) return true;
    }
  }
  return false;
}

// Re-express f in `target` (matching generators by name); throws if f
// depends on a generator missing from the target.
SuperFunction project(const SuperFunction& f, const SpacePtr& target) {
  const SuperSpace& sp = *f.space();
  std::vector<SuperFunction> ev, od;
  for (int i = 0; i < sp.n_even(); ++i) {
    const std::string& n = sp.even_names()[size_t(i)];
    if (target->has_even(n)) {
      ev.push_back(SuperFunction::var(target, n));
    } else {
      if (depends_on(f, {false, i})) throw Error(ErrorCode::InvalidArgument, "function still depends on " + n);
      ev.emplace_back(target);
    }
  }
  for (int a = 0; a < sp.n_odd(); ++a) {
    const std::string& n = sp.odd_names()[size_t(a)];
    if (target->has_odd(n)) {
      od.push_back(SuperFunction::var(target, n));
    } else {
      if (depends_on(f, {true, a})) throw Error(ErrorCode::InvalidArgument, "function still depends on " + n);
      od.emplace_back(target);
    }
  }
  if (ev.empty() && od.empty()) {
    SuperFunction out(target);
    out.add(0, Poly::constant(target->n_even(), f.body().constant_term()));
    return out;
  }
  return substitute(f, ev, od);
}

}  // namespace

BVSpace::BVSpace(SpacePtr space, const std::vector<std::pair<std::string, std::string>>& pairs)
    : space_(std::move(space)) {
  std::set<std::string> used;
  for (const auto& [f, a] : pairs) {
    BVPair p{lookup(*space_, f), lookup(*space_, a)};
    if (p.field.odd == p.anti.odd)
      throw Error(ErrorCode::InvalidArgument, "Darboux pair (" + f + ", " + a + ") must have opposite parities");
    if (!used.insert(f).second || !used.insert(a).second)
      throw Error(ErrorCode::InvalidArgument, "generator used in two Darboux pairs");
    pairs_.push_back(p);
  }
  if (static_cast<int>(used.size()) != space_->n_even() + space_->n_odd())
    throw Error(ErrorCode::InvalidArgument, "every generator must belong to a Darboux pair");
}

std::string BVSpace::field_name(int pair) const { return name_of(*space_, pairs_[size_t(pair)].field); }
std::string BVSpace::anti_name(int pair) const { return name_of(*space_, pairs_[size_t(pair)].anti); }

BVSpace BVSpace::subspace(const std::vector<int>& pair_indices) const {
  std::set<std::string> keep;
  for (int p : pair_indices) {
    keep.insert(field_name(p));
    keep.insert(anti_name(p));
  }
  std::vector<std::string> ev, od;
  for (const auto& n : space_->even_names())
    if (keep.count(n)) ev.push_back(n);
  for (const auto& n : space_->odd_names())
    if (keep.count(n)) od.push_back(n);
  std::vector<std::pair<std::string, std::string>> pr;
  for (int p : pair_indices) pr.emplace_back(field_name(p), anti_name(p));
  return BVSpace(make_space(ev, od), pr);
}

SuperFunction derivative(const SuperFunction& f, const Generator& g, Side side) {
  return g.odd ? odd_derivative(f, g.index, side) : even_derivative(f, g.index);
}

SuperFunction bv_bracket(const BVSpace& bv, const SuperFunction& f, const SuperFunction& g) {
  if (!f.space() || !g.space() || !(*f.space() == *bv.space()) || !(*g.space() == *bv.space()))
    throw Error(ErrorCode::SpaceMismatch, "bracket arguments must live in the BV space");
  SuperFunction out(bv.space());
  for (const auto& p : bv.pairs()) {
    SuperFunction a = derivative(f, p.field, Side::Right);
    if (!a.is_zero()) out += super_mul(a, derivative(g, p.anti, Side::Left));
    SuperFunction b = derivative(f, p.anti, Side::Right);
    if (!b.is_zero()) out -= super_mul(b, derivative(g, p.field, Side::Left));
  }
  return out;
}

SuperFunction bv_laplacian(const BVSpace& bv, const SuperFunction& f) {
  if (!f.space() || !(*f.space() == *bv.space())) throw Error(ErrorCode::SpaceMismatch, "Laplacian argument");
  SuperFunction out(bv.space());
  for (const auto& p : bv.pairs()) {
    SuperFunction t = derivative(derivative(f, p.anti, Side::Left), p.field, Side::Left);
    out += p.field.odd ? -t : t;
  }
  return out;
}

bool MasterResiduals::qme_zero() const {
  for (const auto& [k, f] : qme)
    if (!f.is_zero()) return false;
  return true;
}

MasterResiduals master_residuals(const BVSpace& bv, const BVAction& S) {
  MasterResiduals r;
  auto it0 = S.find(0);
  SuperFunction S0 = it0 == S.end() ? SuperFunction(bv.space()) : it0->second;
  Scalar half(Rational(1, 2));
  r.cme = bv_bracket(bv, S0, S0) * half;
  auto add = [&](int p, const SuperFunction& f) {
    if (f.is_zero()) return;
    auto it = r.qme.find(p);
    if (it == r.qme.end()) r.qme.emplace(p, f);
    else it->second += f;
  };
  for (const auto& [j, Sj] : S)
    for (const auto& [k, Sk] : S) add(j + k, bv_bracket(bv, Sj, Sk) * half);
  for (const auto& [j, Sj] : S) add(j + 1, bv_laplacian(bv, Sj) * (-Scalar::i()));
  for (auto it = r.qme.begin(); it != r.qme.end();) {
    if (it->second.is_zero()) it = r.qme.erase(it);
    else ++it;
  }
  return r;
}

MasterResiduals master_residuals(const BVSpace& bv, const SuperFunction& S) {
  return master_residuals(bv, BVAction{{0, S}});
}

SuperFunction exponential_identity_residual(const BVSpace& bv, const SuperFunction& S, int max_k) {
  SuperFunction dS = bv_laplacian(bv, S);
  SuperFunction br = bv_bracket(bv, S, S) * Scalar(Rational(1, 2));
  std::vector<SuperFunction> P{SuperFunction::constant(bv.space(), Scalar(1))};
  for (int k = 1; k <= max_k; ++k) {
    P.push_back(super_mul(P.back(), S) * Scalar(Rational(1, k)));
    SuperFunction lhs = bv_laplacian(bv, P[size_t(k)]);
    SuperFunction rhs = super_mul(dS, P[size_t(k - 1)]);
    if (k >= 2) rhs += super_mul(br, P[size_t(k - 2)]);
    SuperFunction res = lhs - rhs;
    if (!res.is_zero()) return res;
  }
  return SuperFunction(bv.space());
}

SuperFunction restrict_to_lagrangian(const BVSpace& bv, const SuperFunction& S, const LinearLagrangian& L) {
  const SpacePtr& sp = bv.space();
  std::vector<int> pairs = L.pairs;
  if (pairs.empty())
    for (int p = 0; p < static_cast<int>(bv.pairs().size()); ++p) pairs.push_back(p);
  SuperFunction psi = L.psi.space() ? L.psi : SuperFunction(sp);
  if (!psi.is_zero() && psi.parity() != 1) throw Error(ErrorCode::InvalidArgument, "gauge fermion must be odd");
  std::vector<SuperFunction> ev, od;
  for (int i = 0; i < sp->n_even(); ++i) ev.push_back(SuperFunction::even_var(sp, i));
  for (int a = 0; a < sp->n_odd(); ++a) od.push_back(SuperFunction::odd_var(sp, a));
  for (int p : pairs) {
    const BVPair& pr = bv.pairs()[size_t(p)];
    if (depends_on(psi, pr.anti)) throw Error(ErrorCode::InvalidArgument, "gauge fermion depends on an antifield");
    SuperFunction img = derivative(psi, pr.field, Side::Right);
    (pr.anti.odd ? od[size_t(pr.anti.index)] : ev[size_t(pr.anti.index)]) = img;
  }
  return substitute(S, ev, od);
}

std::string antifield_name(const std::string& field) { return field + "+"; }

BVModel bv_from_gauge(const GaugeModel& gm_in, BVFieldContent content) {
  GaugeModel gm = gm_in;
  if (gm.phi.empty())
    for (int a = 0; a < gm.lie_dim; ++a) gm.phi.emplace_back(gm.n());
  FPModel fp = build_fp(gm, false);
  const SuperSpace& fs = *fp.space;
  auto qe = brst_generator_images_even(fp);
  auto qo = brst_generator_images_odd(fp);

  // fields
  std::vector<std::string> even_fields, odd_fields;
  std::vector<SuperFunction> images_even, images_odd;
  for (int i : fp.x_index) {
    even_fields.push_back(fs.even_names()[size_t(i)]);
    images_even.push_back(qe[size_t(i)]);
  }
  if (content == BVFieldContent::Full) {
    for (int i : fp.lambda_index) {
      even_fields.push_back(fs.even_names()[size_t(i)]);
      images_even.push_back(qe[size_t(i)]);
    }
    for (int a = 0; a < fs.n_odd(); ++a) {
      odd_fields.push_back(fs.odd_names()[size_t(a)]);
      images_odd.push_back(qo[size_t(a)]);
    }
  } else {
    for (int a : fp.c_index) {
      odd_fields.push_back(fs.odd_names()[size_t(a)]);
      images_odd.push_back(qo[size_t(a)]);
    }
  }
  std::vector<std::string> even = even_fields, odd = odd_fields;
  for (const auto& n : odd_fields) even.push_back(antifield_name(n));
  for (const auto& n : even_fields) odd.push_back(antifield_name(n));
  SpacePtr sp = make_space(even, odd);
  std::vector<std::pair<std::string, std::string>> pr;
  for (const auto& n : even_fields) pr.emplace_back(n, antifield_name(n));
  for (const auto& n : odd_fields) pr.emplace_back(n, antifield_name(n));
  BVModel out;
  out.bv = BVSpace(sp, pr);
  out.fp = fp;

  std::vector<int> xt;
  for (int i = 0; i < gm.n(); ++i) xt.push_back(i);
  SuperFunction S = project(SuperFunction::from_poly(fp.space, gm.action.S.embedded(fs.n_even(), xt)), sp);
  for (size_t i = 0; i < even_fields.size(); ++i)
    S += super_mul(SuperFunction::var(sp, antifield_name(even_fields[i])), project(images_even[i], sp));
  for (size_t a = 0; a < odd_fields.size(); ++a)
    S += super_mul(SuperFunction::var(sp, antifield_name(odd_fields[a])), project(images_odd[a], sp));
  out.action[0] = S;
  MasterResiduals r = master_residuals(out.bv, S);
  if (!r.cme_zero()) throw Error(ErrorCode::CMEViolation, "(S,S)/2 = " + r.cme.to_string());
  return out;
}

BVMeasure fp_measure(const GaugeModel& gm) {
  BVMeasure m;
  m.constant = Scalar(gm.vol_rational) / (Scalar(gm.N) * i_pow(gm.lie_dim));
  m.two_pi_half = -2 * gm.lie_dim;
  m.pi_half = 2 * gm.vol_pi_power;
  return m;
}

AsymptoticSeries bv_integral(const BVSpace& bv, const BVAction& S, const LinearLagrangian& L, int order,
                             const BVIntegralOptions& opt) {
  if (!L.pairs.empty() && L.pairs.size() != bv.pairs().size())
    throw Error(ErrorCode::InvalidArgument, "the BV integral needs a Lagrangian in every Darboux pair");
  const SuperSpace& sp = *bv.space();
  std::vector<std::string> ev, od;
  std::set<std::string> fields;
  for (int p = 0; p < static_cast<int>(bv.pairs().size()); ++p) fields.insert(bv.field_name(p));
  for (const auto& n : sp.even_names())
    if (fields.count(n)) ev.push_back(n);
  for (const auto& n : sp.odd_names())
    if (fields.count(n)) od.push_back(n);
  SpacePtr F = make_space(ev, od);
  int ne = F->n_even();
  int no = F->n_odd();

  std::map<int, SuperFunction> R;
  for (const auto& [k, Sk] : S) R[k] = project(restrict_to_lagrangian(bv, Sk, L), F);
  if (!R.count(0)) R[0] = SuperFunction(F);

  std::vector<std::vector<Scalar>> pts = opt.points;
  if (pts.empty()) {
    CriticalSearch cs = find_critical_points(R[0].body(), seed_grid(ne));
    for (const auto& cp : cs.points)
      if (cp.exact && !cp.degenerate) pts.push_back(cp.x);
  }
  AsymptoticSeries out;
  out.order = order;
  std::vector<int> fe, fo;
  for (int i = 0; i < ne; ++i) fe.push_back(i);
  for (int a = 0; a < no; ++a) fo.push_back(a);
  for (const auto& x0 : pts) {
    if (static_cast<int>(x0.size()) != ne) throw Error(ErrorCode::InvalidArgument, "expansion point dimension");
    std::vector<SuperFunction> eimg, oimg;
    for (int i = 0; i < ne; ++i)
      eimg.push_back(SuperFunction::even_var(F, i) + SuperFunction::constant(F, x0[size_t(i)]));
    for (int a = 0; a < no; ++a) oimg.push_back(SuperFunction::odd_var(F, a));
    std::map<int, SuperFunction> shifted;
    for (const auto& [k, f] : R) shifted[k] = substitute(f, eimg, oimg);
    PerturbativeExpansion pe(F, fe, fo, shifted);
    const GaussianExpectation& ge = pe.gaussian();
    CriticalContribution cc;
    cc.point = x0;
    cc.S0 = pe.split().classical.body().constant_term();
    if (!(pe.split().classical - SuperFunction::constant(F, cc.S0)).is_zero())
      throw Error(ErrorCode::InvalidArgument, "classical part is not constant");
    if (ne > 0) cc.prefactor = fresnel_value(ge.even_hessian(), FresnelNormalization::Hbar);
    cc.prefactor.constant = opt.measure.constant * ge.odd_normalization();
    cc.prefactor.hbar_half -= no;
    cc.prefactor.two_pi_half += opt.measure.two_pi_half;
    cc.prefactor.pi_half += opt.measure.pi_half;
    cc.prefactor.S0 = cc.S0;
    auto by_hbar = pe.to_hbar(pe.partition(2 * order));
    HbarSeries corr;
    for (const auto& [p, f] : by_hbar)
      if (p <= order) corr.add_term(p, f.body().constant_term());
    cc.corrections = corr;
    out.points.push_back(std::move(cc));
  }
  return out;
}

BVAction truncate_action(const BVAction& S, int max_hbar, int max_degree) {
  BVAction out;
  for (const auto& [k, f] : S) {
    if (k > max_hbar) continue;
    SuperFunction t = f.truncated(max_degree);
    if (!t.is_zero()) out[k] = t;
  }
  return out;
}

PushforwardResult bv_pushforward(const BVSpace& bv, const BVAction& S, const std::vector<std::string>& integrate,
                                 const SuperFunction& psi, int max_hbar, int max_degree) {
  const SpacePtr& sp = bv.space();
  std::set<std::string> names(integrate.begin(), integrate.end());
  std::vector<int> yprime, y;
  for (int p = 0; p < static_cast<int>(bv.pairs().size()); ++p) {
    bool f = names.count(bv.field_name(p)) > 0;
    bool a = names.count(bv.anti_name(p)) > 0;
    if (f != a)
      throw Error(ErrorCode::SplitNotSymplectic,
                  "generator " + (f ? bv.field_name(p) : bv.anti_name(p)) + " is split from its Darboux partner");
    (f ? yprime : y).push_back(p);
    names.erase(bv.field_name(p));
    names.erase(bv.anti_name(p));
  }
  if (!names.empty()) throw Error(ErrorCode::UnknownGenerator, *names.begin());
  LinearLagrangian L{psi.space() ? psi : SuperFunction(sp), yprime};
  for (int p : y)
    if (depends_on(L.psi, bv.pairs()[size_t(p)].field))
      throw Error(ErrorCode::InvalidArgument, "gauge fermion of the fiber depends on a base field");

  std::vector<int> fe, fo;
  for (int p : yprime) {
    const BVPair& pr = bv.pairs()[size_t(p)];
    (pr.field.odd ? fo : fe).push_back(pr.field.index);
  }
  std::map<int, SuperFunction> action;
  BVAction constants;
  for (const auto& [k, f] : S) {
    SuperFunction r = restrict_to_lagrangian(bv, f, L);
    if (k >= 1) {
      Scalar c = r.body().constant_term();
      if (!c.is_zero()) {
        constants[k] = SuperFunction::constant(sp, c);
        r -= SuperFunction::constant(sp, c);
      }
    }
    action[k] = r;
  }
  if (!action.count(0)) action[0] = SuperFunction(sp);
  int W = std::max(1, 2 * (max_hbar - 1 + max_degree));
  PerturbativeExpansion pe(sp, fe, fo, action);
  BVAction eff;
  eff[0] = pe.split().classical;
  for (const auto& [p, f] : pe.to_hbar(pe.connected(W))) {
    SuperFunction t = f * (-Scalar::i());
    auto it = eff.find(p + 1);
    if (it == eff.end()) eff.emplace(p + 1, t);
    else it->second += t;
  }
  for (const auto& [k, c] : constants) {
    auto it = eff.find(k);
    if (it == eff.end()) eff.emplace(k, c);
    else it->second += c;
  }
  PushforwardResult out;
  out.y = bv.subspace(y);
  out.max_weight = W;
  for (const auto& [k, f] : truncate_action(eff, max_hbar, max_degree)) {
    SuperFunction g = project(f, out.y.space());
    if (!g.is_zero()) out.effective[k] = g;
  }
  return out;
}

}  // namespace phasekit
