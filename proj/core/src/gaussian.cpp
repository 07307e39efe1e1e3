#include "phasekit/gaussian.hpp"

#include <algorithm>

#include "phasekit/error.hpp"

namespace phasekit {

namespace {

OddMask bit(int i) { return OddMask(1) << i; }

}  // namespace

GaussianExpectation::GaussianExpectation(SpacePtr space, std::vector<int> fluct_even,
                                         std::vector<int> fluct_odd, const SuperFunction& quadratic)
    : space_(std::move(space)), fluct_even_(std::move(fluct_even)), fluct_odd_(std::move(fluct_odd)) {
  int ne = static_cast<int>(fluct_even_.size());
  even_pos_.assign(size_t(space_->n_even()), -1);
  for (int a = 0; a < ne; ++a) even_pos_[size_t(fluct_even_[size_t(a)])] = a;
  for (int v : fluct_odd_) fluct_odd_mask_ |= bit(v);

  // Even block: (1/2) u.M.u
  M_ = Matrix(ne, ne);
  SuperFunction odd_part(space_);
  for (const auto& [mask, p] : quadratic.terms()) {
    if (mask == 0) {
      for (const auto& [m, c] : p.terms()) {
        std::vector<int> idx;
        for (int i = 0; i < space_->n_even(); ++i)
          for (int e = 0; e < m[size_t(i)]; ++e) idx.push_back(i);
        if (idx.size() != 2 || even_pos_[size_t(idx[0])] < 0 || even_pos_[size_t(idx[1])] < 0)
          throw Error(ErrorCode::InvalidArgument, "quadratic form involves non-fluctuation generators");
        int a = even_pos_[size_t(idx[0])];
        int b = even_pos_[size_t(idx[1])];
        if (a == b) M_(a, a) = c * Scalar(2);
        else {
          M_(a, b) = c;
          M_(b, a) = c;
        }
      }
    } else {
      if (popcount(mask) != 2 || (mask & ~fluct_odd_mask_) || p.total_degree() != 0)
        throw Error(ErrorCode::InvalidArgument, "quadratic form mixes even and odd fluctuations");
      odd_part.add(mask, p);
    }
  }
  if (ne > 0) {
    if (determinant(M_).is_zero())
      throw Error(ErrorCode::DegenerateRestriction, "even Hessian is degenerate: " + M_.to_string());
    C_ = Scalar::i() * inverse(M_);
  }

  // Odd block: e^{i q_odd} in a pure odd space ordered like the full space.
  std::vector<int> sorted = fluct_odd_;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::string> names;
  for (int v : sorted) names.push_back(space_->odd_names()[size_t(v)]);
  odd_space_ = make_space({}, names);
  SuperFunction q(odd_space_);
  for (const auto& [mask, p] : odd_part.terms()) {
    OddMask local = 0;
    for (size_t j = 0; j < sorted.size(); ++j)
      if (mask & bit(sorted[j])) local |= bit(int(j));
    q.add_term(Monomial{}, local, p.constant_term());
  }
  odd_weight_ = super_exp(q * Scalar::i(), static_cast<int>(sorted.size()) / 2 + 1);
  std::vector<int> order;
  for (int v : fluct_odd_) order.push_back(int(std::find(sorted.begin(), sorted.end(), v) - sorted.begin()));
  odd_top_ = berezin_integral(odd_weight_, order).body().constant_term();
  if (odd_top_.is_zero())
    throw Error(ErrorCode::DegenerateRestriction, "odd quadratic form is degenerate");
}

Scalar GaussianExpectation::even_moment(const Monomial& exps) const {
  int first = -1;
  for (size_t a = 0; a < exps.size(); ++a)
    if (exps[a] > 0) {
      first = static_cast<int>(a);
      break;
    }
  if (first < 0) return Scalar(1);
  if (monomial_degree(exps) % 2) return Scalar(0);
  auto it = even_cache_.find(exps);
  if (it != even_cache_.end()) return it->second;
  // Isserlis: E[u_i u^m'] = sum_j C_ij m'_j E[u^{m'-e_j}]
  Monomial rest = exps;
  rest[size_t(first)] -= 1;
  Scalar acc(0);
  for (size_t j = 0; j < rest.size(); ++j) {
    if (rest[j] == 0) continue;
    const Scalar& c = C_(first, int(j));
    if (c.is_zero()) continue;
    Monomial r2 = rest;
    int mult = r2[j]--;
    acc += c * Scalar(mult) * even_moment(r2);
  }
  even_cache_.emplace(exps, acc);
  return acc;
}

Scalar GaussianExpectation::odd_moment(OddMask fluct_mask) const {
  if (fluct_mask == 0) return Scalar(1);
  if (popcount(fluct_mask) % 2) return Scalar(0);
  auto it = odd_cache_.find(fluct_mask);
  if (it != odd_cache_.end()) return it->second;
  std::vector<int> sorted = fluct_odd_;
  std::sort(sorted.begin(), sorted.end());
  OddMask local = 0;
  for (size_t j = 0; j < sorted.size(); ++j)
    if (fluct_mask & bit(sorted[j])) local |= bit(int(j));
  SuperFunction zeta = SuperFunction::term(odd_space_, Monomial{}, local, Scalar(1));
  SuperFunction integrand = super_mul(odd_weight_, zeta);
  std::vector<int> order;
  for (size_t j = 0; j < sorted.size(); ++j) order.push_back(int(j));
  std::vector<int> ref_order;
  for (int v : fluct_odd_) ref_order.push_back(int(std::find(sorted.begin(), sorted.end(), v) - sorted.begin()));
  // Any fixed orientation works for the ratio; use the sorted one for both.
  Scalar num = berezin_integral(integrand, order).body().constant_term();
  Scalar den = berezin_integral(odd_weight_, order).body().constant_term();
  Scalar val = num / den;
  odd_cache_.emplace(fluct_mask, val);
  return val;
}

SuperFunction GaussianExpectation::expect(const SuperFunction& f) const {
  SuperFunction out(space_);
  int ne = static_cast<int>(fluct_even_.size());
  for (const auto& [mask, p] : f.terms()) {
    OddMask F = mask & fluct_odd_mask_;
    OddMask T = mask & ~fluct_odd_mask_;
    Scalar om = odd_moment(F);
    if (om.is_zero()) continue;
    // theta_mask = koszul(T,F) * theta_T theta_F; the fluctuation factor is
    // integrated from the right.
    Scalar sign(koszul_sign(T, F));
    for (const auto& [m, c] : p.terms()) {
      Monomial fl(size_t(ne), 0);
      Monomial spect = m;
      for (int a = 0; a < ne; ++a) {
        int i = fluct_even_[size_t(a)];
        fl[size_t(a)] = m[size_t(i)];
        spect[size_t(i)] = 0;
      }
      Scalar em = even_moment(fl);
      if (em.is_zero()) continue;
      out.add_term(spect, T, c * sign * om * em);
    }
  }
  return out;
}

PerturbativeSplit split_action(const SuperFunction& action, const std::vector<int>& fluct_even,
                               const std::vector<int>& fluct_odd) {
  const auto& sp = action.space();
  std::vector<bool> fe(size_t(sp->n_even()), false);
  for (int i : fluct_even) fe[size_t(i)] = true;
  OddMask fo = 0;
  for (int a : fluct_odd) fo |= bit(a);
  PerturbativeSplit s{SuperFunction(sp), SuperFunction(sp), SuperFunction(sp)};
  for (const auto& [mask, p] : action.terms()) {
    for (const auto& [m, c] : p.terms()) {
      int d = popcount(mask & fo);
      int e = popcount(mask & ~fo);
      for (int i = 0; i < sp->n_even(); ++i) (fe[size_t(i)] ? d : e) += m[size_t(i)];
      if (d == 0) s.classical.add_term(m, mask, c);
      else if (d == 2 && e == 0) s.quadratic.add_term(m, mask, c);
      else if (d == 1 && e == 0)
        throw Error(ErrorCode::InvalidArgument, "expansion point is not critical: linear term in the fluctuations");
      else s.interaction.add_term(m, mask, c);
    }
  }
  return s;
}

PerturbativeExpansion::PerturbativeExpansion(SpacePtr space, std::vector<int> fluct_even,
                                             std::vector<int> fluct_odd, const SuperFunction& action)
    : PerturbativeExpansion(std::move(space), std::move(fluct_even), std::move(fluct_odd),
                            std::map<int, SuperFunction>{{0, action}}) {}

PerturbativeExpansion::PerturbativeExpansion(SpacePtr space, std::vector<int> fluct_even,
                                             std::vector<int> fluct_odd,
                                             const std::map<int, SuperFunction>& action_by_hbar)
    : space_(std::move(space)), fluct_even_(std::move(fluct_even)), fluct_odd_(std::move(fluct_odd)) {
  is_fluct_even_.assign(size_t(space_->n_even()), false);
  for (int i : fluct_even_) is_fluct_even_[size_t(i)] = true;
  for (int a : fluct_odd_) fluct_odd_mask_ |= bit(a);

  auto it0 = action_by_hbar.find(0);
  SuperFunction classical_action = it0 == action_by_hbar.end() ? SuperFunction(space_) : it0->second;
  split_ = split_action(classical_action.space() ? classical_action : SuperFunction(space_), fluct_even_,
                        fluct_odd_);

  std::vector<std::string> even = space_->even_names();
  even.push_back("__sqrt_hbar");
  ext_space_ = make_space(even, space_->odd_names());
  g_index_ = static_cast<int>(even.size()) - 1;
  gauss_ = std::make_unique<GaussianExpectation>(ext_space_, fluct_even_, fluct_odd_,
                                                 embed(split_.quadratic, ext_space_));

  weighted_interaction_ = SuperFunction(ext_space_);
  auto add_weighted = [&](const SuperFunction& f, int hbar_power) {
    for (const auto& [mask, p] : f.terms())
      for (const auto& [m, c] : p.terms()) {
        int d = popcount(mask & fluct_odd_mask_);
        int e = popcount(mask & ~fluct_odd_mask_);
        for (int i = 0; i < space_->n_even(); ++i) (is_fluct_even_[size_t(i)] ? d : e) += m[size_t(i)];
        int w = d + 2 * e - 2 + 2 * hbar_power;
        if (w < 1) throw Error(ErrorCode::InvalidArgument, "interaction term of nonpositive weight");
        Monomial mm = m;
        mm.push_back(w);
        weighted_interaction_.add_term(mm, mask, c * Scalar::i());
      }
  };
  add_weighted(split_.interaction, 0);
  for (const auto& [k, f] : action_by_hbar) {
    if (k == 0) continue;
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative hbar power in action");
    add_weighted(f, k);
  }
}

int PerturbativeExpansion::spectator_degree(const Monomial& m, OddMask mask) const {
  int e = popcount(mask & ~fluct_odd_mask_);
  for (int i = 0; i < space_->n_even(); ++i)
    if (!is_fluct_even_[size_t(i)]) e += m[size_t(i)];
  return e;
}

WeightSeries PerturbativeExpansion::collect(const SuperFunction& ext) const {
  WeightSeries out;
  for (const auto& [mask, p] : ext.terms())
    for (const auto& [m, c] : p.terms()) {
      int w = m[size_t(g_index_)];
      Monomial mm(m.begin(), m.end() - 1);
      auto it = out.find(w);
      if (it == out.end()) it = out.emplace(w, SuperFunction(space_)).first;
      it->second.add_term(mm, mask, c);
    }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero()) it = out.erase(it);
    else ++it;
  }
  return out;
}

WeightSeries PerturbativeExpansion::partition(int max_weight) const {
  SuperFunction total = SuperFunction::constant(ext_space_, Scalar(1));
  SuperFunction power = SuperFunction::constant(ext_space_, Scalar(1));
  for (int k = 1; k <= max_weight; ++k) {
    power = super_mul(power, weighted_interaction_).truncated_in(g_index_, max_weight) * Scalar(Rational(1, k));
    if (power.is_zero()) break;
    total += gauss_->expect(power);
  }
  return collect(total);
}

namespace {

WeightSeries series_mul(const WeightSeries& a, const WeightSeries& b, int max_weight) {
  WeightSeries out;
  for (const auto& [wa, fa] : a)
    for (const auto& [wb, fb] : b) {
      if (wa + wb > max_weight) continue;
      SuperFunction prod = super_mul(fa, fb);
      if (prod.is_zero()) continue;
      auto it = out.find(wa + wb);
      if (it == out.end()) out.emplace(wa + wb, prod);
      else it->second += prod;
    }
  return out;
}

}  // namespace

WeightSeries PerturbativeExpansion::connected(int max_weight) const {
  WeightSeries Z = partition(max_weight);
  WeightSeries R = Z;
  // R = Z - 1
  auto it0 = R.find(0);
  if (it0 != R.end()) {
    it0->second -= SuperFunction::constant(space_, Scalar(1));
    if (it0->second.is_zero()) R.erase(it0);
  }
  for (const auto& [w, f] : R)
    if (w <= 0 && !f.is_zero())
      throw Error(ErrorCode::InvalidArgument, "partition function has a weight-0 correction");
  WeightSeries log;
  WeightSeries power{{0, SuperFunction::constant(space_, Scalar(1))}};
  for (int k = 1; k <= max_weight; ++k) {
    power = series_mul(power, R, max_weight);
    if (power.empty()) break;
    Scalar coef(Rational(k % 2 ? 1 : -1, k));
    for (const auto& [w, f] : power) {
      auto it = log.find(w);
      if (it == log.end()) log.emplace(w, f * coef);
      else it->second += f * coef;
    }
  }
  for (auto it = log.begin(); it != log.end();) {
    if (it->second.is_zero()) it = log.erase(it);
    else ++it;
  }
  return log;
}

std::map<int, SuperFunction> PerturbativeExpansion::to_hbar(const WeightSeries& s) const {
  std::map<int, SuperFunction> out;
  for (const auto& [w, f] : s)
    for (const auto& [mask, p] : f.terms())
      for (const auto& [m, c] : p.terms()) {
        int twice = w - 2 * spectator_degree(m, mask);
        if (twice % 2)
          throw Error(ErrorCode::InvalidArgument, "half-integer power of hbar in perturbative series");
        auto it = out.find(twice / 2);
        if (it == out.end()) it = out.emplace(twice / 2, SuperFunction(space_)).first;
        it->second.add_term(m, mask, c);
      }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero()) it = out.erase(it);
    else ++it;
  }
  return out;
}

}  // namespace phasekit
