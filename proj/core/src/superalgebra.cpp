#include "phasekit/superalgebra.hpp"

#include <bit>
#include <set>
#include <sstream>

#include "phasekit/error.hpp"

namespace phasekit {

SuperSpace::SuperSpace(std::vector<std::string> even, std::vector<std::string> odd)
    : even_(std::move(even)), odd_(std::move(odd)) {
  if (odd_.size() > 64) throw Error(ErrorCode::InvalidArgument, "at most 64 odd generators");
  std::set<std::string> seen;
  for (const auto& n : even_)
    if (!seen.insert(n).second) throw Error(ErrorCode::InvalidArgument, "duplicate generator '" + n + "'");
  for (const auto& n : odd_)
    if (!seen.insert(n).second) throw Error(ErrorCode::InvalidArgument, "duplicate generator '" + n + "'");
}

int SuperSpace::even_index(const std::string& name) const {
  for (int i = 0; i < n_even(); ++i)
    if (even_[size_t(i)] == name) return i;
  throw Error(ErrorCode::UnknownGenerator, "no even generator '" + name + "'");
}

int SuperSpace::odd_index(const std::string& name) const {
  for (int i = 0; i < n_odd(); ++i)
    if (odd_[size_t(i)] == name) return i;
  throw Error(ErrorCode::UnknownGenerator, "no odd generator '" + name + "'");
}

bool SuperSpace::has_even(const std::string& name) const {
  for (const auto& n : even_)
    if (n == name) return true;
  return false;
}

bool SuperSpace::has_odd(const std::string& name) const {
  for (const auto& n : odd_)
    if (n == name) return true;
  return false;
}

SpacePtr make_space(std::vector<std::string> even, std::vector<std::string> odd) {
  return std::make_shared<const SuperSpace>(std::move(even), std::move(odd));
}

int popcount(OddMask m) { return std::popcount(m); }

namespace {

void require_same(const SuperFunction& f, const SuperFunction& g) {
  if (!f.space() || !g.space()) throw Error(ErrorCode::SpaceMismatch, "function without a space");
  if (f.space() != g.space() && !(*f.space() == *g.space()))
    throw Error(ErrorCode::SpaceMismatch, "operands live in different super spaces");
}

OddMask bit(int i) { return OddMask(1) << i; }

}  // namespace

int koszul_sign(OddMask a, OddMask b) {
  if (a & b) return 0;
  int swaps = 0;
  OddMask rest = b;
  while (rest) {
    int j = std::countr_zero(rest);
    rest &= rest - 1;
    // elements of a that are greater than j must hop over theta_j
    OddMask above = (j >= 63) ? OddMask(0) : (a >> (j + 1));
    swaps += std::popcount(above);
  }
  return (swaps % 2) ? -1 : 1;
}

SuperFunction SuperFunction::constant(SpacePtr space, const Scalar& c) {
  SuperFunction f(space);
  f.add_term(Monomial(size_t(space->n_even()), 0), 0, c);
  return f;
}

SuperFunction SuperFunction::even_var(SpacePtr space, int index) {
  Monomial m(size_t(space->n_even()), 0);
  m.at(size_t(index)) = 1;
  SuperFunction f(space);
  f.add_term(m, 0, Scalar(1));
  return f;
}

SuperFunction SuperFunction::odd_var(SpacePtr space, int index) {
  if (index < 0 || index >= space->n_odd()) throw Error(ErrorCode::UnknownGenerator, "odd index out of range");
  SuperFunction f(space);
  f.add_term(Monomial(size_t(space->n_even()), 0), bit(index), Scalar(1));
  return f;
}

SuperFunction SuperFunction::var(SpacePtr space, const std::string& name) {
  if (space->has_even(name)) return even_var(space, space->even_index(name));
  return odd_var(space, space->odd_index(name));
}

SuperFunction SuperFunction::from_poly(SpacePtr space, const Poly& p) {
  if (p.dim() != space->n_even()) throw Error(ErrorCode::SpaceMismatch, "polynomial dimension mismatch");
  SuperFunction f(space);
  f.add(0, p);
  return f;
}

SuperFunction SuperFunction::term(SpacePtr space, const Monomial& m, OddMask mask, const Scalar& c) {
  SuperFunction f(space);
  f.add_term(m, mask, c);
  return f;
}

int SuperFunction::parity() const {
  int p = -2;
  for (const auto& [mask, poly] : terms_) {
    int q = popcount(mask) % 2;
    if (p == -2) p = q;
    else if (p != q) return -1;
  }
  return p == -2 ? 0 : p;
}

Poly SuperFunction::coeff(OddMask mask) const {
  auto it = terms_.find(mask);
  if (it == terms_.end()) return Poly(space_ ? space_->n_even() : 0);
  return it->second;
}

int SuperFunction::total_degree() const {
  int d = 0;
  for (const auto& [mask, p] : terms_) d = std::max(d, p.total_degree() + popcount(mask));
  return d;
}

int SuperFunction::min_total_degree() const {
  int d = -1;
  for (const auto& [mask, p] : terms_) {
    int v = p.min_degree() + popcount(mask);
    if (d < 0 || v < d) d = v;
  }
  return std::max(d, 0);
}

size_t SuperFunction::num_terms() const {
  size_t n = 0;
  for (const auto& [mask, p] : terms_) n += p.size();
  return n;
}

void SuperFunction::add_term(const Monomial& m, OddMask mask, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(mask);
  if (it == terms_.end()) it = terms_.emplace(mask, Poly(space_->n_even())).first;
  it->second.add_term(m, c);
  if (it->second.is_zero()) terms_.erase(it);
}

void SuperFunction::add(OddMask mask, const Poly& p) {
  if (p.is_zero()) return;
  auto it = terms_.find(mask);
  if (it == terms_.end()) {
    terms_.emplace(mask, p);
    return;
  }
  it->second += p;
  if (it->second.is_zero()) terms_.erase(it);
}

SuperFunction& SuperFunction::operator+=(const SuperFunction& o) {
  if (!space_) space_ = o.space_;
  if (o.is_zero()) return *this;
  require_same(*this, o);
  for (const auto& [mask, p] : o.terms_) add(mask, p);
  return *this;
}

SuperFunction& SuperFunction::operator-=(const SuperFunction& o) {
  if (!space_) space_ = o.space_;
  if (o.is_zero()) return *this;
  require_same(*this, o);
  for (const auto& [mask, p] : o.terms_) add(mask, -p);
  return *this;
}

SuperFunction& SuperFunction::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [mask, p] : terms_) p *= c;
  return *this;
}

SuperFunction SuperFunction::operator-() const {
  SuperFunction out = *this;
  for (auto& [mask, p] : out.terms_) p = -p;
  return out;
}

bool operator==(const SuperFunction& a, const SuperFunction& b) { return a.terms_ == b.terms_; }

SuperFunction SuperFunction::truncated_in(int var, int max) const {
  SuperFunction out(space_);
  for (const auto& [mask, p] : terms_) {
    Poly q(p.dim());
    for (const auto& [m, c] : p.terms())
      if (m[size_t(var)] <= max) q.add_term(m, c);
    out.add(mask, q);
  }
  return out;
}

SuperFunction SuperFunction::truncated(int max_total_degree) const {
  SuperFunction out(space_);
  for (const auto& [mask, p] : terms_) {
    int k = popcount(mask);
    if (k > max_total_degree) continue;
    out.add(mask, p.truncated(max_total_degree - k));
  }
  return out;
}

SuperFunction SuperFunction::homogeneous(int total_degree) const {
  SuperFunction out(space_);
  for (const auto& [mask, p] : terms_) {
    int k = popcount(mask);
    if (k > total_degree) continue;
    out.add(mask, p.homogeneous_part(total_degree - k));
  }
  return out;
}

std::string SuperFunction::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mask, p] : terms_) {
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
      const auto& [m, c] = *it;
      if (!first) os << " + ";
      first = false;
      os << "(" << c.to_string() << ")";
      for (int i = 0; i < space_->n_even(); ++i) {
        if (m[size_t(i)] == 0) continue;
        os << "*" << space_->even_names()[size_t(i)];
        if (m[size_t(i)] > 1) os << "^" << m[size_t(i)];
      }
      for (int a = 0; a < space_->n_odd(); ++a)
        if (mask & bit(a)) os << "*" << space_->odd_names()[size_t(a)];
    }
  }
  return os.str();
}

SuperFunction super_mul(const SuperFunction& f, const SuperFunction& g) {
  require_same(f, g);
  SuperFunction out(f.space());
  for (const auto& [ma, pa] : f.terms())
    for (const auto& [mb, pb] : g.terms()) {
      int s = koszul_sign(ma, mb);
      if (s == 0) continue;
      Poly prod = pa * pb;
      if (s < 0) prod = -prod;
      out.add(ma | mb, prod);
    }
  return out;
}

SuperFunction super_pow(const SuperFunction& f, int e) {
  SuperFunction r = SuperFunction::constant(f.space(), Scalar(1));
  for (int k = 0; k < e; ++k) r = super_mul(r, f);
  return r;
}

SuperFunction odd_derivative(const SuperFunction& f, int a, Side side) {
  if (a < 0 || a >= f.space()->n_odd()) throw Error(ErrorCode::UnknownGenerator, "odd index out of range");
  SuperFunction out(f.space());
  OddMask b = bit(a);
  for (const auto& [mask, p] : f.terms()) {
    if (!(mask & b)) continue;
    int hops = side == Side::Left ? popcount(mask & (b - 1)) : popcount(mask & ~((b << 1) - 1));
    out.add(mask & ~b, hops % 2 ? -p : p);
  }
  return out;
}

SuperFunction odd_derivative(const SuperFunction& f, const std::string& name, Side side) {
  return odd_derivative(f, f.space()->odd_index(name), side);
}

SuperFunction even_derivative(const SuperFunction& f, int i) {
  SuperFunction out(f.space());
  for (const auto& [mask, p] : f.terms()) out.add(mask, p.derivative(i));
  return out;
}

SuperFunction berezin_integral(const SuperFunction& f, const std::vector<int>& odd_vars) {
  SuperFunction r = f;
  for (int v : odd_vars) r = odd_derivative(r, v, Side::Left);
  return r;
}

SuperFunction berezin_integral(const SuperFunction& f, const std::vector<std::string>& names) {
  std::vector<int> idx;
  for (const auto& n : names) idx.push_back(f.space()->odd_index(n));
  return berezin_integral(f, idx);
}

SuperFunction super_exp(const SuperFunction& f, int max_k) {
  SuperFunction result = SuperFunction::constant(f.space(), Scalar(1));
  SuperFunction power = result;
  for (int k = 1; k <= max_k; ++k) {
    power = super_mul(power, f) * Scalar(Rational(1, k));
    if (power.is_zero()) break;
    result += power;
  }
  return result;
}

Scalar berezin_det(const Matrix& B) {
  if (!B.square()) throw Error(ErrorCode::InvalidArgument, "berezin_det of non-square matrix");
  int n = B.rows();
  if (n == 0) return Scalar(1);
  // odd generators theta^1, thetabar_1, ..., theta^n, thetabar_n
  std::vector<std::string> odd;
  for (int i = 0; i < n; ++i) {
    odd.push_back("t" + std::to_string(i + 1));
    odd.push_back("tb" + std::to_string(i + 1));
  }
  auto space = make_space({}, odd);
  SuperFunction arg(space);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!B(i, j).is_zero())
        arg += super_mul(SuperFunction::odd_var(space, 2 * i), SuperFunction::odd_var(space, 2 * j + 1)) * B(i, j);
  SuperFunction e = super_exp(arg, n);
  // canonical Berezinian D theta^n D thetabar_n ... D theta^1 D thetabar_1
  std::vector<int> order;
  for (int i = 0; i < n; ++i) {
    order.push_back(2 * i);
    order.push_back(2 * i + 1);
  }
  SuperFunction top = berezin_integral(e, order);
  return top.body().constant_term();
}

SuperFunction substitute(const SuperFunction& f, const std::vector<SuperFunction>& even_images,
                         const std::vector<SuperFunction>& odd_images) {
  const auto& sp = *f.space();
  if (static_cast<int>(even_images.size()) != sp.n_even() || static_cast<int>(odd_images.size()) != sp.n_odd())
    throw Error(ErrorCode::SpaceMismatch, "substitution arity");
  SpacePtr target;
  for (const auto& g : even_images) target = target ? target : g.space();
  for (const auto& g : odd_images) target = target ? target : g.space();
  if (!target) target = f.space();
  std::vector<std::vector<SuperFunction>> powers(size_t(sp.n_even()));
  auto power = [&](int i, int e) -> const SuperFunction& {
    auto& pw = powers[size_t(i)];
    if (pw.empty()) pw.push_back(SuperFunction::constant(target, Scalar(1)));
    while (static_cast<int>(pw.size()) <= e) pw.push_back(super_mul(pw.back(), even_images[size_t(i)]));
    return pw[size_t(e)];
  };
  SuperFunction out(target);
  for (const auto& [mask, p] : f.terms()) {
    SuperFunction odd_part = SuperFunction::constant(target, Scalar(1));
    for (int a = 0; a < sp.n_odd(); ++a)
      if (mask & bit(a)) odd_part = super_mul(odd_part, odd_images[size_t(a)]);
    if (odd_part.is_zero()) continue;
    for (const auto& [m, c] : p.terms()) {
      SuperFunction t = SuperFunction::constant(target, c);
      for (int i = 0; i < sp.n_even(); ++i)
        if (m[size_t(i)] > 0) t = super_mul(t, power(i, m[size_t(i)]));
      out += super_mul(t, odd_part);
    }
  }
  return out;
}

SuperFunction embed(const SuperFunction& f, const SpacePtr& target) {
  const auto& sp = *f.space();
  std::vector<int> even_map;
  for (const auto& n : sp.even_names()) even_map.push_back(target->even_index(n));
  std::vector<int> odd_map;
  for (const auto& n : sp.odd_names()) odd_map.push_back(target->odd_index(n));
  SuperFunction out(target);
  for (const auto& [mask, p] : f.terms()) {
    // map the odd factors in order and fix the sign of the new ordering
    OddMask new_mask = 0;
    int sign = 1;
    for (int a = 0; a < sp.n_odd(); ++a) {
      if (!(mask & bit(a))) continue;
      OddMask b = bit(odd_map[size_t(a)]);
      sign *= koszul_sign(new_mask, b);
      new_mask |= b;
    }
    Poly q = p.embedded(target->n_even(), even_map);
    out.add(new_mask, sign < 0 ? -q : q);
  }
  return out;
}

}  // namespace phasekit
