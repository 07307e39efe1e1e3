#include "phasekit/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "phasekit/error.hpp"

namespace phasekit {

int monomial_degree(const Monomial& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

Rational factorial(int n) {
  mpz_class f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return Rational(f);
}

Rational multi_factorial(const Monomial& m) {
  Rational f = 1;
  for (int e : m) f *= factorial(e);
  return f;
}

std::vector<std::string> default_names(int dim, const std::string& stem) {
  std::vector<std::string> names;
  for (int i = 0; i < dim; ++i) names.push_back(stem + std::to_string(i + 1));
  return names;
}

Poly Poly::constant(int dim, const Scalar& c) {
  Poly p(dim);
  p.add_term(Monomial(dim, 0), c);
  return p;
}

Poly Poly::variable(int dim, int index) {
  Monomial m(dim, 0);
  m.at(index) = 1;
  return monomial(std::move(m), Scalar(1));
}

Poly Poly::monomial(Monomial exps, const Scalar& c) {
  Poly p(static_cast<int>(exps.size()));
  p.add_term(exps, c);
  return p;
}

int Poly::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
  return d;
}

int Poly::min_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int md = monomial_degree(m);
    if (d < 0 || md < d) d = md;
  }
  return std::max(d, 0);
}

void Poly::add_term(const Monomial& m, const Scalar& c) {
  if (static_cast<int>(m.size()) != dim_)
    throw Error(ErrorCode::InvalidArgument, "monomial dimension mismatch");
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Scalar Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

Scalar Poly::constant_term() const { return coeff(Monomial(dim_, 0)); }

Poly Poly::homogeneous_part(int degree) const {
  Poly out(dim_);
  for (const auto& [m, c] : terms_)
    if (monomial_degree(m) == degree) out.terms_.emplace(m, c);
  return out;
}

Poly Poly::truncated(int max_degree) const {
  Poly out(dim_);
  for (const auto& [m, c] : terms_)
    if (monomial_degree(m) <= max_degree) out.terms_.emplace(m, c);
  return out;
}

Poly Poly::derivative(int var) const {
  Poly out(dim_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    int e = d[var]--;
    out.add_term(d, c * Scalar(e));
  }
  return out;
}

Scalar Poly::evaluate(const std::vector<Scalar>& point) const {
  if (static_cast<int>(point.size()) != dim_)
    throw Error(ErrorCode::InvalidArgument, "evaluation point dimension");
  Scalar acc(0);
  for (const auto& [m, c] : terms_) {
    Scalar t = c;
    for (int i = 0; i < dim_; ++i)
      if (m[i] != 0) t *= point[i].pow(m[i]);
    acc += t;
  }
  return acc;
}

std::complex<double> Poly::evaluate(const std::vector<double>& point) const {
  std::complex<double> acc = 0;
  for (const auto& [m, c] : terms_) {
    double t = 1;
    for (int i = 0; i < dim_; ++i)
      if (m[i] != 0) t *= std::pow(point[i], m[i]);
    acc += c.to_complex() * t;
  }
  return acc;
}

Poly Poly::shifted(const std::vector<Scalar>& x0) const {
  std::vector<Poly> images;
  for (int i = 0; i < dim_; ++i)
    images.push_back(Poly::variable(dim_, i) + Poly::constant(dim_, x0.at(i)));
  return substitute(images);
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
  if (static_cast<int>(images.size()) != dim_)
    throw Error(ErrorCode::InvalidArgument, "substitution arity");
  int target_dim = images.empty() ? 0 : images.front().dim();
  Poly out(target_dim);
  // cache powers of each image
  std::vector<std::vector<Poly>> powers(dim_);
  for (const auto& [m, c] : terms_) {
    Poly t = Poly::constant(target_dim, c);
    for (int i = 0; i < dim_; ++i) {
      if (m[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Poly::constant(target_dim, Scalar(1)));
      while (static_cast<int>(pw.size()) <= m[i]) pw.push_back(pw.back() * images[i]);
      t = t * pw[m[i]];
    }
    out += t;
  }
  return out;
}

Poly Poly::embedded(int new_dim, const std::vector<int>& target) const {
  Poly out(new_dim);
  for (const auto& [m, c] : terms_) {
    Monomial e(new_dim, 0);
    for (int i = 0; i < dim_; ++i) e.at(target.at(i)) += m[i];
    out.add_term(e, c);
  }
  return out;
}

Poly Poly::pow(int e) const {
  Poly result = Poly::constant(dim_, Scalar(1));
  for (int k = 0; k < e; ++k) result = result * *this;
  return result;
}

Poly& Poly::operator+=(const Poly& o) {
  if (terms_.empty() && dim_ == 0) dim_ = o.dim_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (terms_.empty() && dim_ == 0) dim_ = o.dim_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [m, v] : out.terms_) v = -v;
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.dim_ != b.dim_)
    throw Error(ErrorCode::InvalidArgument, "polynomial dimension mismatch");
  Poly out(a.dim_);
  Monomial m(a.dim_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (int i = 0; i < a.dim_; ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  auto nm = names.empty() ? default_names(dim_) : names;
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    if (!first) os << " + ";
    first = false;
    bool is_const = monomial_degree(m) == 0;
    if (is_const || !c.is_one()) os << "(" << c.to_string() << ")";
    bool star = !is_const && !c.is_one();
    for (int i = 0; i < dim_; ++i) {
      if (m[i] == 0) continue;
      if (star) os << "*";
      star = true;
      os << nm[i];
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

}  // namespace phasekit
