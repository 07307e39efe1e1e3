#ifndef PHASEKIT_POLY_HPP
#define PHASEKIT_POLY_HPP

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "phasekit/scalar.hpp"

namespace phasekit {

using Monomial = std::vector<int>;

/// Multivariate polynomial in n commuting variables with exact coefficients.
/// Zero coefficients are never stored.
class Poly {
 public:
  Poly() = default;
  explicit Poly(int dim) : dim_(dim) {}

  static Poly constant(int dim, const Scalar& c);
  static Poly variable(int dim, int index);
  static Poly monomial(Monomial exps, const Scalar& c);

  int dim() const { return dim_; }
  const std::map<Monomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  int total_degree() const;
  int min_degree() const;

  void add_term(const Monomial& m, const Scalar& c);
  Scalar coeff(const Monomial& m) const;
  Scalar constant_term() const;

  Poly homogeneous_part(int degree) const;
  Poly derivative(int var) const;
  Scalar evaluate(const std::vector<Scalar>& point) const;
  std::complex<double> evaluate(const std::vector<double>& point) const;

  /// P(x0 + y) as a polynomial in y.
  Poly shifted(const std::vector<Scalar>& x0) const;
  /// Compose: variable i is replaced by images[i]; all images share a dim.
  Poly substitute(const std::vector<Poly>& images) const;
  /// Relabel into a space of dimension new_dim; variable i becomes target[i].
  Poly embedded(int new_dim, const std::vector<int>& target) const;
  /// Drop terms of total degree above max_degree.
  Poly truncated(int max_degree) const;

  Poly pow(int e) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Scalar& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Scalar& c) { return a *= c; }
  friend Poly operator*(const Scalar& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  int dim_ = 0;
  std::map<Monomial, Scalar> terms_;
};

std::vector<std::string> default_names(int dim, const std::string& stem = "x");
int monomial_degree(const Monomial& m);
Rational factorial(int n);
/// Product of factorials of a multi-index.
Rational multi_factorial(const Monomial& m);

}  // namespace phasekit

#endif  // PHASEKIT_POLY_HPP
