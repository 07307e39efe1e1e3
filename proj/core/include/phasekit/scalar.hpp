#ifndef PHASEKIT_SCALAR_HPP
#define PHASEKIT_SCALAR_HPP

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>

namespace phasekit {

using Rational = mpq_class;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

/// Exact Gaussian-rational number re + i*im. Every coefficient in the exact
/// pipeline is one of these; doubles only appear at the oracle boundary.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(int v) : re_(v) {}   // NOLINT(google-explicit-constructor)
  Scalar(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Scalar i() { return Scalar(Rational(0), Rational(1)); }
  static Scalar parse(const std::string& text);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }
  Scalar operator-() const { return Scalar(-re_, -im_); }

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Integer power; negative exponents invert.
  Scalar pow(int e) const;

  std::complex<double> to_complex() const {
    return {re_.get_d(), im_.get_d()};
  }

  /// "3/4", "-1/2i", "1+2i". Parsed back by Scalar::parse.
  std::string to_string() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// (-i)^k, i^k as exact scalars.
Scalar i_pow(int k);

/// Truncated Laurent series in a formal hbar with exact coefficients. hbar is
/// never substituted inside exact algebra.
class HbarSeries {
 public:
  HbarSeries() = default;
  explicit HbarSeries(Scalar constant) { add_term(0, std::move(constant)); }
  static HbarSeries monomial(int power, Scalar coeff) {
    HbarSeries s;
    s.add_term(power, std::move(coeff));
    return s;
  }
  /// (hbar/i)^m with unit coefficient.
  static HbarSeries hbar_over_i(int m);
  /// (-i hbar)^m.
  static HbarSeries minus_i_hbar(int m);

  void add_term(int power, const Scalar& coeff);
  Scalar coeff(int power) const;
  const std::map<int, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int min_power() const;
  int max_power() const;

  HbarSeries truncated(int max_power) const;

  HbarSeries& operator+=(const HbarSeries& o);
  HbarSeries& operator-=(const HbarSeries& o);
  HbarSeries& operator*=(const Scalar& c);
  friend HbarSeries operator+(HbarSeries a, const HbarSeries& b) { return a += b; }
  friend HbarSeries operator-(HbarSeries a, const HbarSeries& b) { return a -= b; }
  friend HbarSeries operator*(HbarSeries a, const Scalar& c) { return a *= c; }
  friend HbarSeries operator*(const HbarSeries& a, const HbarSeries& b);
  friend bool operator==(const HbarSeries& a, const HbarSeries& b) {
    return a.terms_ == b.terms_;
  }

  std::complex<double> evaluate(double hbar) const;
  std::string to_string() const;

 private:
  std::map<int, Scalar> terms_;
};

}  // namespace phasekit

#endif  // PHASEKIT_SCALAR_HPP
