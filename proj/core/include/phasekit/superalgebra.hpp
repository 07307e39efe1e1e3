#ifndef PHASEKIT_SUPERALGEBRA_HPP
#define PHASEKIT_SUPERALGEBRA_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "phasekit/linalg.hpp"
#include "phasekit/poly.hpp"

namespace phasekit {

/// Even generators plus an ordered list of odd generators. The odd order
/// fixes the canonical form of every exterior monomial.
class SuperSpace {
 public:
  SuperSpace(std::vector<std::string> even, std::vector<std::string> odd);

  int n_even() const { return static_cast<int>(even_.size()); }
  int n_odd() const { return static_cast<int>(odd_.size()); }
  const std::vector<std::string>& even_names() const { return even_; }
  const std::vector<std::string>& odd_names() const { return odd_; }

  /// Index lookup; throws UnknownGenerator.
  int even_index(const std::string& name) const;
  int odd_index(const std::string& name) const;
  bool has_even(const std::string& name) const;
  bool has_odd(const std::string& name) const;

  bool operator==(const SuperSpace& o) const { return even_ == o.even_ && odd_ == o.odd_; }

 private:
  std::vector<std::string> even_;
  std::vector<std::string> odd_;
};

using SpacePtr = std::shared_ptr<const SuperSpace>;
SpacePtr make_space(std::vector<std::string> even, std::vector<std::string> odd);

using OddMask = std::uint64_t;
int popcount(OddMask m);

/// Element of C[x] (x) Lambda[theta]: exterior monomials (bit masks over the
/// odd generators, factors in increasing index order) with polynomial
/// coefficients in the even generators.
class SuperFunction {
 public:
  SuperFunction() = default;
  explicit SuperFunction(SpacePtr space) : space_(std::move(space)) {}

  static SuperFunction constant(SpacePtr space, const Scalar& c);
  static SuperFunction even_var(SpacePtr space, int index);
  static SuperFunction odd_var(SpacePtr space, int index);
  static SuperFunction var(SpacePtr space, const std::string& name);
  static SuperFunction from_poly(SpacePtr space, const Poly& p);
  /// Single term c * x^m * theta_mask.
  static SuperFunction term(SpacePtr space, const Monomial& m, OddMask mask, const Scalar& c);

  const SpacePtr& space() const { return space_; }
  const std::map<OddMask, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Parity of a homogeneous element: 0 even, 1 odd, -1 mixed, 0 for zero.
  int parity() const;
  bool is_even() const { return parity() == 0; }
  /// Coefficient polynomial of an exterior monomial.
  Poly coeff(OddMask mask) const;
  /// Body: the part with no odd generators.
  Poly body() const { return coeff(0); }
  /// Maximum of (even degree + number of odd factors) over terms.
  int total_degree() const;
  int min_total_degree() const;
  size_t num_terms() const;

  void add_term(const Monomial& m, OddMask mask, const Scalar& c);
  void add(OddMask mask, const Poly& p);

  SuperFunction& operator+=(const SuperFunction& o);
  SuperFunction& operator-=(const SuperFunction& o);
  SuperFunction& operator*=(const Scalar& c);
  friend SuperFunction operator+(SuperFunction a, const SuperFunction& b) { return a += b; }
  friend SuperFunction operator-(SuperFunction a, const SuperFunction& b) { return a -= b; }
  friend SuperFunction operator*(SuperFunction a, const Scalar& c) { return a *= c; }
  friend SuperFunction operator*(const Scalar& c, SuperFunction a) { return a *= c; }
  SuperFunction operator-() const;
  friend bool operator==(const SuperFunction& a, const SuperFunction& b);
  friend bool operator!=(const SuperFunction& a, const SuperFunction& b) { return !(a == b); }

  /// Keep only terms whose exponent of even generator `var` is <= max.
  SuperFunction truncated_in(int var, int max) const;
  /// Keep only terms of total degree <= max.
  SuperFunction truncated(int max_total_degree) const;
  /// Homogeneous component of the given total degree.
  SuperFunction homogeneous(int total_degree) const;

  std::string to_string() const;

 private:
  SpacePtr space_;
  std::map<OddMask, Poly> terms_;
};

/// Sign (+1/-1) of reordering theta_a theta_b into canonical order; 0 when
/// the masks overlap.
int koszul_sign(OddMask a, OddMask b);

/// Graded product with Koszul signs. Throws SpaceMismatch.
SuperFunction super_mul(const SuperFunction& f, const SuperFunction& g);
inline SuperFunction operator*(const SuperFunction& f, const SuperFunction& g) { return super_mul(f, g); }
SuperFunction super_pow(const SuperFunction& f, int e);

enum class Side { Left, Right };

/// Odd derivative; the right derivative is the genuine right derivation
/// (f theta) d_r/d theta = f.
SuperFunction odd_derivative(const SuperFunction& f, int odd_index, Side side);
SuperFunction odd_derivative(const SuperFunction& f, const std::string& name, Side side);
SuperFunction even_derivative(const SuperFunction& f, int even_index);

/// Berezin integral over an ordered list of odd generators: the coefficient
/// of theta_{v1} ... theta_{vm}, pulled out to the left (equivalently the
/// left derivatives d/dv1 first, then d/dv2, ...).
SuperFunction berezin_integral(const SuperFunction& f, const std::vector<int>& odd_vars);
SuperFunction berezin_integral(const SuperFunction& f, const std::vector<std::string>& names);

/// exp(f) for f with nilpotent or truncatable argument: sum_{k<=max_k} f^k/k!.
SuperFunction super_exp(const SuperFunction& f, int max_k);

/// det B computed as the Berezin integral of exp(B_i^j theta^i thetabar_j)
/// over the canonical Berezinian.
Scalar berezin_det(const Matrix& B);

/// Substitute generators: even generator i -> even_images[i], odd generator a
/// -> odd_images[a]; all images live in a common target space.
SuperFunction substitute(const SuperFunction& f, const std::vector<SuperFunction>& even_images,
                         const std::vector<SuperFunction>& odd_images);

/// Re-express f in a larger space whose generator names include f's.
SuperFunction embed(const SuperFunction& f, const SpacePtr& target);

}  // namespace phasekit

#endif  // PHASEKIT_SUPERALGEBRA_HPP
