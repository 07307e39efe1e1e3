#ifndef PHASEKIT_TAYLOR_HPP
#define PHASEKIT_TAYLOR_HPP

#include <map>
#include <string>
#include <vector>

#include "phasekit/linalg.hpp"
#include "phasekit/poly.hpp"

namespace phasekit {

/// Fully symmetric tensor of rank k over R^n, stored on sorted multi-indices.
class SymTensor {
 public:
  SymTensor() = default;
  SymTensor(int rank, int dim) : rank_(rank), dim_(dim) {}

  /// Tensor of k-th partial derivatives at 0 of a homogeneous polynomial:
  /// P_{i1..ik} = d^k P / dy^{i1}..dy^{ik}.
  static SymTensor from_homogeneous(const Poly& p, int rank);

  int rank() const { return rank_; }
  int dim() const { return dim_; }
  bool is_zero() const { return entries_.empty(); }
  const std::map<std::vector<int>, Scalar>& entries() const { return entries_; }

  /// Lookup with any index order.
  Scalar at(std::vector<int> indices) const;
  void set(std::vector<int> indices, const Scalar& value);

  /// Back to the homogeneous polynomial (1/k!) P_{i..} y^i..
  Poly to_poly() const;

 private:
  int rank_ = 0;
  int dim_ = 0;
  std::map<std::vector<int>, Scalar> entries_;
};

struct TaylorData {
  Scalar value;
  std::vector<Scalar> gradient;
  Matrix hessian;
  /// interactions[k] holds the rank-k tensor for k = 3..max_deg; entries
  /// 0..2 are empty placeholders so the index is the rank.
  std::vector<SymTensor> interactions;

  /// Reassemble value + gradient.y + (1/2) y.H.y + sum (1/k!) P_k(y).
  Poly reassemble() const;
};

/// Exact Taylor decomposition of S(x0 + y). Terms of degree above max_deg are
/// discarded; max_deg < 0 keeps all of them.
TaylorData taylor_data(const Poly& S, const std::vector<Scalar>& x0, int max_deg = -1);

/// Multi-index (sorted index list) <-> exponent vector.
std::vector<int> exponents_to_indices(const Monomial& m);
Monomial indices_to_exponents(const std::vector<int>& idx, int dim);

}  // namespace phasekit

#endif  // PHASEKIT_TAYLOR_HPP
