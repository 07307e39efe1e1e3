#include "phasekit/taylor.hpp"

#include <algorithm>

#include "phasekit/error.hpp"

namespace phasekit {

std::vector<int> exponents_to_indices(const Monomial& m) {
  std::vector<int> idx;
  for (int i = 0; i < static_cast<int>(m.size()); ++i)
    for (int e = 0; e < m[i]; ++e) idx.push_back(i);
  return idx;
}

Monomial indices_to_exponents(const std::vector<int>& idx, int dim) {
  Monomial m(dim, 0);
  for (int i : idx) m.at(i) += 1;
  return m;
}

SymTensor SymTensor::from_homogeneous(const Poly& p, int rank) {
  SymTensor t(rank, p.dim());
  for (const auto& [m, c] : p.terms()) {
    if (monomial_degree(m) != rank)
      throw Error(ErrorCode::InvalidArgument, "polynomial is not homogeneous of the tensor rank");
    t.entries_.emplace(exponents_to_indices(m), c * Scalar(multi_factorial(m)));
  }
  return t;
}

Scalar SymTensor::at(std::vector<int> indices) const {
  std::sort(indices.begin(), indices.end());
  auto it = entries_.find(indices);
  return it == entries_.end() ? Scalar(0) : it->second;
}

void SymTensor::set(std::vector<int> indices, const Scalar& value) {
  if (static_cast<int>(indices.size()) != rank_)
    throw Error(ErrorCode::InvalidArgument, "tensor rank mismatch");
  std::sort(indices.begin(), indices.end());
  if (value.is_zero()) entries_.erase(indices);
  else entries_[indices] = value;
}

Poly SymTensor::to_poly() const {
  Poly p(dim_);
  for (const auto& [idx, c] : entries_) {
    Monomial m = indices_to_exponents(idx, dim_);
    p.add_term(m, c / Scalar(multi_factorial(m)));
  }
  return p;
}

Poly TaylorData::reassemble() const {
  int n = static_cast<int>(gradient.size());
  Poly p = Poly::constant(n, value);
  for (int i = 0; i < n; ++i) p += Poly::variable(n, i) * gradient[size_t(i)];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (hessian(i, j).is_zero()) continue;
      p += Poly::variable(n, i) * Poly::variable(n, j) * (hessian(i, j) * Scalar(Rational(1, 2)));
    }
  for (size_t k = 3; k < interactions.size(); ++k) p += interactions[k].to_poly();
  return p;
}

TaylorData taylor_data(const Poly& S, const std::vector<Scalar>& x0, int max_deg) {
  int n = S.dim();
  if (static_cast<int>(x0.size()) != n)
    throw Error(ErrorCode::InvalidArgument, "critical point dimension mismatch");
  Poly shifted = S.shifted(x0);
  int top = max_deg < 0 ? std::max(shifted.total_degree(), 2) : max_deg;
  TaylorData td;
  td.value = shifted.constant_term();
  td.gradient.assign(size_t(n), Scalar(0));
  td.hessian = Matrix(n, n);
  for (const auto& [m, c] : shifted.terms()) {
    int d = monomial_degree(m);
    if (d == 1) {
      for (int i = 0; i < n; ++i)
        if (m[i] == 1) td.gradient[size_t(i)] = c;
    } else if (d == 2) {
      auto idx = exponents_to_indices(m);
      Scalar v = c * Scalar(multi_factorial(m));
      td.hessian(idx[0], idx[1]) = v;
      td.hessian(idx[1], idx[0]) = v;
    }
  }
  td.interactions.assign(size_t(std::max(top + 1, 3)), SymTensor());
  for (int k = 3; k <= top; ++k)
    td.interactions[size_t(k)] = SymTensor::from_homogeneous(shifted.homogeneous_part(k), k);
  return td;
}

}  // namespace phasekit
