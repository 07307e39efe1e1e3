#include "phasekit/wick.hpp"

#include "phasekit/error.hpp"
#include "phasekit/poly.hpp"

namespace phasekit {

Prefactor fresnel_value(const Matrix& Q, FresnelNormalization norm) {
  QuadAnalysis qa = quad_analyze(Q);
  int n = Q.rows();
  Prefactor p;
  p.phase_eighths = ((qa.signature % 8) + 8) % 8;
  p.abs_det = abs(qa.det.re());
  if (norm == FresnelNormalization::Plain) {
    p.pi_half = n;
  } else {
    p.two_pi_half = n;
    p.hbar_half = n;
  }
  return p;
}

namespace {

void match_rec(const Matrix& K, const std::vector<int>& idx, std::vector<bool>& used, Scalar prod,
               Scalar& acc) {
  int first = -1;
  for (size_t a = 0; a < idx.size(); ++a)
    if (!used[a]) {
      first = static_cast<int>(a);
      break;
    }
  if (first < 0) {
    acc += prod;
    return;
  }
  used[size_t(first)] = true;
  for (size_t b = size_t(first) + 1; b < idx.size(); ++b) {
    if (used[b]) continue;
    const Scalar& k = K(idx[size_t(first)], idx[b]);
    if (k.is_zero()) continue;
    used[b] = true;
    match_rec(K, idx, used, prod * k, acc);
    used[b] = false;
  }
  used[size_t(first)] = false;
}

}  // namespace

Scalar matching_sum(const Matrix& K, const std::vector<int>& indices) {
  if (indices.size() % 2) return Scalar(0);
  for (int i : indices)
    if (i < 0 || i >= K.rows()) throw Error(ErrorCode::InvalidArgument, "moment index out of range");
  std::vector<bool> used(indices.size(), false);
  Scalar acc(0);
  match_rec(K, indices, used, Scalar(1), acc);
  return acc;
}

long long matching_count(int length) {
  if (length % 2) return 0;
  long long c = 1;
  for (int k = length - 1; k > 1; k -= 2) c *= k;
  return c;
}

HbarSeries wick_moment(const Matrix& K, const std::vector<int>& indices) {
  if (indices.size() % 2) return HbarSeries();
  int m = static_cast<int>(indices.size()) / 2;
  HbarSeries s = HbarSeries::hbar_over_i(m);
  s *= matching_sum(K, indices);
  return s;
}

HbarSeries moment_oracle(const Matrix& K, const std::vector<int>& indices, int bound) {
  if (static_cast<int>(indices.size()) > bound)
    throw Error(ErrorCode::TooLarge, "moment oracle bound exceeded");
  int d = K.rows();
  // variables J_1..J_d and hbar (index d)
  int dim = d + 1;
  Poly G(dim);  // (hbar/2i) K^{ij} J_i J_j
  Scalar half_over_i = Scalar(Rational(1, 2)) / Scalar::i();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (K(i, j).is_zero()) continue;
      Monomial m(size_t(dim), 0);
      m[size_t(i)] += 1;
      m[size_t(j)] += 1;
      m[size_t(d)] = 1;
      G.add_term(m, K(i, j) * half_over_i);
    }
  // d/dJ (F e^G) = (dF/dJ + F dG/dJ) e^G; iterate on the prefactor F.
  Poly F = Poly::constant(dim, Scalar(1));
  for (int i : indices) {
    if (i < 0 || i >= d) throw Error(ErrorCode::InvalidArgument, "moment index out of range");
    F = F.derivative(i) + F * G.derivative(i);
  }
  HbarSeries out;
  for (const auto& [m, c] : F.terms()) {
    bool at_zero = true;
    for (int i = 0; i < d; ++i)
      if (m[size_t(i)] != 0) at_zero = false;
    if (at_zero) out.add_term(m[size_t(d)], c);
  }
  return out;
}

}  // namespace phasekit
