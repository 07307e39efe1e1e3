#ifndef PHASEKIT_GAUSSIAN_HPP
#define PHASEKIT_GAUSSIAN_HPP

#include <map>
#include <memory>
#include <vector>

#include "phasekit/linalg.hpp"
#include "phasekit/superalgebra.hpp"

namespace phasekit {

/// Normalized super-Gaussian expectation. A subset of the generators of a
/// super space are "fluctuations" (even u, odd zeta); the rest are spectators.
/// The weight is e^{i q} with q = (1/2) u.M.u + q_odd(zeta) in rescaled
/// (hbar-free) variables, so <u_a u_b> = i (M^{-1})_{ab}.
///
/// Odd fluctuations are integrated from the right: spectator odd factors are
/// first moved to the left of the fluctuation factors, so the expectation is
/// left-linear over spectators and commutes with left derivatives in them.
class GaussianExpectation {
 public:
  /// `quadratic` must be a quadratic form in the fluctuations only, with no
  /// even-odd cross terms. Throws DegenerateRestriction if either block is
  /// degenerate.
  GaussianExpectation(SpacePtr space, std::vector<int> fluct_even, std::vector<int> fluct_odd,
                      const SuperFunction& quadratic);

  SuperFunction expect(const SuperFunction& f) const;

  const Matrix& even_hessian() const { return M_; }
  /// <u_a u_b> = i M^{-1}.
  const Matrix& covariance() const { return C_; }
  /// Coefficient of zeta_1...zeta_k (fluctuation order, pulled out to the
  /// left) in e^{i q_odd}: the rescaled odd Gaussian normalization.
  const Scalar& odd_normalization() const { return odd_top_; }

  Scalar even_moment(const Monomial& exps) const;  // over fluct_even only
  Scalar odd_moment(OddMask fluct_mask) const;     // mask over the full space

 private:
  SpacePtr space_;
  std::vector<int> fluct_even_;
  std::vector<int> fluct_odd_;
  std::vector<int> even_pos_;  // full even index -> position in fluct_even_, or -1
  OddMask fluct_odd_mask_ = 0;
  Matrix M_;
  Matrix C_;
  SpacePtr odd_space_;
  SuperFunction odd_weight_;  // e^{i q_odd} in odd_space_
  Scalar odd_top_;
  mutable std::map<Monomial, Scalar> even_cache_;
  mutable std::map<OddMask, Scalar> odd_cache_;
};

/// Perturbative evaluation of E[e^{(i/hbar) I}] around a critical point.
///
/// The action is given in the full space with fluctuations vanishing at the
/// expansion point. Terms are graded by w = d + 2e - 2 (d = fluctuation degree,
/// e = spectator degree), which is the power of sqrt(hbar) they carry after
/// rescaling fluctuations by sqrt(hbar) and counting spectators as hbar.
/// Every interaction term has w >= 1, so truncating at w <= max_weight is
/// exact for all retained terms.
struct PerturbativeSplit {
  SuperFunction classical;   // fluctuation degree 0 (function of spectators)
  SuperFunction quadratic;   // fluctuation degree 2, spectator degree 0
  SuperFunction interaction; // everything else
};

PerturbativeSplit split_action(const SuperFunction& action, const std::vector<int>& fluct_even,
                               const std::vector<int>& fluct_odd);

/// A series sum_w g^w F_w(spectators) with g = sqrt(hbar) bookkeeping, stored
/// by w.
using WeightSeries = std::map<int, SuperFunction>;

class PerturbativeExpansion {
 public:
  PerturbativeExpansion(SpacePtr space, std::vector<int> fluct_even, std::vector<int> fluct_odd,
                        const SuperFunction& action);
  /// Action with explicit quantum corrections: hbar power -> function. Terms
  /// hbar^k S_k with k >= 1 are treated as interactions of weight
  /// d + 2e - 2 + 2k.
  PerturbativeExpansion(SpacePtr space, std::vector<int> fluct_even, std::vector<int> fluct_odd,
                        const std::map<int, SuperFunction>& action_by_hbar);

  const PerturbativeSplit& split() const { return split_; }
  const GaussianExpectation& gaussian() const { return *gauss_; }

  /// E[e^{(i/hbar) I}] through weight max_weight, as a function of spectators.
  WeightSeries partition(int max_weight) const;
  /// log E[e^{(i/hbar) I}] through weight max_weight.
  WeightSeries connected(int max_weight) const;

  /// Spectator degree of every term is used to convert weight to the power
  /// of hbar: g^w Y^e -> hbar^{(w-2e)/2} Y^e. Returns hbar power -> function;
  /// throws if a half-integer power survives with a nonzero coefficient.
  std::map<int, SuperFunction> to_hbar(const WeightSeries& s) const;

  /// Spectator degree of a term (even spectators counted with multiplicity).
  int spectator_degree(const Monomial& m, OddMask mask) const;

 private:
  SpacePtr space_;
  std::vector<int> fluct_even_;
  std::vector<int> fluct_odd_;
  std::vector<bool> is_fluct_even_;
  OddMask fluct_odd_mask_ = 0;
  PerturbativeSplit split_;
  std::unique_ptr<GaussianExpectation> gauss_;
  // interaction pieces in the extended space (space + g), each multiplied
  // by i g^w
  SpacePtr ext_space_;
  int g_index_ = -1;
  SuperFunction weighted_interaction_;

  WeightSeries collect(const SuperFunction& ext) const;
};

}  // namespace phasekit

#endif  // PHASEKIT_GAUSSIAN_HPP
