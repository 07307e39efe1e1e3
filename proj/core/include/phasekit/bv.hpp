#ifndef PHASEKIT_BV_HPP
#define PHASEKIT_BV_HPP

#include <map>
#include <string>
#include <vector>

#include "phasekit/gauge_fp.hpp"
#include "phasekit/stationary_phase.hpp"
#include "phasekit/superalgebra.hpp"

namespace phasekit {

/// A generator of a super space: parity plus index in the even or odd list.
struct Generator {
  bool odd = false;
  int index = 0;
  bool operator==(const Generator& o) const { return odd == o.odd && index == o.index; }
};

/// Darboux pairs (z^alpha, z^+_alpha) of opposite parity.
struct BVPair {
  Generator field;
  Generator anti;
};

class BVSpace {
 public:
  BVSpace() = default;
  /// Pairs are given by generator names; throws InvalidArgument unless every
  /// generator appears in exactly one pair with opposite parities.
  BVSpace(SpacePtr space, const std::vector<std::pair<std::string, std::string>>& pairs);

  const SpacePtr& space() const { return space_; }
  const std::vector<BVPair>& pairs() const { return pairs_; }
  std::string field_name(int pair) const;
  std::string anti_name(int pair) const;

  /// Space with the given pair-index subset (fields and antifields kept in
  /// the order of the parent space), plus the induced BVSpace.
  BVSpace subspace(const std::vector<int>& pair_indices) const;

 private:
  SpacePtr space_;
  std::vector<BVPair> pairs_;
};

/// Action as a polynomial in hbar: power -> coefficient.
using BVAction = std::map<int, SuperFunction>;

/// Left/right derivative with respect to a generator of either parity.
SuperFunction derivative(const SuperFunction& f, const Generator& g, Side side);

/// (f,g) = sum_alpha d_r f/dz^alpha d_l g/dz^+_alpha - d_r f/dz^+_alpha d_l g/dz^alpha,
/// so (z, z^+) = 1 for every Darboux pair.
SuperFunction bv_bracket(const BVSpace& bv, const SuperFunction& f, const SuperFunction& g);

/// Delta = sum_alpha (-1)^{|z^alpha|} d_l/dz^alpha d_l/dz^+_alpha, so that
/// Delta(fg) = Delta(f) g + (-1)^{|f|} f Delta(g) + (-1)^{|f|} (f,g).
SuperFunction bv_laplacian(const BVSpace& bv, const SuperFunction& f);

struct MasterResiduals {
  SuperFunction cme;                     // (1/2)(S0,S0)
  std::map<int, SuperFunction> qme;      // (1/2)(S,S) - i hbar Delta S, by hbar power
  bool cme_zero() const { return cme.is_zero(); }
  bool qme_zero() const;
};

MasterResiduals master_residuals(const BVSpace& bv, const BVAction& S);
MasterResiduals master_residuals(const BVSpace& bv, const SuperFunction& S);

/// Checks Delta e^{tS} = (t Delta S + (1/2) t^2 (S,S)) e^{tS} coefficientwise
/// in the formal parameter t up to t^max_k; returns the first nonzero
/// residual coefficient (zero if the identity holds).
SuperFunction exponential_identity_residual(const BVSpace& bv, const SuperFunction& S, int max_k);

/// Graph of a gauge fermion over a set of pairs: z^+_alpha = d_r psi/dz^alpha
/// for the listed pairs. psi must be odd and depend only on the fields of
/// those pairs.
struct LinearLagrangian {
  SuperFunction psi;
  std::vector<int> pairs;  // empty: all pairs
};

/// Substitutes z^+ = d_r psi/dz on the listed pairs.
SuperFunction restrict_to_lagrangian(const BVSpace& bv, const SuperFunction& S, const LinearLagrangian& L);

enum class BVFieldContent { Full, Minimal };

struct BVModel {
  BVSpace bv;
  BVAction action;
  FPModel fp;  // the underlying FP model (Full content) or gauge data
};

/// Pi T^* of the FP field space (Full) or of (x, c) (Minimal), with
/// S_BV = S + sum_alpha z^+_alpha Q(z^alpha). Throws CMEViolation if the
/// classical master equation fails.
BVModel bv_from_gauge(const GaugeModel& gm, BVFieldContent content = BVFieldContent::Full);

/// Antifield name for a field name.
std::string antifield_name(const std::string& field);

/// Normalization of the integration measure relative to the canonical
/// Darboux Berezinian: constant * (2 pi)^{two_pi_half/2} * pi^{pi_half/2}.
struct BVMeasure {
  Scalar constant{1};
  int two_pi_half = 0;
  int pi_half = 0;
};

/// The measure that turns the BV integral of an FP-derived action into the
/// integral over R^n of e^{(i/hbar)S}: vol(G)/(N (2 pi i)^k).
BVMeasure fp_measure(const GaugeModel& gm);

struct BVIntegralOptions {
  /// Values of the even fields at the expansion points (all fields of the
  /// Lagrangian, in the even order of the space); empty: discovered.
  std::vector<std::vector<Scalar>> points;
  BVMeasure measure;
  int bound = kDefaultHalfEdgeBound;
};

/// Perturbative BV integral over the Lagrangian: even directions by the
/// Gaussian moment engine, odd directions by Berezin integration with the
/// odd fields ordered as in the space. Throws DegenerateRestriction.
AsymptoticSeries bv_integral(const BVSpace& bv, const BVAction& S, const LinearLagrangian& L, int order,
                             const BVIntegralOptions& opt = {});

struct PushforwardResult {
  BVSpace y;          // the remaining BV space
  BVAction effective; // S_eff by hbar power, in y.space()
  int max_weight = 0;
};

/// e^{(i/hbar) S_eff(y)} = int_{L'} e^{(i/hbar) S(y + y')} over the pairs
/// listed in `integrate_pairs` (their generator names must form complete
/// pairs; otherwise SplitNotSymplectic), with L' the graph of `psi` in those
/// pairs. Terms of S_eff of hbar power <= max_hbar and degree <= max_degree
/// in Y are exact. S_eff is normalized by the free Gaussian integral, so it
/// is defined up to that (field-independent) constant.
PushforwardResult bv_pushforward(const BVSpace& bv, const BVAction& S, const std::vector<std::string>& integrate,
                                 const SuperFunction& psi, int max_hbar, int max_degree);

/// Keep terms of total degree <= d and hbar power <= h.
BVAction truncate_action(const BVAction& S, int max_hbar, int max_degree);

}  // namespace phasekit

#endif  // PHASEKIT_BV_HPP
