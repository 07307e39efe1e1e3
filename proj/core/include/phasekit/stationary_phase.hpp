#ifndef PHASEKIT_STATIONARY_PHASE_HPP
#define PHASEKIT_STATIONARY_PHASE_HPP

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "phasekit/graph.hpp"
#include "phasekit/linalg.hpp"
#include "phasekit/poly.hpp"
#include "phasekit/prefactor.hpp"
#include "phasekit/scalar.hpp"
#include "phasekit/taylor.hpp"

namespace phasekit {

struct CriticalPoint {
  std::vector<Scalar> x;       // exact coordinates (empty if not rationalizable)
  std::vector<double> approx;  // floating-point location
  bool exact = false;          // gradient verified to vanish exactly at x
  bool degenerate = false;     // Hessian singular (exactly, or numerically if !exact)
  std::string note;
};

/// Polynomial phase S on R^n with a constant density.
struct ActionModel {
  Poly S;
  Scalar density{1};
  std::vector<std::string> names;
  std::vector<CriticalPoint> critical_points;
  bool gauge = false;  // degenerate Hessians are expected (gauge orbits)

  int dimension() const { return S.dim(); }
  /// Register an exact critical point; throws InvalidArgument if the gradient
  /// does not vanish and DegenerateHessian if the Hessian is singular and the
  /// model is not flagged gauge.
  void add_critical_point(const std::vector<Scalar>& x);
};

struct SeedFailure {
  std::vector<double> seed;
  std::string reason;
};

struct CriticalSearch {
  std::vector<CriticalPoint> points;
  std::vector<SeedFailure> failures;
};

/// Newton iteration on grad S from every seed (pseudo-inverse steps, so
/// degenerate orbits are reached as well). Converged points are rationalized
/// by continued fractions and re-verified exactly; duplicates are merged.
CriticalSearch find_critical_points(const Poly& S, const std::vector<std::vector<double>>& seeds,
                                    double tol = 1e-12, int max_iter = 100);
/// Rational seed grid {lo, lo+h, ..., hi}^dim.
std::vector<std::vector<double>> seed_grid(int dim, double lo = -2.0, double hi = 2.0, int steps = 9);
/// Best rational approximation with denominator <= max_den, if within tol.
bool rationalize(double x, Rational& out, long max_den = 10000, double tol = 1e-9);

/// Generic Feynman rules: half-edge types index into ranges, a propagator
/// joins two (type, index) pairs, a vertex weight reads the types and indices
/// of its half-edges, leaves read external values.
struct FeynmanRules {
  std::array<int, kNumHalfEdgeTypes> range{0, 0, 0, 0};
  std::function<Scalar(HalfEdgeType, int, HalfEdgeType, int)> propagator;
  std::function<Scalar(const std::vector<HalfEdgeType>&, const std::vector<int>&)> vertex;
  std::function<Scalar(int leaf_position, int index)> leaf;
  /// Multiply by (-1) per closed ghost cycle.
  bool ghost_cycle_sign = false;
};

/// Sum over all maps from half-edges to index values of the product of
/// vertex, edge and leaf factors.
Scalar evaluate_weight(const Graph& g, const FeynmanRules& rules);
/// Number of closed cycles formed by ghost/antighost edges.
int ghost_cycles(const Graph& g);

/// Untyped weight: interactions[k] is the rank-k tensor (entries for unused
/// ranks may be default-constructed). Throws MissingTensor when a vertex
/// valence has no tensor, InvalidArgument when leaves lack values.
Scalar feynman_weight(const Graph& g, const std::vector<SymTensor>& interactions, const Matrix& K,
                      const std::vector<std::vector<Scalar>>& leaf_values = {});

enum class WeightMode { PartitionFunction, EffectiveAction };

/// (-i hbar)^{|E|-|V|}/|Aut| F or (-i hbar)^{loops}/|Aut| F.
HbarSeries normalized_weight(const Graph& g, long long aut, const Scalar& weight, WeightMode mode);

struct ClassContribution {
  std::string key;
  int excess = 0;
  int loops = 0;
  long long aut = 1;
  bool connected = true;
  Scalar weight;
  HbarSeries contribution;  // partition-function normalization
};

struct CriticalContribution {
  std::vector<Scalar> point;
  Scalar S0;
  Prefactor prefactor;
  HbarSeries corrections;  // 1 + c_1 hbar + ... + c_m hbar^m
  std::vector<ClassContribution> classes;
};

struct AsymptoticSeries {
  int order = 0;
  std::vector<CriticalContribution> points;

  /// Sum over critical points of prefactor * truncated series.
  std::complex<double> evaluate(double hbar) const;
  /// Sum of the leading terms only.
  std::complex<double> leading(double hbar) const;
  /// Magnitude of the leading prefactors (used to normalize remainders).
  double leading_scale(double hbar) const;
};

struct ExpandOptions {
  /// Cross-check the all-graph sum against exp(connected sum) and throw
  /// InvalidArgument on disagreement.
  bool check_exponential = true;
  int bound = kDefaultHalfEdgeBound;
};

/// Full stationary-phase expansion through hbar^order at the registered
/// critical points (discovered from a seed grid when none are registered).
AsymptoticSeries expand(const ActionModel& model, int order, const ExpandOptions& opt = {});

/// The same corrections computed without graphs: Gaussian moments of
/// exp((i/hbar) sum P_k/k!) expanded directly. Used as an oracle.
HbarSeries corrections_by_moments(const Poly& S, const std::vector<Scalar>& x0, int order);

/// exp of a series without constant term, truncated at max_power.
HbarSeries series_exp(const HbarSeries& w, int max_power);

}  // namespace phasekit

#endif  // PHASEKIT_STATIONARY_PHASE_HPP
