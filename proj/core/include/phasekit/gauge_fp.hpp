#ifndef PHASEKIT_GAUGE_FP_HPP
#define PHASEKIT_GAUGE_FP_HPP

#include <optional>
#include <string>
#include <vector>

#include "phasekit/stationary_phase.hpp"
#include "phasekit/superalgebra.hpp"

namespace phasekit {

/// Polynomial action of a k-dimensional Lie algebra on R^n with a gauge
/// condition phi: R^n -> R^k.
struct GaugeModel {
  ActionModel action;
  int lie_dim = 0;
  /// f[a][b][c] = f_{ab}^c, so that [e_a, e_b] = f_{ab}^c e_c.
  std::vector<std::vector<std::vector<Scalar>>> f;
  /// v[a][i]: component i of the fundamental vector field of e_a.
  std::vector<std::vector<Poly>> v;
  std::vector<Poly> phi;
  /// vol(G) = vol_rational * pi^{vol_pi_power}.
  Rational vol_rational{1};
  int vol_pi_power = 0;
  /// Number of intersections of the gauge slice with a generic orbit.
  int N = 1;

  int n() const { return action.dimension(); }
  Scalar f_at(int a, int b, int c) const { return f[size_t(a)][size_t(b)][size_t(c)]; }
};

struct GaugeCheck {
  bool invariant = true;
  bool antisymmetric = true;
  bool jacobi = true;
  bool bracket = true;  // [v_a, v_b] = f_ab^c v_c
  std::vector<std::string> witnesses;
  bool ok() const { return invariant && antisymmetric && jacobi && bracket; }
};

GaugeCheck check_gauge_model(const GaugeModel& gm);
/// Throws NotGaugeInvariant or BadStructureConstants with the first witness.
void validate_gauge_model(const GaugeModel& gm);

/// FP(x)^a_b = d phi^a (v_b) as a matrix of polynomials.
std::vector<std::vector<Poly>> fp_operator_poly(const GaugeModel& gm);
Matrix fp_operator(const GaugeModel& gm, const std::vector<Scalar>& x);

/// Faddeev-Popov extension: even generators x^i, lambda_a; odd generators
/// ordered (cbar_1, c^1, cbar_2, c^2, ...).
struct FPModel {
  GaugeModel gauge;
  SpacePtr space;
  SuperFunction S_fp;
  std::vector<int> x_index;       // even indices
  std::vector<int> lambda_index;  // even indices
  std::vector<int> c_index;       // odd indices
  std::vector<int> cbar_index;    // odd indices
};

std::vector<std::string> fp_names_even(const GaugeModel& gm);
std::vector<std::string> fp_names_odd(const GaugeModel& gm);

/// S + <lambda, phi(x)> + <cbar, FP(x) c>. An empty phi is treated as
/// phi = 0 (enough for BRST and BV; fp_expand then reports a degenerate FP
/// operator). Validates the gauge model first unless `validate` is false (the BV construction reports inconsistent
/// structure constants through the classical master equation instead).
FPModel build_fp(const GaugeModel& gm, bool validate = true);

struct FPCritical {
  std::vector<Scalar> x;
  Matrix fp;           // FP(x0)
  Scalar det_fp;
  Matrix hessian;      // (n+k)x(n+k) block Hessian of S + <lambda, phi> in (x, lambda)
  Matrix hessian_inv;  // its inverse
  Matrix K;            // x-x block of the inverse
  Matrix gamma;        // x-lambda block of the inverse
  Matrix fp_inv;
};

struct FPDiagnostic {
  std::vector<double> point;
  std::string message;
};

struct FPCriticalSearch {
  std::vector<FPCritical> points;
  std::vector<FPDiagnostic> diagnostics;
};

/// Block data at a known point with grad S = 0 and phi = 0. Throws
/// DegenerateFP or DegenerateSlice.
FPCritical fp_critical_data(const FPModel& fp, const std::vector<Scalar>& x);

/// {grad S = 0, phi = 0} by Newton on the even part of S_FP from a seed grid
/// in x (lambda = 0). Points with singular FP are reported as diagnostics.
FPCriticalSearch fp_critical_points(const FPModel& fp, const std::vector<std::vector<double>>& seeds = {});

enum class DetMode {
  Abs,     // |det FP| per intersection, divided by N
  Signed,  // signed det FP; caller restricts to a fundamental domain
};

struct FPExpandOptions {
  DetMode mode = DetMode::Abs;
  /// Keep only points with normal . x + offset > 0 (empty: keep all).
  std::vector<Scalar> half_space_normal;
  Scalar half_space_offset{0};
  /// Intersection count of the restricted slice used in Signed mode.
  int signed_N = 1;
  /// Explicit critical points (x only); otherwise discovered.
  std::vector<std::vector<Scalar>> points;
  bool check_exponential = true;
  int bound = kDefaultHalfEdgeBound;
};

/// Typed-graph expansion of the gauge-fixed integral, normalized to the
/// integral over R^n of e^{(i/hbar)S}:
///   vol(G)/N (2 pi hbar)^{(n-k)/2} e^{i pi sign H/4}/|det H|^{1/2} det FP(x0)
///   * sum over typed graphs (-i hbar)^{|E|-|V|}/|Aut| F.
AsymptoticSeries fp_expand(const FPModel& fp, int order, const FPExpandOptions& opt = {});

/// Right-acting BRST differential: Qx = c^a v_a, Qc = (1/2) f c c, Qcbar = lambda,
/// Qlambda = 0, extended by Q(fg) = f Q(g) + (-1)^{|g|} Q(f) g.
SuperFunction brst_apply(const FPModel& fp, const SuperFunction& f);
/// Images of the generators: even generators then odd generators.
std::vector<SuperFunction> brst_generator_images_even(const FPModel& fp);
std::vector<SuperFunction> brst_generator_images_odd(const FPModel& fp);

struct GaugeFermionCheck {
  bool ok = false;
  SuperFunction difference;  // S + Q psi - S_FP
  std::string report;
};

/// psi = <cbar, phi(x)>; checks S + Q psi == S_FP exactly.
GaugeFermionCheck gauge_fermion_check(const FPModel& fp);
SuperFunction gauge_fermion(const FPModel& fp);

}  // namespace phasekit

#endif  // PHASEKIT_GAUGE_FP_HPP
