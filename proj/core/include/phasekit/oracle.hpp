#ifndef PHASEKIT_ORACLE_HPP
#define PHASEKIT_ORACLE_HPP

#include <complex>
#include <utility>
#include <vector>

#include "phasekit/poly.hpp"
#include "phasekit/stationary_phase.hpp"

namespace phasekit {

/// Smooth compactly supported window: on each axis
/// w(t) = exp(-left/t - right/(1-t)) for t = (x - lo)/(hi - lo) in (0,1).
struct Window {
  bool enabled = false;
  std::vector<double> lo;
  std::vector<double> hi;
  double left = 1.0;
  double right = 2.0;
};

enum class OracleMode {
  Oscillatory,  // e^{(i/hbar) S}, Fresnel-regularized
  Euclidean,    // e^{-S/hbar}
};

struct QuadratureSpec {
  Poly S;  // real coefficients, dimension <= 3
  double hbar = 1.0;
  OracleMode mode = OracleMode::Oscillatory;
  /// Regularizer e^{-eps |x|^2/hbar}; strictly decreasing, positive. Empty
  /// means no regularizer (requires a window or Euclidean mode).
  std::vector<double> eps_schedule{0.04, 0.02, 0.01, 0.005};
  double step = 0.0;   // 0: automatic
  double range = 0.0;  // half-width of the box around the origin; 0: automatic
  Window window;
  /// Relative error threshold above which NonConvergent is raised.
  double tolerance = 1e-4;
  /// Number of worker threads for the grid sum (the reduction order is fixed).
  int threads = 4;
};

struct QuadratureResult {
  std::complex<double> value;
  double error_estimate = 0.0;  // extrapolation residual + grid-halving change
  double extrapolation_residual = 0.0;
  double grid_change = 0.0;
  std::vector<std::complex<double>> per_eps;
  long long points_per_dim = 0;
};

/// Trapezoid rule on a box for each regularization strength, followed by
/// polynomial (Neville) extrapolation to eps -> 0. Throws NonConvergent if
/// the error estimate exceeds tolerance * |value|, InvalidArgument for
/// dimension > 3 or a malformed schedule.
QuadratureResult oscillatory_integral(const QuadratureSpec& spec);

/// Independent 1D cross-check for polynomial phases whose top degree is even
/// with positive leading coefficient: integrate along the ray x = e^{i theta} t.
std::complex<double> rotated_contour_integral(const Poly& S, double hbar, double theta);

/// The 1D value of the bump window integral int w (used to normalize decay
/// tests).
double window_mass(const Window& w);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double band = 0.0;  // 2 standard errors
  bool degenerate = false;
  std::vector<double> residuals;  // relative remainders used in the fit
};

/// Least-squares slope of log |I - truncation| / |leading| against log hbar.
/// Needs >= 4 samples spanning a decade (InsufficientSamples). Remainders
/// below noise_floor are dropped; with fewer than 3 left the fit is flagged
/// degenerate.
FitResult series_fit(const std::vector<std::pair<double, std::complex<double>>>& samples,
                     const AsymptoticSeries& series, int order, double noise_floor = 1e-11);

/// Plain log-log slope of |y| against x (>= 2 points).
FitResult loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace phasekit

#endif  // PHASEKIT_ORACLE_HPP
