#ifndef PHASEKIT_PREFACTOR_HPP
#define PHASEKIT_PREFACTOR_HPP

#include <complex>
#include <string>

#include "phasekit/scalar.hpp"

namespace phasekit {

/// Closed-form leading factor of a stationary-phase contribution:
///
///   constant * (2 pi)^{two_pi_half/2} * hbar^{hbar_half/2} * pi^{pi_half/2}
///            * e^{i pi phase_eighths / 4} * |abs_det|^{-1/2} * e^{(i/hbar) S0}
///
/// Everything stays exact; numeric() is only for oracle comparison.
struct Prefactor {
  Scalar constant{1};
  int two_pi_half = 0;
  int hbar_half = 0;
  int pi_half = 0;
  int phase_eighths = 0;  // reduced mod 8
  Rational abs_det{1};
  Scalar S0{0};

  /// Value including the oscillating phase e^{(i/hbar)S0}.
  std::complex<double> numeric(double hbar) const;
  /// Value without e^{(i/hbar)S0}.
  std::complex<double> amplitude(double hbar) const;

  /// Same symbolic shape (everything except the constant agrees), so two
  /// contributions can be added by adding constants.
  bool same_shape(const Prefactor& o) const;
  bool operator==(const Prefactor& o) const;

  std::string to_string() const;
};

}  // namespace phasekit

#endif  // PHASEKIT_PREFACTOR_HPP
