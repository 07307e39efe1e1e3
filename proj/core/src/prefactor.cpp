#include "phasekit/prefactor.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace phasekit {

std::complex<double> Prefactor::amplitude(double hbar) const {
  double mag = std::pow(2 * std::numbers::pi, two_pi_half / 2.0) * std::pow(hbar, hbar_half / 2.0) *
               std::pow(std::numbers::pi, pi_half / 2.0) / std::sqrt(abs_det.get_d());
  std::complex<double> phase = std::polar(1.0, std::numbers::pi * phase_eighths / 4.0);
  return constant.to_complex() * mag * phase;
}

std::complex<double> Prefactor::numeric(double hbar) const {
  std::complex<double> s0 = S0.to_complex();
  // e^{(i/hbar) S0}; a complex S0 contributes a real exponential
  std::complex<double> osc = std::exp(std::complex<double>(0, 1) * s0 / hbar);
  return amplitude(hbar) * osc;
}

bool Prefactor::same_shape(const Prefactor& o) const {
  return two_pi_half == o.two_pi_half && hbar_half == o.hbar_half && pi_half == o.pi_half &&
         ((phase_eighths - o.phase_eighths) % 8 + 8) % 8 == 0 && abs_det == o.abs_det && S0 == o.S0;
}

bool Prefactor::operator==(const Prefactor& o) const { return same_shape(o) && constant == o.constant; }

std::string Prefactor::to_string() const {
  std::ostringstream os;
  os << "(" << constant.to_string() << ")";
  if (two_pi_half != 0) os << "*(2pi)^(" << two_pi_half << "/2)";
  if (hbar_half != 0) os << "*hbar^(" << hbar_half << "/2)";
  if (pi_half != 0) os << "*pi^(" << pi_half << "/2)";
  int ph = ((phase_eighths % 8) + 8) % 8;
  if (ph != 0) os << "*exp(i*pi*" << ph << "/4)";
  if (abs_det != 1) os << "*|" << abs_det.get_str() << "|^(-1/2)";
  if (!S0.is_zero()) os << "*exp((i/hbar)*(" << S0.to_string() << "))";
  return os.str();
}

}  // namespace phasekit
