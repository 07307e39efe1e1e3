#ifndef PHASEKIT_MODELS_HPP
#define PHASEKIT_MODELS_HPP

#include "phasekit/bv.hpp"
#include "phasekit/gauge_fp.hpp"
#include "phasekit/lie.hpp"
#include "phasekit/stationary_phase.hpp"

namespace phasekit::models {

/// S = x^2/2 + lambda x^4/4 on R with the critical point 0 registered.
ActionModel quartic(const Rational& lambda);

/// Radial profile F(u) = u^2/4 + u^3/6 + u^4/8 of the deformed hat.
Poly hat_profile();

/// S = F(x^2 + y^2 - 1) on R^2 with SO(2) rotating (x, y), gauge condition
/// phi = y, vol(SO(2)) = 2 pi and N = 2 slice intersections per orbit.
GaugeModel deformed_hat();

/// The plain Mexican hat S = (x^2 + y^2 - 1)^2 / 4 with the same gauge data.
GaugeModel mexican_hat();

/// SO(3) acting on R^3 by rotations, S = |x|^4, no gauge condition.
GaugeModel so3_rotations();

/// Two-dimensional non-unimodular algebra [e1, e2] = e2 acting trivially on
/// R with S = x^2/2.
GaugeModel nonunimodular_trivial();

/// X = (x, y, w), SO(2) rotating (x, y), S = w^2/2 + w (x^2 + y^2)/2 + w^3/6,
/// phi = y. Integrating out (w, w+) gives a nontrivial effective action.
GaugeModel pushforward_toy();

/// Same symmetry with S = w^2/2 + (x^2 + y^2)^2/4: w decouples and enters
/// quadratically.
GaugeModel decoupled_toy();

/// Structure constants of su(2) = so(3) in the orthonormal basis: eps_abc.
inline LieData su2() { return LieData::levi_civita(); }

}  // namespace phasekit::models

#endif  // PHASEKIT_MODELS_HPP
