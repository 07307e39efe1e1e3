#include <cmath>
#include <complex>

#include "doctest.h"
#include "phasekit/error.hpp"
#include "phasekit/models.hpp"
#include "phasekit/oracle.hpp"

using namespace phasekit;

namespace {

Poly quadratic(int dim, const std::vector<Rational>& diag) {
  Poly p(dim);
  for (int i = 0; i < dim; ++i) {
    Monomial m(static_cast<size_t>(dim), 0);
    m[size_t(i)] = 2;
    p.add_term(m, Scalar(diag[size_t(i)] / 2));
  }
  return p;
}

double rel(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) / std::abs(b); }

const std::complex<double> kEighth = std::polar(1.0, M_PI / 4);

}  // namespace

TEST_CASE("Fresnel integrals") {
  QuadratureSpec spec;
  spec.S = quadratic(1, {1});
  spec.hbar = 1.0;
  QuadratureResult r = oscillatory_integral(spec);
  CHECK(rel(r.value, std::sqrt(2 * M_PI) * kEighth) < 1e-3);
  CHECK(r.error_estimate < 1e-3 * std::abs(r.value));

  spec.S = quadratic(2, {1, -1});
  spec.eps_schedule = {0.08, 0.04, 0.02, 0.01};
  QuadratureResult r2 = oscillatory_integral(spec);
  CHECK(rel(r2.value, std::complex<double>(2 * M_PI, 0)) < 1e-3);
}

TEST_CASE("Euclidean mode") {
  QuadratureSpec spec;
  spec.S = quadratic(1, {1});
  spec.hbar = 0.5;
  spec.mode = OracleMode::Euclidean;
  spec.eps_schedule = {};
  QuadratureResult r = oscillatory_integral(spec);
  CHECK(rel(r.value, std::sqrt(2 * M_PI * 0.5)) < 1e-9);
}

TEST_CASE("no critical point: super-polynomial decay") {
  std::vector<double> hs, mags;
  for (double hbar : {0.1, 0.07, 0.05, 0.035, 0.025, 0.018, 0.01}) {
    QuadratureSpec spec;
    spec.S = Poly::variable(1, 0);
    spec.hbar = hbar;
    spec.eps_schedule = {};
    spec.window.enabled = true;
    spec.window.lo = {0.0};
    spec.window.hi = {1.0};
    spec.tolerance = 1e-3;
    QuadratureResult r = oscillatory_integral(spec);
    hs.push_back(hbar);
    mags.push_back(std::abs(r.value) / window_mass(spec.window));
  }
  FitResult f = loglog_fit(hs, mags);
  CHECK(f.slope > 3.0);
}

TEST_CASE("quartic model against its expansion") {
  ActionModel m = models::quartic(Rational(1, 2));
  AsymptoticSeries series = expand(m, 2);
  QuadratureSpec spec;
  spec.S = m.S;
  spec.hbar = 0.1;
  spec.eps_schedule = {0.04, 0.02, 0.01, 0.005, 0.0025};
  QuadratureResult r = oscillatory_integral(spec);
  std::complex<double> contour = rotated_contour_integral(m.S, 0.1, M_PI / 8);
  CHECK(rel(r.value, contour) < 1e-8);
  // the order-2 truncation misses c3 hbar^3 relative to the prefactor
  double remainder = std::abs(r.value - series.evaluate(0.1)) / series.leading_scale(0.1);
  CHECK(remainder < 2.0 * (3465.0 / 1024.0) * 1e-3);
  CHECK(remainder > 0.5 * (3465.0 / 1024.0) * 1e-3);
}

TEST_CASE("series_fit remainder slopes") {
  ActionModel m = models::quartic(Rational(1, 2));
  AsymptoticSeries s0 = expand(m, 0), s1 = expand(m, 1);
  std::vector<std::pair<double, std::complex<double>>> samples;
  for (double hbar : {0.1, 0.05, 0.025, 0.01}) samples.emplace_back(hbar, rotated_contour_integral(m.S, hbar, M_PI / 8));
  FitResult f1 = series_fit(samples, s1, 1);
  CHECK(f1.slope == doctest::Approx(2.0).epsilon(0.15));
  CHECK_FALSE(f1.degenerate);
  FitResult f0 = series_fit(samples, s0, 0);
  CHECK(f0.slope == doctest::Approx(1.0).epsilon(0.3));

  ActionModel q;
  q.S = quadratic(1, {1});
  q.names = {"x"};
  q.add_critical_point({Scalar(0)});
  AsymptoticSeries sq = expand(q, 1);
  std::vector<std::pair<double, std::complex<double>>> exact;
  for (double hbar : {0.1, 0.05, 0.025, 0.01})
    exact.emplace_back(hbar, std::sqrt(2 * M_PI * hbar) * kEighth);
  FitResult fq = series_fit(exact, sq, 1);
  CHECK(fq.degenerate);
  CHECK(std::isnan(fq.slope));

  std::vector<std::pair<double, std::complex<double>>> few(samples.begin(), samples.begin() + 3);
  CHECK_THROWS_AS(series_fit(few, s1, 1), Error);
  std::vector<std::pair<double, std::complex<double>>> narrow;
  for (double hbar : {0.1, 0.08, 0.06, 0.04}) narrow.emplace_back(hbar, rotated_contour_integral(m.S, hbar, M_PI / 8));
  CHECK_THROWS_AS(series_fit(narrow, s1, 1), Error);
}

TEST_CASE("determinism and grid refinement") {
  QuadratureSpec spec;
  spec.S = Poly::variable(2, 0) * Poly::variable(2, 0) + Poly::variable(2, 1) * Poly::variable(2, 1);
  spec.hbar = 1.0;
  spec.eps_schedule = {0.08, 0.04, 0.02, 0.01};
  spec.threads = 4;
  QuadratureResult a = oscillatory_integral(spec);
  spec.threads = 3;
  QuadratureResult b = oscillatory_integral(spec);
  CHECK(a.value == b.value);  // bitwise: fixed reduction order
  CHECK(a.error_estimate == b.error_estimate);

  QuadratureSpec one;
  one.S = quadratic(1, {1});
  one.range = 90.0;
  one.step = 0.05;
  one.eps_schedule = {0.04, 0.02, 0.01, 0.005};
  QuadratureResult coarse = oscillatory_integral(one);
  one.step = 0.025;
  QuadratureResult fine = oscillatory_integral(one);
  CHECK(std::abs(coarse.value - fine.value) <= coarse.error_estimate);
}

TEST_CASE("invalid specifications") {
  QuadratureSpec spec;
  spec.S = quadratic(1, {1});
  spec.eps_schedule = {0.01, 0.02};
  CHECK_THROWS_AS(oscillatory_integral(spec), Error);
  spec.eps_schedule = {0.01, -0.02};
  CHECK_THROWS_AS(oscillatory_integral(spec), Error);
  spec.eps_schedule = {};
  CHECK_THROWS_AS(oscillatory_integral(spec), Error);  // needs regularizer or window
  spec.S = Poly(4);
  spec.eps_schedule = {0.02, 0.01};
  CHECK_THROWS_AS(oscillatory_integral(spec), Error);
}
