#include <random>

#include "doctest.h"
#include "phasekit/error.hpp"
#include "phasekit/models.hpp"
#include "phasekit/stationary_phase.hpp"
#include "phasekit/taylor.hpp"
#include "phasekit/wick.hpp"

using namespace phasekit;

namespace {

std::vector<SymTensor> single_tensor(int rank, const Scalar& value) {
  std::vector<SymTensor> t(static_cast<size_t>(rank + 1));
  for (int k = 0; k <= rank; ++k) t[size_t(k)] = SymTensor(k, 1);
  t[size_t(rank)].set(std::vector<int>(static_cast<size_t>(rank), 0), value);
  return t;
}

Graph disjoint(const Graph& a, const Graph& b) {
  Graph g = a;
  int off = a.half_edges;
  g.half_edges += b.half_edges;
  for (auto v : b.vertices) {
    for (int& h : v) h += off;
    g.vertices.push_back(v);
  }
  for (auto e : b.edges) g.edges.push_back({e[0] + off, e[1] + off});
  for (int l : b.leaves) g.leaves.push_back(l + off);
  return g;
}

}  // namespace

TEST_CASE("critical point search") {
  CriticalSearch q = find_critical_points(models::quartic(Rational(1)).S, seed_grid(1));
  REQUIRE(q.points.size() == 1);
  CHECK(q.points[0].exact);
  CHECK(q.points[0].x[0] == Scalar(0));

  Poly x = Poly::variable(1, 0);
  Poly s = (x - Poly::constant(1, Scalar(Rational(1, 3)))).pow(2);
  CriticalSearch r = find_critical_points(s, seed_grid(1));
  REQUIRE(r.points.size() == 1);
  CHECK(r.points[0].x[0] == Scalar(Rational(1, 3)));

  CriticalSearch hat = find_critical_points(models::mexican_hat().action.S, seed_grid(2));
  bool origin = false;
  int degenerate = 0;
  for (const auto& p : hat.points) {
    if (p.exact && p.x[0].is_zero() && p.x[1].is_zero()) {
      origin = true;
      CHECK_FALSE(p.degenerate);
    } else if (p.degenerate) {
      ++degenerate;
    }
  }
  CHECK(origin);
  CHECK(degenerate > 0);
}

TEST_CASE("registering a degenerate point outside the gauge pipeline fails") {
  ActionModel m;
  m.S = models::mexican_hat().action.S;
  CHECK_THROWS_AS(m.add_critical_point({Scalar(1), Scalar(0)}), Error);
  CHECK_THROWS_AS(m.add_critical_point({Scalar(2), Scalar(0)}), Error);
  m.gauge = true;
  CHECK_NOTHROW(m.add_critical_point({Scalar(1), Scalar(0)}));
}

TEST_CASE("feynman weights") {
  Matrix K = Matrix::identity(1);
  Rational lambda(1, 3);
  CHECK(feynman_weight(figure_eight_graph(), single_tensor(4, Scalar(6 * lambda)), K) == Scalar(6 * lambda));
  Scalar p(Rational(5, 2));
  CHECK(feynman_weight(theta_graph(), single_tensor(3, p), K) == p * p);
  CHECK(feynman_weight(theta_graph(), single_tensor(3, p), Matrix(1, 1)).is_zero());
  std::vector<SymTensor> quartic_only(5);
  quartic_only[4] = single_tensor(4, p)[4];
  CHECK_THROWS_AS(feynman_weight(theta_graph(), quartic_only, K), Error);
}

TEST_CASE("normalized weights") {
  Scalar F(1);
  HbarSeries theta = normalized_weight(theta_graph(), 12, F, WeightMode::EffectiveAction);
  CHECK(theta == HbarSeries::minus_i_hbar(2) * Scalar(Rational(1, 12)));
  HbarSeries g2 = normalized_weight(gamma2_graph(), 4, F, WeightMode::EffectiveAction);
  CHECK(g2 == HbarSeries::minus_i_hbar(1) * Scalar(Rational(1, 4)));
  HbarSeries f8 = normalized_weight(figure_eight_graph(), 8, F, WeightMode::PartitionFunction);
  CHECK(f8 == HbarSeries::minus_i_hbar(1) * Scalar(Rational(1, 8)));
  Graph two = disjoint(theta_graph(), theta_graph());
  CHECK_THROWS_AS(normalized_weight(two, 288, F, WeightMode::EffectiveAction), Error);
  CHECK(normalized_weight(two, 288, F, WeightMode::PartitionFunction) ==
        HbarSeries::minus_i_hbar(2) * Scalar(Rational(1, 288)));
}

TEST_CASE("quartic expansion") {
  Rational lambda(1, 2);
  AsymptoticSeries s = expand(models::quartic(lambda), 3);
  REQUIRE(s.points.size() == 1);
  const auto& c = s.points[0].corrections;
  CHECK(c.coeff(0) == Scalar(1));
  CHECK(c.coeff(1) == Scalar(Rational(0), -Rational(3, 4) * lambda));
  CHECK(c.coeff(2) == Scalar(-Rational(105, 32) * lambda * lambda));
  CHECK(c == corrections_by_moments(models::quartic(lambda).S, {Scalar(0)}, 3));
  const Prefactor& p = s.points[0].prefactor;
  CHECK(p.hbar_half == 1);
  CHECK(p.two_pi_half == 1);
  CHECK(p.phase_eighths == 1);
}

TEST_CASE("purely quadratic action has no corrections") {
  ActionModel m;
  Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  m.S = x * x - Scalar(3) * y * y + x * y;
  m.add_critical_point({Scalar(0), Scalar(0)});
  AsymptoticSeries s = expand(m, 3);
  CHECK(s.points[0].corrections == HbarSeries(Scalar(1)));
  Matrix H = taylor_data(m.S, {Scalar(0), Scalar(0)}, 2).hessian;
  Prefactor f = fresnel_value(H, FresnelNormalization::Hbar);
  CHECK(s.points[0].prefactor == f);
}

TEST_CASE("double well carries two phase-separated series") {
  ActionModel m;
  Poly x = Poly::variable(1, 0);
  m.S = Scalar(Rational(1, 4)) * (x * x - Poly::constant(1, 1)).pow(2);
  AsymptoticSeries s = expand(m, 2);
  // critical points -1, 0, 1 (the maximum at 0 included)
  REQUIRE(s.points.size() == 3);
  int zero_phase = 0;
  for (const auto& p : s.points) {
    if (p.S0.is_zero()) ++zero_phase;
    CHECK(p.corrections == corrections_by_moments(m.S, p.point, 2));
  }
  CHECK(zero_phase == 2);
}

TEST_CASE("corrections are invariant under unimodular shears") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> d(-2, 2);
  Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  Poly S = Scalar(Rational(1, 2)) * x * x - y * y + Scalar(Rational(1, 3)) * x * x * y + Scalar(Rational(1, 5)) * y.pow(4);
  HbarSeries ref = corrections_by_moments(S, {Scalar(0), Scalar(0)}, 2);
  ActionModel m;
  m.S = S;
  m.add_critical_point({Scalar(0), Scalar(0)});
  CHECK(expand(m, 2).points[0].corrections == ref);
  for (int trial = 0; trial < 5; ++trial) {
    Scalar a(d(rng));
    // (x, y) -> (x + a y, y) has unit determinant
    Poly sheared = S.substitute({x + a * y, y});
    ActionModel ms;
    ms.S = sheared;
    ms.add_critical_point({Scalar(0), Scalar(0)});
    CHECK(expand(ms, 2).points[0].corrections == ref);
  }
}

TEST_CASE("series evaluation") {
  AsymptoticSeries s = expand(models::quartic(Rational(1, 2)), 1);
  double h = 0.01;
  auto lead = s.leading(h);
  CHECK(std::abs(lead - std::sqrt(2 * M_PI * h) * std::polar(1.0, M_PI / 4)) < 1e-12);
  CHECK(s.leading_scale(h) == doctest::Approx(std::sqrt(2 * M_PI * h)));
  auto full = s.evaluate(h);
  CHECK(std::abs(full - lead * std::complex<double>(1.0, -3.0 / 8.0 * h)) < 1e-12);
}
