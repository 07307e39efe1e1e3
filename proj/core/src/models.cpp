#include "phasekit/models.hpp"

namespace phasekit::models {

namespace {

Poly var(int dim, int i) { return Poly::variable(dim, i); }

std::vector<std::vector<std::vector<Scalar>>> zero_f(int k) {
  return std::vector<std::vector<std::vector<Scalar>>>(
      size_t(k), std::vector<std::vector<Scalar>>(size_t(k), std::vector<Scalar>(size_t(k))));
}

int levi_civita(int a, int b, int c) { return (a - b) * (b - c) * (c - a) / 2; }

GaugeModel rotation_gauge(Poly S, std::vector<std::string> names) {
  const int n = S.dim();
  GaugeModel gm;
  gm.action.S = std::move(S);
  gm.action.names = std::move(names);
  gm.action.gauge = true;
  gm.lie_dim = 1;
  gm.f = zero_f(1);
  std::vector<Poly> v(static_cast<size_t>(n), Poly(n));
  v[0] = -var(n, 1);
  v[1] = var(n, 0);
  gm.v = {v};
  gm.phi = {var(n, 1)};
  gm.vol_rational = 2;
  gm.vol_pi_power = 1;
  gm.N = 2;
  return gm;
}

}  // namespace

ActionModel quartic(const Rational& lambda) {
  ActionModel m;
  m.S = Poly(1);
  m.S.add_term({2}, Scalar(Rational(1, 2)));
  m.S.add_term({4}, Scalar(lambda / 4));
  m.names = {"x"};
  m.add_critical_point({Scalar(0)});
  return m;
}

Poly hat_profile() {
  Poly F(1);
  F.add_term({2}, Scalar(Rational(1, 4)));
  F.add_term({3}, Scalar(Rational(1, 6)));
  F.add_term({4}, Scalar(Rational(1, 8)));
  return F;
}

GaugeModel deformed_hat() {
  Poly u = var(2, 0) * var(2, 0) + var(2, 1) * var(2, 1) - Poly::constant(2, 1);
  return rotation_gauge(hat_profile().substitute({u}), {"x", "y"});
}

GaugeModel mexican_hat() {
  Poly u = var(2, 0) * var(2, 0) + var(2, 1) * var(2, 1) - Poly::constant(2, 1);
  return rotation_gauge(Scalar(Rational(1, 4)) * u * u, {"x", "y"});
}

GaugeModel so3_rotations() {
  GaugeModel gm;
  Poly r2(3);
  for (int i = 0; i < 3; ++i) r2 += var(3, i) * var(3, i);
  gm.action.S = r2 * r2;
  gm.action.names = {"x1", "x2", "x3"};
  gm.action.gauge = true;
  gm.lie_dim = 3;
  gm.f = zero_f(3);
  gm.v.assign(3, std::vector<Poly>(3, Poly(3)));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        gm.f[size_t(a)][size_t(b)][size_t(c)] = Scalar(levi_civita(a, b, c));
        // (v_a)^b = eps_{a b c} x_c
        if (levi_civita(a, b, c)) gm.v[size_t(a)][size_t(b)] += Scalar(levi_civita(a, b, c)) * var(3, c);
      }
  gm.vol_rational = 8;
  gm.vol_pi_power = 2;
  return gm;
}

GaugeModel nonunimodular_trivial() {
  GaugeModel gm;
  gm.action.S = Scalar(Rational(1, 2)) * var(1, 0) * var(1, 0);
  gm.action.names = {"x"};
  gm.lie_dim = 2;
  gm.f = zero_f(2);
  gm.f[0][1][1] = 1;
  gm.f[1][0][1] = -1;
  gm.v.assign(2, std::vector<Poly>(1, Poly(1)));
  return gm;
}

GaugeModel pushforward_toy() {
  Poly x = var(3, 0), y = var(3, 1), w = var(3, 2);
  Poly S = Scalar(Rational(1, 2)) * w * w + Scalar(Rational(1, 2)) * w * (x * x + y * y) +
           Scalar(Rational(1, 6)) * w.pow(3);
  return rotation_gauge(S, {"x", "y", "w"});
}

GaugeModel decoupled_toy() {
  Poly x = var(3, 0), y = var(3, 1), w = var(3, 2);
  Poly r2 = x * x + y * y;
  Poly S = Scalar(Rational(1, 2)) * w * w + Scalar(Rational(1, 4)) * r2 * r2;
  return rotation_gauge(S, {"x", "y", "w"});
}

}  // namespace phasekit::models
