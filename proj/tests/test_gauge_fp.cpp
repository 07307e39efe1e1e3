#include <random>

#include "doctest.h"
#include "phasekit/error.hpp"
#include "phasekit/gauge_fp.hpp"
#include "phasekit/models.hpp"
#include "phasekit/wick.hpp"
#include "test_util.hpp"

using namespace phasekit;

namespace {

// Translations along x on R^2, S = y^2/2 + y^4/4, phi = x.
GaugeModel translation_model(bool quartic) {
  Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  GaugeModel gm;
  gm.action.S = Scalar(Rational(1, 2)) * y * y;
  if (quartic) gm.action.S += Scalar(Rational(1, 4)) * y.pow(4);
  gm.action.names = {"x", "y"};
  gm.action.gauge = true;
  gm.lie_dim = 1;
  gm.f = {{{Scalar(0)}}};
  gm.v = {{Poly::constant(2, 1), Poly(2)}};
  gm.phi = {x};
  return gm;
}

}  // namespace

TEST_CASE("FP operator") {
  GaugeModel hat = models::mexican_hat();
  CHECK(fp_operator(hat, {Scalar(2), Scalar(0)}) == Matrix::from_rows({{Scalar(2)}}));
  CHECK(fp_operator(hat, {Scalar(0), Scalar(0)}) == Matrix::from_rows({{Scalar(0)}}));
  GaugeModel tr = translation_model(false);
  CHECK(fp_operator(tr, {Scalar(5), Scalar(-3)}) == Matrix::from_rows({{Scalar(1)}}));
}

TEST_CASE("gauge model validation") {
  CHECK(check_gauge_model(models::mexican_hat()).ok());
  CHECK(check_gauge_model(models::so3_rotations()).ok());
  GaugeModel bad = models::mexican_hat();
  bad.action.S += Poly::variable(2, 0);
  CHECK_FALSE(check_gauge_model(bad).invariant);
  CHECK_THROWS_AS(build_fp(bad), Error);
  GaugeModel badf = models::so3_rotations();
  badf.f[0][1][2] = Scalar(2);
  GaugeCheck c = check_gauge_model(badf);
  CHECK_FALSE(c.ok());
  CHECK_FALSE(c.witnesses.empty());
  CHECK_THROWS_AS(validate_gauge_model(badf), Error);
}

TEST_CASE("FP action of the Mexican hat") {
  FPModel fp = build_fp(models::mexican_hat());
  const SpacePtr& sp = fp.space;
  auto var = [&](const char* n) { return SuperFunction::var(sp, n); };
  SuperFunction S = SuperFunction::from_poly(sp, models::mexican_hat().action.S.embedded(3, {0, 1}));
  CHECK(fp.S_fp == S + var("lambda1") * var("y") + var("cb1") * var("x") * var("c1"));
}

TEST_CASE("FP critical points") {
  FPModel fp = build_fp(models::mexican_hat());
  FPCriticalSearch s = fp_critical_points(fp);
  REQUIRE(s.points.size() == 2);
  bool origin_reported = false;
  for (const auto& d : s.diagnostics)
    if (d.message.find("DegenerateFP") != std::string::npos) origin_reported = true;
  CHECK(origin_reported);
  FPCritical c = fp_critical_data(fp, {Scalar(1), Scalar(0)});
  CHECK(c.hessian(0, 0) == Scalar(2));
  CHECK(c.hessian(1, 2) == Scalar(1));
  CHECK(c.fp == Matrix::from_rows({{Scalar(1)}}));
  CHECK(c.hessian * c.hessian_inv == Matrix::identity(3));
  CHECK_THROWS_AS(fp_critical_data(fp, {Scalar(0), Scalar(0)}), Error);

  FPModel tr = build_fp(translation_model(true));
  FPCriticalSearch t = fp_critical_points(tr);
  REQUIRE(t.points.size() == 1);
  CHECK(t.points[0].x == std::vector<Scalar>{Scalar(0), Scalar(0)});
}

TEST_CASE("abelian linear gauge reduces to the slice Fresnel integral") {
  GaugeModel gm = translation_model(false);
  AsymptoticSeries s = fp_expand(build_fp(gm), 2);
  REQUIRE(s.points.size() == 1);
  CHECK(s.points[0].corrections == HbarSeries(Scalar(1)));
  Prefactor slice = fresnel_value(Matrix::from_rows({{Scalar(1)}}), FresnelNormalization::Hbar);
  for (double h : {0.3, 0.01}) CHECK(std::abs(s.points[0].prefactor.numeric(h) - slice.numeric(h)) < 1e-12);

  // with an interaction on the slice the corrections are those of the slice
  AsymptoticSeries q = fp_expand(build_fp(translation_model(true)), 2);
  CHECK(q.points[0].corrections == expand(models::quartic(Rational(1)), 2).points[0].corrections);
}

TEST_CASE("determinant modes agree on the half slice") {
  FPModel fp = build_fp(models::deformed_hat());
  AsymptoticSeries abs_mode = fp_expand(fp, 2);
  FPExpandOptions o;
  o.mode = DetMode::Signed;
  o.half_space_normal = {Scalar(1), Scalar(0)};
  AsymptoticSeries strict = fp_expand(fp, 2, o);
  REQUIRE(abs_mode.points.size() == 2);
  REQUIRE(strict.points.size() == 1);
  Prefactor sum = abs_mode.points[0].prefactor;
  sum.constant += abs_mode.points[1].prefactor.constant;
  CHECK(abs_mode.points[0].prefactor.same_shape(abs_mode.points[1].prefactor));
  CHECK(sum == strict.points[0].prefactor);
  CHECK(abs_mode.points[0].corrections == strict.points[0].corrections);
  CHECK(abs_mode.points[1].corrections == strict.points[0].corrections);
  // the signed determinants cancel over the full slice
  FPExpandOptions all;
  all.mode = DetMode::Signed;
  AsymptoticSeries cancel = fp_expand(fp, 1, all);
  Scalar total(0);
  for (const auto& p : cancel.points) total += p.prefactor.constant;
  CHECK(total.is_zero());
}

TEST_CASE("BRST operator") {
  FPModel fp = build_fp(models::mexican_hat());
  const SpacePtr& sp = fp.space;
  auto var = [&](const char* n) { return SuperFunction::var(sp, n); };
  CHECK(brst_apply(fp, var("x")) == -(var("c1") * var("y")));
  CHECK(brst_apply(fp, var("y")) == var("c1") * var("x"));
  CHECK(brst_apply(fp, var("c1")).is_zero());
  CHECK(brst_apply(fp, var("cb1")) == var("lambda1"));
  SuperFunction S = SuperFunction::from_poly(sp, models::mexican_hat().action.S.embedded(3, {0, 1}));
  CHECK(brst_apply(fp, S).is_zero());

  std::mt19937_64 rng(12);
  FPModel so3 = build_fp(models::so3_rotations());
  for (int trial = 0; trial < 10; ++trial) {
    SuperFunction f = testutil::random_super(rng, so3.space, 3, trial % 2, 4);
    CHECK(brst_apply(so3, brst_apply(so3, f)).is_zero());
  }
}

TEST_CASE("BRST splits into two subcomplexes") {
  std::mt19937_64 rng(5);
  FPModel fp = build_fp(models::so3_rotations());
  const SuperSpace& sp = *fp.space;
  for (int trial = 0; trial < 10; ++trial) {
    SuperFunction f = testutil::random_super(rng, fp.space, 3, -1, 5);
    // project onto functions of (x, c)
    SuperFunction xc(fp.space), lc(fp.space);
    OddMask cmask = 0, cbmask = 0;
    for (int a : fp.c_index) cmask |= OddMask(1) << a;
    for (int a : fp.cbar_index) cbmask |= OddMask(1) << a;
    for (const auto& [mask, p] : f.terms()) {
      for (const auto& [m, c] : p.terms()) {
        bool has_lambda = false, has_x = false;
        for (int i : fp.lambda_index) has_lambda |= m[size_t(i)] > 0;
        for (int i : fp.x_index) has_x |= m[size_t(i)] > 0;
        if (!has_lambda && (mask & cbmask) == 0) xc.add_term(m, mask, c);
        if (!has_x && (mask & cmask) == 0) lc.add_term(m, mask, c);
      }
    }
    SuperFunction qxc = brst_apply(fp, xc);
    for (const auto& [mask, p] : qxc.terms()) {
      CHECK((mask & cbmask) == 0);
      for (const auto& [m, c] : p.terms())
        for (int i : fp.lambda_index) CHECK(m[size_t(i)] == 0);
    }
    SuperFunction expected(fp.space);
    for (size_t a = 0; a < fp.cbar_index.size(); ++a)
      expected += odd_derivative(lc, fp.cbar_index[a], Side::Right) *
                  SuperFunction::even_var(fp.space, fp.lambda_index[a]);
    CHECK(brst_apply(fp, lc) == expected);
  }
  (void)sp;
}

TEST_CASE("gauge fermion identity") {
  CHECK(gauge_fermion_check(build_fp(models::mexican_hat())).ok);
  CHECK(gauge_fermion_check(build_fp(translation_model(true))).ok);
  CHECK(gauge_fermion_check(build_fp(models::so3_rotations())).ok);
  FPModel broken = build_fp(models::mexican_hat());
  auto var = [&](const char* n) { return SuperFunction::var(broken.space, n); };
  broken.S_fp -= Scalar(2) * (var("cb1") * var("x") * var("c1"));  // flips the ghost sign
  GaugeFermionCheck r = gauge_fermion_check(broken);
  CHECK_FALSE(r.ok);
  CHECK(r.report.find("cb1") != std::string::npos);
}
