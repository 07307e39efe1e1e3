#include <random>

#include "doctest.h"
#include "phasekit/bv.hpp"
#include "phasekit/error.hpp"
#include "phasekit/models.hpp"
#include "test_util.hpp"

using namespace phasekit;

namespace {

BVSpace toy_space() {
  SpacePtr sp = make_space({"x", "y", "c+"}, {"x+", "y+", "c"});
  return BVSpace(sp, {{"x", "x+"}, {"y", "y+"}, {"c", "c+"}});
}

Scalar sgn(int p) { return p % 2 ? Scalar(-1) : Scalar(1); }

}  // namespace

TEST_CASE("Darboux pairs are validated") {
  SpacePtr sp = make_space({"x", "y"}, {"x+"});
  CHECK_THROWS_AS(BVSpace(sp, {{"x", "x+"}}), Error);
  CHECK_THROWS_AS(BVSpace(sp, {{"x", "y"}, {"x+", "x+"}}), Error);
}

TEST_CASE("bracket and Laplacian normalization") {
  BVSpace bv = toy_space();
  const SpacePtr& sp = bv.space();
  auto v = [&](const char* n) { return SuperFunction::var(sp, n); };
  CHECK(bv_bracket(bv, v("x"), v("x+")) == SuperFunction::constant(sp, 1));
  CHECK(bv_bracket(bv, v("c"), v("c+")) == SuperFunction::constant(sp, 1));
  CHECK(bv_bracket(bv, v("x"), v("x")).is_zero());
  CHECK(bv_laplacian(bv, v("x") * v("x+")) == SuperFunction::constant(sp, 1));
  CHECK(bv_laplacian(bv, v("c") * v("c+")) == SuperFunction::constant(sp, -1));
  CHECK(bv_laplacian(bv, SuperFunction::constant(sp, 5)).is_zero());
}

TEST_CASE("BV algebra identities on random elements") {
  BVSpace bv = toy_space();
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 30; ++trial) {
    int pf = trial % 2, pg = (trial / 2) % 2, ph = (trial / 4) % 2;
    SuperFunction f = testutil::random_super(rng, bv.space(), 3, pf, 4);
    SuperFunction g = testutil::random_super(rng, bv.space(), 3, pg, 4);
    SuperFunction h = testutil::random_super(rng, bv.space(), 2, ph, 3);
    CHECK(bv_laplacian(bv, bv_laplacian(bv, f)).is_zero());
    Scalar e = sgn((pf + 1) * (pg + 1));
    CHECK(bv_bracket(bv, f, g) == -(e * bv_bracket(bv, g, f)));
    CHECK(bv_bracket(bv, f, bv_bracket(bv, g, h)) ==
          bv_bracket(bv, bv_bracket(bv, f, g), h) + e * bv_bracket(bv, g, bv_bracket(bv, f, h)));
    CHECK(bv_laplacian(bv, f * g) == bv_laplacian(bv, f) * g + sgn(pf) * (f * bv_laplacian(bv, g)) +
                                         sgn(pf) * bv_bracket(bv, f, g));
  }
}

TEST_CASE("exponential identity") {
  BVSpace bv = toy_space();
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    SuperFunction S = testutil::random_super(rng, bv.space(), 3, 0, 4);
    CHECK(exponential_identity_residual(bv, S, 4).is_zero());
  }
}

TEST_CASE("master equations") {
  BVModel hat = bv_from_gauge(models::mexican_hat());
  MasterResiduals r = master_residuals(hat.bv, hat.action);
  CHECK(r.cme_zero());
  CHECK(r.qme_zero());
  CHECK(bv_laplacian(hat.bv, hat.action.at(0)).is_zero());
  BVModel minimal = bv_from_gauge(models::mexican_hat(), BVFieldContent::Minimal);
  CHECK(master_residuals(minimal.bv, minimal.action).cme_zero());

  SpacePtr sp = make_space({"x"}, {"x+"});
  BVSpace plain(sp, {{"x", "x+"}});
  SuperFunction x2 = SuperFunction::var(sp, "x") * SuperFunction::var(sp, "x");
  MasterResiduals q = master_residuals(plain, x2);
  CHECK(q.cme_zero());
  CHECK(q.qme_zero());

  GaugeModel corrupt = models::so3_rotations();
  corrupt.f[0][1][2] = Scalar(2);
  corrupt.f[1][0][2] = Scalar(-2);
  try {
    bv_from_gauge(corrupt, BVFieldContent::Minimal);
    FAIL("corrupted structure constants accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CMEViolation);
  }
}

TEST_CASE("Lagrangian restriction") {
  GaugeModel gm = models::mexican_hat();
  BVModel m = bv_from_gauge(gm);
  FPModel fp = build_fp(gm);
  const SpacePtr& sp = m.bv.space();
  SuperFunction psi = SuperFunction::var(sp, "cb1") * SuperFunction::var(sp, "y");
  SuperFunction r = restrict_to_lagrangian(m.bv, m.action.at(0), LinearLagrangian{psi, {}});
  CHECK(r == embed(fp.S_fp, sp));
  SuperFunction r0 = restrict_to_lagrangian(m.bv, m.action.at(0), LinearLagrangian{SuperFunction(sp), {}});
  CHECK(r0 == SuperFunction::from_poly(sp, gm.action.S.embedded(sp->n_even(), {0, 1})));
  CHECK_THROWS_AS(restrict_to_lagrangian(m.bv, m.action.at(0), LinearLagrangian{SuperFunction::var(sp, "y"), {}}),
                  Error);
}

TEST_CASE("BV integral reproduces the FP expansion") {
  GaugeModel gm = models::deformed_hat();
  BVModel m = bv_from_gauge(gm);
  const SpacePtr& sp = m.bv.space();
  SuperFunction psi = SuperFunction::var(sp, "cb1") * SuperFunction::var(sp, "y");
  BVIntegralOptions o;
  o.measure = fp_measure(gm);
  o.points = {{Scalar(1), Scalar(0), Scalar(0)}};
  AsymptoticSeries bvs = bv_integral(m.bv, m.action, LinearLagrangian{psi, {}}, 2, o);
  FPExpandOptions fo;
  fo.points = {{Scalar(1), Scalar(0)}};
  AsymptoticSeries fps = fp_expand(build_fp(gm), 2, fo);
  REQUIRE(bvs.points.size() == 1);
  REQUIRE(fps.points.size() == 1);
  CHECK(bvs.points[0].corrections == fps.points[0].corrections);
  CHECK(bvs.points[0].prefactor == fps.points[0].prefactor);
}

TEST_CASE("Delta-exact integrands integrate to zero") {
  // odd fields t1, t2 with even antifields; Lagrangian t+ = 0
  SpacePtr sp = make_space({"t1+", "t2+"}, {"t1", "t2"});
  BVSpace bv(sp, {{"t1", "t1+"}, {"t2", "t2+"}});
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    SuperFunction X = testutil::random_super(rng, sp, 4, trial % 2, 6);
    SuperFunction dX = restrict_to_lagrangian(bv, bv_laplacian(bv, X), LinearLagrangian{SuperFunction(sp), {}});
    CHECK(berezin_integral(dX, std::vector<std::string>{"t1", "t2"}).is_zero());
  }
}

TEST_CASE("pushforward") {
  // decoupled quadratic fiber: S_eff = S restricted to the base
  GaugeModel dec = models::decoupled_toy();
  BVModel m = bv_from_gauge(dec);
  PushforwardResult pf = bv_pushforward(m.bv, m.action, {"w", "w+"}, SuperFunction(m.bv.space()), 2, 6);
  for (const auto& [k, f] : pf.effective)
    if (k != 0) CHECK(f.is_zero());
  SuperFunction expected = m.action.at(0) - Scalar(Rational(1, 2)) * SuperFunction::var(m.bv.space(), "w") *
                                                SuperFunction::var(m.bv.space(), "w");
  // w is invariant, so no w+ term appears in S and only w^2/2 drops out
  CHECK(embed(pf.effective.at(0), m.bv.space()) == expected);

  // the cubic coupling tree term
  SpacePtr sp = make_space({"y", "w"}, {"y+", "w+"});
  BVSpace bv(sp, {{"y", "y+"}, {"w", "w+"}});
  auto y = SuperFunction::var(sp, "y"), w = SuperFunction::var(sp, "w");
  SuperFunction S = Scalar(Rational(1, 2)) * (w * w) + Scalar(Rational(1, 2)) * (y * y * w);
  PushforwardResult t = bv_pushforward(bv, {{0, S}}, {"w", "w+"}, SuperFunction(sp), 1, 4);
  SpacePtr ysp = t.y.space();
  auto yy = SuperFunction::var(ysp, "y");
  CHECK(t.effective.at(0) == Scalar(Rational(-1, 8)) * (yy * yy * yy * yy));
  CHECK(master_residuals(t.y, t.effective).qme_zero());

  try {
    bv_pushforward(bv, {{0, S}}, {"w"}, SuperFunction(sp), 1, 4);
    FAIL("incomplete pair accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SplitNotSymplectic);
  }
}
