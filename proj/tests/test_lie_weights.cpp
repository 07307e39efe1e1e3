#include <numeric>
#include <random>

#include "doctest.h"
#include "phasekit/error.hpp"
#include "phasekit/lie.hpp"
#include "test_util.hpp"

using namespace phasekit;

namespace {

bool mentions(const LieReport& r, const std::string& needle) {
  for (const auto& w : r.witnesses)
    if (w.find(needle) != std::string::npos) return true;
  return false;
}

ErrorCode code_of(const Graph& g, const LieData& ld) {
  try {
    graph_color_weight(g, ld);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("validation of standard structure constants") {
  LieReport eps = validate(LieData::levi_civita());
  CHECK(eps.ok());
  CHECK(eps.witnesses.empty());
  CHECK(validate(LieData::abelian(4)).ok());

  LieReport nu = validate(LieData::two_dim_nonunimodular());
  CHECK_FALSE(nu.unimodular);
  CHECK(mentions(nu, "tr ad_e1 = 1"));

  LieData bad = LieData::levi_civita();
  bad.at(0, 1, 2) = Scalar(2);
  LieReport r = validate(bad);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.witnesses.empty());
}

TEST_CASE("IHX defect") {
  CHECK(ihx_defect(LieData::levi_civita()).zero());
  CHECK(ihx_defect(LieData::abelian(3)).zero());
  LieData bad = LieData::levi_civita();
  bad.at(0, 1, 2) = Scalar(2);
  IHXDefect d = ihx_defect(bad);
  CHECK_FALSE(d.zero());
  CHECK(d.witness[0] >= 0);
}

TEST_CASE("IHX vanishes exactly when Jacobi holds") {
  std::mt19937_64 rng(31);
  int jacobi_pass = 0, jacobi_fail = 0;
  for (int trial = 0; trial < 40; ++trial) {
    LieData ld = trial % 2 ? LieData::levi_civita() : LieData::abelian(3);
    // perturb a totally antisymmetric tensor; half of the fixtures are scaled
    // copies of eps (still Jacobi) and half random antisymmetric tensors
    if (trial % 4 < 2) {
      Scalar s(testutil::random_rational(rng));
      for (auto& v : ld.f) v *= s;
    } else {
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
          for (int c = b + 1; c < 3; ++c) {
            Scalar v(testutil::random_rational(rng));
            ld.at(a, b, c) += v;
            ld.at(b, c, a) += v;
            ld.at(c, a, b) += v;
            ld.at(b, a, c) -= v;
            ld.at(a, c, b) -= v;
            ld.at(c, b, a) -= v;
          }
    }
    LieReport r = validate(ld);
    CHECK(r.jacobi == ihx_defect(ld).zero());
    (r.jacobi ? jacobi_pass : jacobi_fail)++;
  }
  // in dimensions 3 and 4 every totally antisymmetric tensor satisfies Jacobi
  // (it is dual to a vector); use dimension 5
  std::mt19937_64 rng4(32);
  for (int trial = 0; trial < 20; ++trial) {
    LieData ld(5);
    for (int a = 0; a < 5; ++a)
      for (int b = a + 1; b < 5; ++b)
        for (int c = b + 1; c < 5; ++c) {
          Scalar v(trial % 2 ? testutil::random_rational(rng4) : Rational(0));
          std::array<int, 3> p{a, b, c};
          std::array<int, 3> idx{0, 1, 2};
          do {
            int inv = (idx[0] > idx[1]) + (idx[0] > idx[2]) + (idx[1] > idx[2]);
            ld.at(p[size_t(idx[0])], p[size_t(idx[1])], p[size_t(idx[2])]) = inv % 2 ? -v : v;
          } while (std::next_permutation(idx.begin(), idx.end()));
        }
    if (trial % 2 == 0) {
      // embed eps on the first three generators: Jacobi holds
      LieData e = LieData::levi_civita();
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int c = 0; c < 3; ++c) ld.at(a, b, c) = e.at(a, b, c);
    }
    LieReport r = validate(ld);
    CHECK(r.jacobi == ihx_defect(ld).zero());
    (r.jacobi ? jacobi_pass : jacobi_fail)++;
  }
  CHECK(jacobi_pass > 0);
  CHECK(jacobi_fail > 0);
}

TEST_CASE("graph color weights") {
  CHECK(graph_color_weight(theta_graph(), LieData::levi_civita()) == Scalar(6));
  CHECK(graph_color_weight(theta_graph(), LieData::abelian(3)).is_zero());
  CHECK(graph_color_weight(dumbbell_graph(), LieData::levi_civita()).is_zero());

  Graph t = theta_graph();
  std::vector<int> perm(static_cast<size_t>(t.half_edges));
  std::iota(perm.begin(), perm.end(), 0);
  std::rotate(perm.begin(), perm.begin() + 2, perm.end());
  CHECK(graph_color_weight(t.relabeled(perm), LieData::levi_civita()) == Scalar(6));

  CHECK(code_of(figure_eight_graph(), LieData::levi_civita()) == ErrorCode::NotTrivalent);
  CHECK(code_of(gamma2_graph(), LieData::levi_civita()) == ErrorCode::HasLeaves);
}

TEST_CASE("tadpole graphs vanish for unimodular data") {
  EnumerateOptions opt;
  opt.max_excess = 2;
  opt.degrees = {3};
  opt.allow_tadpoles = true;
  auto classes = enumerate_graphs(opt);
  int tadpoles = 0;
  for (const auto& c : classes) {
    const Graph& g = c.representative;
    if (!g.has_self_loop()) continue;
    ++tadpoles;
    CHECK(graph_color_weight(g, LieData::levi_civita()).is_zero());
    CHECK(graph_color_weight(g, LieData::abelian(2)).is_zero());
  }
  CHECK(tadpoles >= 1);
}
