#include <random>

#include "doctest.h"
#include "phasekit/error.hpp"
#include "phasekit/superalgebra.hpp"
#include "test_util.hpp"

using namespace phasekit;

TEST_CASE("graded product") {
  SpacePtr sp = make_space({"a"}, {"t1", "t2"});
  auto t1 = SuperFunction::var(sp, "t1"), t2 = SuperFunction::var(sp, "t2");
  CHECK(t1 * t2 == -(t2 * t1));
  CHECK((t1 * t1).is_zero());
  Scalar a(2), b(3), c(5), d(7);
  auto f = SuperFunction::constant(sp, a) + b * t1;
  auto g = SuperFunction::constant(sp, c) + d * t1;
  CHECK(f * g == SuperFunction::constant(sp, a * c) + (a * d + b * c) * t1);
  SpacePtr other = make_space({"a"}, {"t1"});
  CHECK_THROWS_AS(super_mul(t1, SuperFunction::var(other, "t1")), Error);
}

TEST_CASE("odd derivatives") {
  SpacePtr sp = make_space({}, {"t1", "t2"});
  auto t1 = SuperFunction::var(sp, "t1"), t2 = SuperFunction::var(sp, "t2");
  CHECK(odd_derivative(t1 * t2, "t1", Side::Left) == t2);
  CHECK(odd_derivative(t1 * t2, "t2", Side::Left) == -t1);
  CHECK(odd_derivative(t1 * t2, "t2", Side::Right) == t1);
  CHECK(odd_derivative(t1 * t2, "t1", Side::Right) == -t2);
  CHECK_THROWS_AS(odd_derivative(t1, "t3", Side::Left), Error);
}

TEST_CASE("graded Leibniz and nilpotency on random elements") {
  std::mt19937_64 rng(17);
  SpacePtr sp = make_space({"x", "y"}, {"t1", "t2", "t3"});
  for (int trial = 0; trial < 40; ++trial) {
    int pf = trial % 2;
    auto f = testutil::random_super(rng, sp, 4, pf);
    auto g = testutil::random_super(rng, sp, 4, -1);
    for (int a = 0; a < 3; ++a) {
      Scalar sign = pf ? Scalar(-1) : Scalar(1);
      CHECK(odd_derivative(f * g, a, Side::Left) ==
            odd_derivative(f, a, Side::Left) * g + sign * (f * odd_derivative(g, a, Side::Left)));
      CHECK(odd_derivative(odd_derivative(g, a, Side::Left), a, Side::Left).is_zero());
      CHECK(berezin_integral(odd_derivative(g, a, Side::Left), std::vector<int>{a}).is_zero());
      // d_r g = (-1)^{|g|} d_l g for odd generators and homogeneous g
      CHECK(odd_derivative(f, a, Side::Right) == (pf ? Scalar(1) : Scalar(-1)) * odd_derivative(f, a, Side::Left));
    }
    for (int i = 0; i < 2; ++i)
      CHECK(even_derivative(f * g, i) == even_derivative(f, i) * g + f * even_derivative(g, i));
  }
}

TEST_CASE("berezin integrals") {
  SpacePtr sp = make_space({"a"}, {"t1", "t2"});
  auto t1 = SuperFunction::var(sp, "t1"), t2 = SuperFunction::var(sp, "t2");
  auto a = SuperFunction::var(sp, "a");
  CHECK(berezin_integral(a + Scalar(4) * t1, std::vector<std::string>{"t1"}) == SuperFunction::constant(sp, 4));
  CHECK(berezin_integral(SuperFunction::constant(sp, 3) + Scalar(2) * t1, std::vector<std::string>{"t1", "t2"}).is_zero());
  CHECK(berezin_integral(t1 * t2, std::vector<std::string>{"t1", "t2"}) == SuperFunction::constant(sp, 1));
  CHECK(berezin_integral(a * t1 * t2, std::vector<std::string>{"t2", "t1"}) == -a);
}

TEST_CASE("odd rescaling inverts the Berezinian") {
  std::mt19937_64 rng(8);
  SpacePtr sp = make_space({}, {"t"});
  for (int trial = 0; trial < 10; ++trial) {
    Rational l = testutil::random_rational(rng);
    if (l == 0) continue;
    // theta' = l theta, D theta' = (1/l) D theta
    auto tp = Scalar(l) * SuperFunction::var(sp, "t");
    auto val = berezin_integral(tp, std::vector<std::string>{"t"}) * Scalar(Rational(1) / l);
    CHECK(val == SuperFunction::constant(sp, 1));
  }
}

TEST_CASE("berezin determinant") {
  CHECK(berezin_det(Matrix::from_rows({{Scalar(7)}})) == Scalar(7));
  CHECK(berezin_det(Matrix::identity(2)) == Scalar(1));
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + trial % 5;
    Matrix B = testutil::random_integer_matrix(rng, n);
    CHECK(berezin_det(B) == cofactor_determinant(B));
  }
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + trial % 4;
    Matrix A = testutil::random_integer_matrix(rng, n), B = testutil::random_integer_matrix(rng, n);
    CHECK(berezin_det(A * B) == berezin_det(A) * berezin_det(B));
  }
}

TEST_CASE("substitution and embedding") {
  SpacePtr sp = make_space({"x"}, {"t"});
  SpacePtr big = make_space({"x", "y"}, {"s", "t"});
  auto f = SuperFunction::var(sp, "x") * SuperFunction::var(sp, "t");
  auto e = embed(f, big);
  CHECK(e == SuperFunction::var(big, "x") * SuperFunction::var(big, "t"));
  auto img = substitute(f, {SuperFunction::var(big, "y")}, {SuperFunction::var(big, "s")});
  CHECK(img == SuperFunction::var(big, "y") * SuperFunction::var(big, "s"));
  auto ex = super_exp(SuperFunction::var(sp, "t"), 3);
  CHECK(ex == SuperFunction::constant(sp, 1) + SuperFunction::var(sp, "t"));
}
