#ifndef PHASEKIT_TEST_UTIL_HPP
#define PHASEKIT_TEST_UTIL_HPP

#include <random>

#include "phasekit/linalg.hpp"
#include "phasekit/superalgebra.hpp"

namespace testutil {

using namespace phasekit;

inline Rational random_rational(std::mt19937_64& rng, int num = 5, int den = 4) {
  std::uniform_int_distribution<int> n(-num, num), d(1, den);
  return Rational(n(rng), d(rng));
}

inline Scalar random_scalar(std::mt19937_64& rng, bool complex = false) {
  return complex ? Scalar(random_rational(rng), random_rational(rng)) : Scalar(random_rational(rng));
}

inline Matrix random_matrix(std::mt19937_64& rng, int n, bool symmetric) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = symmetric ? i : 0; j < n; ++j) {
      m(i, j) = random_scalar(rng);
      if (symmetric) m(j, i) = m(i, j);
    }
  return m;
}

inline Matrix random_integer_matrix(std::mt19937_64& rng, int n, int range = 4) {
  std::uniform_int_distribution<int> d(-range, range);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Scalar(d(rng));
  return m;
}

/// Random super function with terms of total degree <= max_degree and the
/// requested parity (0 even, 1 odd, -1 any).
inline SuperFunction random_super(std::mt19937_64& rng, const SpacePtr& sp, int max_degree, int parity, int terms = 6) {
  SuperFunction f(sp);
  std::uniform_int_distribution<int> e(0, sp->n_even() ? sp->n_even() - 1 : 0);
  std::uniform_int_distribution<int> o(0, sp->n_odd() ? sp->n_odd() - 1 : 0);
  std::uniform_int_distribution<int> deg(0, max_degree);
  for (int t = 0; t < terms; ++t) {
    int d = deg(rng);
    Monomial m(static_cast<size_t>(sp->n_even()), 0);
    OddMask mask = 0;
    for (int k = 0; k < d; ++k) {
      bool pick_odd = sp->n_even() == 0 || (sp->n_odd() > 0 && (rng() & 1));
      if (pick_odd)
        mask |= OddMask(1) << o(rng);
      else
        ++m[static_cast<size_t>(e(rng))];
    }
    if (parity >= 0 && popcount(mask) % 2 != parity) {
      if (sp->n_odd() == 0) continue;
      mask ^= OddMask(1) << o(rng);
    }
    f.add_term(m, mask, Scalar(random_rational(rng, 3, 3)));
  }
  return f;
}

}  // namespace testutil

#endif  // PHASEKIT_TEST_UTIL_HPP
