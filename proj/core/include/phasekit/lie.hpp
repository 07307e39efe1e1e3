#ifndef PHASEKIT_LIE_HPP
#define PHASEKIT_LIE_HPP

#include <array>
#include <string>
#include <vector>

#include "phasekit/graph.hpp"
#include "phasekit/scalar.hpp"

namespace phasekit {

/// Structure constants f_abc = <T_a, [T_b, T_c]> in an orthonormal basis,
/// stored densely; the pairing is the identity.
struct LieData {
  int dim = 0;
  std::vector<Scalar> f;  // dim^3 entries

  LieData() = default;
  explicit LieData(int d) : dim(d), f(size_t(d) * d * d) {}
  Scalar& at(int a, int b, int c) { return f[(size_t(a) * dim + b) * dim + c]; }
  const Scalar& at(int a, int b, int c) const { return f[(size_t(a) * dim + b) * dim + c]; }

  static LieData levi_civita();        // su(2)-type, f_abc = eps_abc
  static LieData abelian(int d);
  /// [e1, e2] = e2 lowered with the identity pairing: f_{122} = 1, f_{212} = -1.
  static LieData two_dim_nonunimodular();
};

struct LieReport {
  bool antisymmetric = true;
  bool jacobi = true;
  bool unimodular = true;
  std::vector<std::string> witnesses;
  bool ok() const { return antisymmetric && jacobi && unimodular; }
};

/// Total antisymmetry, Jacobi (sum_e f_abe f_ecd + cyclic(a,b,c) = 0) and
/// unimodularity (sum_i f_jii = 0, i.e. tr ad_{e_j} = 0), with witnesses.
LieReport validate(const LieData& ld);

struct IHXDefect {
  Rational max_abs{0};
  std::array<int, 4> witness{-1, -1, -1, -1};
  bool zero() const { return sgn(max_abs) == 0; }
};

/// IHX tensor v_abcd = sum_e f_abe f_ecd + f_bce f_ead + f_cae f_ebd (the
/// I, H and X trees glued along the internal edge e, with orientations
/// induced from the cyclic order), over all index tuples.
IHXDefect ihx_defect(const LieData& ld);

/// Sum over colorings of the half-edges of prod_v f_{l(h1) l(h2) l(h3)} with
/// delta on edges. Throws NotTrivalent or HasLeaves.
Scalar graph_color_weight(const Graph& g, const LieData& ld);

}  // namespace phasekit

#endif  // PHASEKIT_LIE_HPP
