#include "phasekit/lie.hpp"

#include "phasekit/error.hpp"
#include "phasekit/stationary_phase.hpp"

namespace phasekit {

LieData LieData::levi_civita() {
  LieData ld(3);
  const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
  for (int p = 0; p < 6; ++p) ld.at(perms[p][0], perms[p][1], perms[p][2]) = Scalar(p < 3 ? 1 : -1);
  return ld;
}

LieData LieData::abelian(int d) { return LieData(d); }

LieData LieData::two_dim_nonunimodular() {
  LieData ld(2);
  ld.at(0, 1, 1) = Scalar(1);
  ld.at(1, 0, 1) = Scalar(-1);
  return ld;
}

namespace {

std::string idx(std::initializer_list<int> l) {
  std::string s;
  for (int i : l) s += std::to_string(i + 1);
  return s;
}

}  // namespace

LieReport validate(const LieData& ld) {
  LieReport r;
  int d = ld.dim;
  for (int a = 0; a < d && r.antisymmetric; ++a)
    for (int b = 0; b < d && r.antisymmetric; ++b)
      for (int c = 0; c < d && r.antisymmetric; ++c) {
        const Scalar& v = ld.at(a, b, c);
        if (ld.at(b, a, c) != -v || ld.at(a, c, b) != -v) {
          r.antisymmetric = false;
          r.witnesses.push_back("f_" + idx({a, b, c}) + " = " + v.to_string() + ", f_" + idx({b, a, c}) + " = " +
                                ld.at(b, a, c).to_string() + ", f_" + idx({a, c, b}) + " = " +
                                ld.at(a, c, b).to_string());
        }
      }
  for (int a = 0; a < d && r.jacobi; ++a)
    for (int b = 0; b < d && r.jacobi; ++b)
      for (int c = 0; c < d && r.jacobi; ++c)
        for (int e2 = 0; e2 < d && r.jacobi; ++e2) {
          Scalar s(0);
          for (int e = 0; e < d; ++e)
            s += ld.at(a, b, e) * ld.at(e, c, e2) + ld.at(b, c, e) * ld.at(e, a, e2) +
                 ld.at(c, a, e) * ld.at(e, b, e2);
          if (!s.is_zero()) {
            r.jacobi = false;
            r.witnesses.push_back("Jacobi defect at (a,b,c;d) = (" + idx({a, b, c}) + ";" + idx({e2}) +
                                  "): " + s.to_string());
          }
        }
  for (int j = 0; j < d && r.unimodular; ++j) {
    Scalar tr(0);
    for (int i = 0; i < d; ++i) tr += ld.at(j, i, i);
    if (!tr.is_zero()) {
      r.unimodular = false;
      r.witnesses.push_back("tr ad_e" + std::to_string(j + 1) + " = " + tr.to_string());
    }
  }
  return r;
}

IHXDefect ihx_defect(const LieData& ld) {
  IHXDefect out;
  int d = ld.dim;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int dd = 0; dd < d; ++dd) {
          Scalar v(0);
          for (int e = 0; e < d; ++e)
            v += ld.at(a, b, e) * ld.at(e, c, dd) + ld.at(b, c, e) * ld.at(e, a, dd) +
                 ld.at(c, a, e) * ld.at(e, b, dd);
          Rational m = abs(v.re()) + abs(v.im());
          if (m > out.max_abs) {
            out.max_abs = m;
            out.witness = {a, b, c, dd};
          }
        }
  return out;
}

Scalar graph_color_weight(const Graph& g, const LieData& ld) {
  if (g.num_leaves() > 0) throw Error(ErrorCode::HasLeaves, "color weights need graphs without leaves");
  for (const auto& v : g.vertices)
    if (v.size() != 3) throw Error(ErrorCode::NotTrivalent, "color weights need trivalent vertices");
  FeynmanRules r;
  r.range[size_t(HalfEdgeType::Field)] = ld.dim;
  r.propagator = [](HalfEdgeType, int i, HalfEdgeType, int j) { return Scalar(i == j ? 1 : 0); };
  r.vertex = [&](const std::vector<HalfEdgeType>&, const std::vector<int>& l) { return ld.at(l[0], l[1], l[2]); };
  Graph untyped = g;
  untyped.types.clear();
  return evaluate_weight(untyped, r);
}

}  // namespace phasekit
