#ifndef PHASEKIT_WICK_HPP
#define PHASEKIT_WICK_HPP

#include <vector>

#include "phasekit/linalg.hpp"
#include "phasekit/prefactor.hpp"
#include "phasekit/scalar.hpp"

namespace phasekit {

enum class FresnelNormalization {
  Plain,  // integral of e^{i Q(x,x)}: pi^{n/2} e^{i pi sign Q/4} / |det Q|^{1/2}
  Hbar,   // integral of e^{(i/2hbar) Q_ij y^i y^j}: (2 pi hbar)^{n/2} e^{i pi sign Q/4} / |det Q|^{1/2}
};

/// Closed-form Fresnel integral. Throws DegenerateForm.
Prefactor fresnel_value(const Matrix& Q, FresnelNormalization norm);

/// Sum over perfect matchings of prod K^{i_a i_b}, by recursive pairing of the
/// first unmatched index. Zero for odd length.
Scalar matching_sum(const Matrix& K, const std::vector<int>& indices);
/// Number of perfect matchings visited (for the (2m-1)!! check).
long long matching_count(int length);

/// (hbar/i)^m sum over perfect matchings of prod K, m = length/2.
HbarSeries wick_moment(const Matrix& K, const std::vector<int>& indices);

/// Independent path: iterated differentiation of the closed form
/// exp((hbar/2i) K^{ij} J_i J_j) with respect to J_{i1}, ..., J_{in}, at J = 0.
/// Throws TooLarge above `bound` indices.
HbarSeries moment_oracle(const Matrix& K, const std::vector<int>& indices, int bound = 10);

}  // namespace phasekit

#endif  // PHASEKIT_WICK_HPP
