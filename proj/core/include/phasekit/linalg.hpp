#ifndef PHASEKIT_LINALG_HPP
#define PHASEKIT_LINALG_HPP

#include <string>
#include <vector>

#include "phasekit/scalar.hpp"

namespace phasekit {

/// Dense exact matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Scalar& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Scalar& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  Matrix transpose() const;
  bool is_symmetric() const;
  bool is_zero() const;
  /// Submatrix of the given rows and columns.
  Matrix block(const std::vector<int>& rows, const std::vector<int>& cols) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& c, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  std::string to_string() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Scalar> a_;
};

/// Determinant by exact Gaussian elimination.
Scalar determinant(const Matrix& m);
/// Determinant by Laplace (cofactor) expansion; an independent path used to
/// cross-check elimination and Berezin integration. Exponential cost.
Scalar cofactor_determinant(const Matrix& m);
/// Exact inverse; throws DegenerateForm when singular.
Matrix inverse(const Matrix& m);
/// Rank over the rationals (Gaussian-rational entries allowed).
int rank(const Matrix& m);

struct QuadAnalysis {
  Matrix K;        // Q^{-1}
  Scalar det;      // det Q
  int signature;   // #positive - #negative
  int positive;
  int negative;
};

/// Exact inverse, determinant and signature of a real symmetric form. The
/// signature comes from symmetric (congruence) elimination over Q, so no
/// eigenvalues are ever computed. Throws DegenerateForm when det Q = 0.
QuadAnalysis quad_analyze(const Matrix& Q);

/// Inertia (positive, negative, zero) by congruence; never throws on
/// degenerate input.
struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};
Inertia inertia(const Matrix& Q);

}  // namespace phasekit

#endif  // PHASEKIT_LINALG_HPP
