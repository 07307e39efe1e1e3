#include "phasekit/linalg.hpp"

#include <sstream>
#include <utility>

#include "phasekit/error.hpp"

namespace phasekit {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows.front().size());
  Matrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      throw Error(ErrorCode::InvalidArgument, "ragged matrix rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_symmetric() const {
  if (!square()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

Matrix Matrix::block(const std::vector<int>& rows, const std::vector<int>& cols) const {
  Matrix b(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) b(int(i), int(j)) = (*this)(rows[i], cols[j]);
  return b;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch");
  Matrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch");
  Matrix c = a;
  for (size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch");
  Matrix c = a;
  for (size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
  return c;
}

Matrix operator*(const Scalar& s, const Matrix& a) {
  Matrix c = a;
  for (auto& x : c.a_) x *= s;
  return c;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    if (i) os << ", ";
    os << "[";
    for (int j = 0; j < cols_; ++j) {
      if (j) os << ", ";
      os << (*this)(i, j).to_string();
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

Scalar determinant(const Matrix& m) {
  if (!m.square()) throw Error(ErrorCode::InvalidArgument, "determinant of non-square matrix");
  Matrix a = m;
  int n = a.rows();
  Scalar det(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!a(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return Scalar(0);
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    Scalar inv = Scalar(1) / a(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (a(r, col).is_zero()) continue;
      Scalar f = a(r, col) * inv;
      for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

namespace {

Scalar cofactor_rec(const Matrix& m, std::vector<int>& cols, int row) {
  int n = m.rows();
  if (row == n) return Scalar(1);
  Scalar acc(0);
  int sign = 1;
  for (size_t k = 0; k < cols.size(); ++k) {
    int c = cols[k];
    if (!m(row, c).is_zero()) {
      std::vector<int> rest = cols;
      rest.erase(rest.begin() + long(k));
      Scalar minor = cofactor_rec(m, rest, row + 1);
      acc += Scalar(sign) * m(row, c) * minor;
    }
    sign = -sign;
  }
  return acc;
}

}  // namespace

Scalar cofactor_determinant(const Matrix& m) {
  if (!m.square()) throw Error(ErrorCode::InvalidArgument, "determinant of non-square matrix");
  std::vector<int> cols;
  for (int j = 0; j < m.cols(); ++j) cols.push_back(j);
  return cofactor_rec(m, cols, 0);
}

Matrix inverse(const Matrix& m) {
  if (!m.square()) throw Error(ErrorCode::InvalidArgument, "inverse of non-square matrix");
  int n = m.rows();
  Matrix a = m;
  Matrix inv = Matrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!a(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw Error(ErrorCode::DegenerateForm, "singular matrix " + m.to_string());
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    Scalar p = Scalar(1) / a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) *= p;
      inv(col, j) *= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      Scalar f = a(r, col);
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

int rank(const Matrix& m) {
  Matrix a = m;
  int r = 0;
  for (int col = 0; col < a.cols() && r < a.rows(); ++col) {
    int piv = -1;
    for (int i = r; i < a.rows(); ++i)
      if (!a(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
    Scalar inv = Scalar(1) / a(r, col);
    for (int i = r + 1; i < a.rows(); ++i) {
      if (a(i, col).is_zero()) continue;
      Scalar f = a(i, col) * inv;
      for (int j = col; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

Inertia inertia(const Matrix& Q) {
  if (!Q.is_symmetric()) throw Error(ErrorCode::InvalidArgument, "form is not symmetric");
  for (int i = 0; i < Q.rows(); ++i)
    for (int j = 0; j < Q.cols(); ++j)
      if (!Q(i, j).is_real()) throw Error(ErrorCode::InvalidArgument, "form is not real");
  // Symmetric elimination: repeatedly pick a nonzero diagonal pivot; if the
  // remaining block has zero diagonal but a nonzero entry a_ij, replace basis
  // vector e_i by e_i + e_j, which makes the new diagonal entry 2 a_ij.
  Matrix a = Q;
  int n = a.rows();
  std::vector<bool> done(size_t(n), false);
  Inertia out;
  for (int step = 0; step < n; ++step) {
    int piv = -1;
    for (int i = 0; i < n && piv < 0; ++i)
      if (!done[size_t(i)] && !a(i, i).is_zero()) piv = i;
    if (piv < 0) {
      int pi = -1;
      int pj = -1;
      for (int i = 0; i < n && pi < 0; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j && !done[size_t(i)] && !done[size_t(j)] && !a(i, j).is_zero()) {
            pi = i;
            pj = j;
            break;
          }
      if (pi < 0) break;  // remaining block is identically zero
      // congruence by the elementary matrix adding row/col pj to pi
      for (int k = 0; k < n; ++k) a(pi, k) += a(pj, k);
      for (int k = 0; k < n; ++k) a(k, pi) += a(k, pj);
      piv = pi;
    }
    done[size_t(piv)] = true;
    Scalar d = a(piv, piv);
    if (sgn(d.re()) > 0) ++out.positive;
    else ++out.negative;
    Scalar inv = Scalar(1) / d;
    for (int i = 0; i < n; ++i) {
      if (done[size_t(i)] || a(i, piv).is_zero()) continue;
      Scalar f = a(i, piv) * inv;
      for (int j = 0; j < n; ++j) a(i, j) -= f * a(piv, j);
      for (int j = 0; j < n; ++j) a(j, i) -= f * a(j, piv);
    }
  }
  out.zero = n - out.positive - out.negative;
  return out;
}

QuadAnalysis quad_analyze(const Matrix& Q) {
  if (!Q.is_symmetric()) throw Error(ErrorCode::InvalidArgument, "form is not symmetric");
  Scalar det = determinant(Q);
  if (det.is_zero()) throw Error(ErrorCode::DegenerateForm, "det Q = 0 for Q = " + Q.to_string());
  Inertia in = inertia(Q);
  return QuadAnalysis{inverse(Q), det, in.positive - in.negative, in.positive, in.negative};
}

}  // namespace phasekit
