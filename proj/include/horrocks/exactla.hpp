// Dense exact linear algebra over a FieldScalar.
//
// Elimination always pivots on the first nonzero entry, so every basis
// returned here (kernels, coset bases, echelon forms) is a deterministic
// function of the input matrix.
#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "horrocks/error.hpp"
#include "horrocks/field.hpp"

namespace horrocks {

template <class K>
using Vec = std::vector<K>;

template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(std::size_t n, const typename K::Field& f) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }
  static Matrix from_columns(std::size_t rows, const std::vector<Vec<K>>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw Error(ErrorKind::Internal, "column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }
  static Matrix from_rows(std::size_t cols, const std::vector<Vec<K>>& rows) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error(ErrorKind::Internal, "row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  K& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Vec<K> column(std::size_t j) const {
    Vec<K> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  Vec<K> row(std::size_t i) const { return Vec<K>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }
  std::vector<Vec<K>> columns() const {
    std::vector<Vec<K>> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
  }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const K& x) { return x.is_zero(); });
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::Internal, "matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const K& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend Vec<K> operator*(const Matrix& a, const Vec<K>& x) {
    if (a.cols_ != x.size()) throw Error(ErrorKind::Internal, "matrix-vector shape mismatch");
    Vec<K> y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (!a(i, k).is_zero() && !x[k].is_zero()) y[i] += a(i, k) * x[k];
    return y;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::Internal, "matrix sum shape mismatch");
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::Internal, "matrix difference shape mismatch");
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
    return a;
  }
  friend Matrix operator*(const K& c, Matrix a) {
    for (auto& x : a.a_) x = c * x;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  /// Place `b` with its top-left corner at (r, c).
  void set_block(std::size_t r, std::size_t c, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r + i, c + j) = b(i, j);
  }
  Matrix block(std::size_t r, std::size_t c, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r + i, c + j);
    return b;
  }

  static Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.cols_) throw Error(ErrorKind::Internal, "vstack shape mismatch");
    Matrix m(a.rows_ + b.rows_, a.cols_);
    m.set_block(0, 0, a);
    m.set_block(a.rows_, 0, b);
    return m;
  }
  static Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw Error(ErrorKind::Internal, "hstack shape mismatch");
    Matrix m(a.rows_, a.cols_ + b.cols_);
    m.set_block(0, 0, a);
    m.set_block(0, a.cols_, b);
    return m;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
      os << '[';
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j).to_string();
      os << "]\n";
    }
    return os.str();
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<K> a_;
};

template <class K>
bool is_zero_vec(const Vec<K>& v) {
  return std::all_of(v.begin(), v.end(), [](const K& x) { return x.is_zero(); });
}

/// Reduced row echelon form with the pivot column of each nonzero row.
template <class K>
struct Echelon {
  Matrix<K> r;                     // only the first rank() rows are nonzero
  std::vector<std::size_t> pivots;  // pivot column per nonzero row, increasing
  std::size_t rank() const { return pivots.size(); }
};

template <class K>
Echelon<K> rref(Matrix<K> m) {
  Echelon<K> e;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t j = col; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    const K inv = m(row, col).inv();
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const K f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
    }
    e.pivots.push_back(col);
    ++row;
  }
  e.r = std::move(m);
  return e;
}

template <class K>
std::size_t rank(const Matrix<K>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return m.rows() <= m.cols() ? rref(m).rank() : rref(m.transpose()).rank();
}

/// Basis of the null space; one vector per non-pivot column, in column order.
template <class K>
std::vector<Vec<K>> kernel_basis(const Matrix<K>& m, const typename K::Field& f) {
  const Echelon<K> e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec<K>> out;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec<K> v(m.cols());
    v[free] = f.one();
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.r(i, free);
    out.push_back(std::move(v));
  }
  return out;
}

/// Some x with m x = rhs (free variables set to zero), or nullopt when rhs is
/// outside the column space. The returned x depends linearly on rhs.
template <class K>
std::optional<Vec<K>> solve(const Matrix<K>& m, const Vec<K>& rhs) {
  if (rhs.size() != m.rows()) throw Error(ErrorKind::Internal, "solve: rhs length mismatch");
  Matrix<K> aug(m.rows(), m.cols() + 1);
  aug.set_block(0, 0, m);
  for (std::size_t i = 0; i < rhs.size(); ++i) aug(i, m.cols()) = rhs[i];
  const Echelon<K> e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  Vec<K> x(m.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.r(i, m.cols());
  return x;
}

/// Solve m X = rhs for several right-hand sides at once; nullopt if any fails.
template <class K>
std::optional<Matrix<K>> solve_many(const Matrix<K>& m, const Matrix<K>& rhs) {
  if (rhs.rows() != m.rows()) throw Error(ErrorKind::Internal, "solve_many: shape mismatch");
  Matrix<K> aug = Matrix<K>::hstack(m, rhs);
  const Echelon<K> e = rref(std::move(aug));
  const std::size_t n = m.cols();
  for (auto p : e.pivots)
    if (p >= n) return std::nullopt;
  Matrix<K> x(n, rhs.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    for (std::size_t j = 0; j < rhs.cols(); ++j) x(e.pivots[i], j) = e.r(i, n + j);
  return x;
}

/// Quotient of k^ambient by the span of `subspace`.
///
/// The coset basis is the set of unit vectors at non-pivot positions of the
/// reduced echelon form of the subspace; `projection` maps k^ambient onto
/// coordinates in that basis and has kernel exactly span(subspace).
template <class K>
Vec<K> unit_vector(std::size_t n, std::size_t i, const typename K::Field& f) {
  Vec<K> v(n, f.zero());
  v[i] = f.one();
  return v;
}

template <class K>
struct QuotientData {
  std::size_t ambient = 0;
  std::vector<std::size_t> coset;   // ambient index of each quotient basis vector
  std::vector<std::size_t> pivots;  // echelon pivots of the subspace
  Matrix<K> echelon;                // rank x ambient, reduced
  Matrix<K> projection;             // dim x ambient
  std::size_t dim() const { return coset.size(); }

  Vec<K> project(const Vec<K>& x) const { return projection * x; }
  /// Representative in k^ambient of a quotient coordinate vector.
  Vec<K> lift(const Vec<K>& y) const {
    Vec<K> x(ambient);
    for (std::size_t j = 0; j < coset.size(); ++j) x[coset[j]] = y[j];
    return x;
  }
  bool contains(const Vec<K>& x) const { return is_zero_vec(project(x)); }
};

template <class K>
QuotientData<K> quotient_data(std::size_t ambient, const std::vector<Vec<K>>& subspace,
                              const typename K::Field& f) {
  QuotientData<K> q;
  q.ambient = ambient;
  Matrix<K> rows = subspace.empty() ? Matrix<K>(0, ambient) : Matrix<K>::from_rows(ambient, subspace);
  Echelon<K> e = rref(std::move(rows));
  q.pivots = e.pivots;
  q.echelon = e.r.block(0, 0, e.rank(), ambient);
  std::vector<long> pos(ambient, -1);
  for (std::size_t j = 0, p = 0; j < ambient; ++j) {
    if (p < e.pivots.size() && e.pivots[p] == j) {
      ++p;
      continue;
    }
    pos[j] = static_cast<long>(q.coset.size());
    q.coset.push_back(j);
  }
  q.projection = Matrix<K>(q.coset.size(), ambient);
  for (std::size_t j = 0; j < ambient; ++j)
    if (pos[j] >= 0) q.projection(static_cast<std::size_t>(pos[j]), j) = f.one();
  for (std::size_t i = 0; i < e.rank(); ++i) {
    const std::size_t pc = e.pivots[i];
    for (std::size_t j = 0; j < ambient; ++j)
      if (pos[j] >= 0 && !q.echelon(i, j).is_zero())
        q.projection(static_cast<std::size_t>(pos[j]), pc) = -q.echelon(i, j);
  }
  return q;
}

/// Canonical echelon basis of span(vectors): equal spans give equal output.
template <class K>
std::vector<Vec<K>> span_basis(std::size_t ambient, const std::vector<Vec<K>>& vectors) {
  if (vectors.empty()) return {};
  const Echelon<K> e = rref(Matrix<K>::from_rows(ambient, vectors));
  std::vector<Vec<K>> out;
  for (std::size_t i = 0; i < e.rank(); ++i) out.push_back(e.r.row(i));
  return out;
}

template <class K>
std::size_t span_rank(std::size_t ambient, const std::vector<Vec<K>>& vectors) {
  if (vectors.empty()) return 0;
  return rank(Matrix<K>::from_rows(ambient, vectors));
}

/// Determinant by elimination (square matrices only).
template <class K>
K determinant(Matrix<K> m, const typename K::Field& f) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::Internal, "determinant of non-square matrix");
  K det = f.one();
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return f.zero();
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    const K inv = m(c, c).inv();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      const K factor = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= factor * m(c, j);
    }
  }
  return det;
}

template <class K>
Vec<K> random_vector(std::size_t n, const typename K::Field& f, std::mt19937_64& rng) {
  Vec<K> v(n);
  for (auto& x : v) x = f.random(rng);
  return v;
}

}  // namespace horrocks
