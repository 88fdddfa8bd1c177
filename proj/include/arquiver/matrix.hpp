// Dense exact rational matrices and the elimination kernel everything else uses:
// reduced row echelon form with leftmost pivots, linear solving with free
// variables pinned to zero, kernel bases, inverses, and multiplicative order.
#pragma once

#include "arquiver/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arq {

using RatVec = std::vector<Rat>;

class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
  Mat(size_t rows, size_t cols, std::vector<Rat> entries)
      : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_)
      throw std::invalid_argument("matrix entry count does not match shape");
  }

  static Mat identity(size_t n) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  // Rows given as initializer lists of integers, for fixtures.
  static Mat from_rows(const std::vector<std::vector<long long>>& rows) {
    size_t r = rows.size(), c = r ? rows[0].size() : 0;
    Mat m(r, c);
    for (size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("ragged rows");
      for (size_t j = 0; j < c; ++j) m(i, j) = Rat(rows[i][j]);
    }
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Rat& operator()(size_t i, size_t j) { return e_[i * cols_ + j]; }
  const Rat& operator()(size_t i, size_t j) const { return e_[i * cols_ + j]; }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Mat p(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t k = 0; k < cols_; ++k) {
        const Rat& a = (*this)(i, k);
        if (a == 0) continue;
        for (size_t j = 0; j < o.cols_; ++j) {
          if (o(k, j) == 0) continue;
          p(i, j) += a * o(k, j);
        }
      }
    return p;
  }

  Mat operator+(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("matrix sum shape mismatch");
    Mat s(rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) s.e_[k] = e_[k] + o.e_[k];
    return s;
  }

  Mat operator-(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("matrix difference shape mismatch");
    Mat s(rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) s.e_[k] = e_[k] - o.e_[k];
    return s;
  }

  Mat operator-() const {
    Mat s(rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) s.e_[k] = -e_[k];
    return s;
  }

  Mat scaled(const Rat& c) const {
    Mat s(rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) s.e_[k] = c * e_[k];
    return s;
  }

  RatVec apply(const RatVec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
    RatVec out(rows_, Rat(0));
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0 && v[j] != 0) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  bool is_zero() const {
    for (const Rat& x : e_)
      if (x != 0) return false;
    return true;
  }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != Rat(i == j ? 1 : 0)) return false;
    return true;
  }

  // Horizontal concatenation [A | B].
  static Mat hcat(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hcat row mismatch");
    Mat m(a.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
      for (size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
      for (size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    return m;
  }

  std::string to_string() const {
    std::string s;
    for (size_t i = 0; i < rows_; ++i) {
      for (size_t j = 0; j < cols_; ++j) {
        if (j) s += ' ';
        s += rat_to_string((*this)(i, j));
      }
      s += '\n';
    }
    return s;
  }

 private:
  size_t rows_, cols_;
  std::vector<Rat> e_;
};

// In-place Gauss-Jordan to reduced row echelon form. Pivots are the leftmost
// nonzero entries scanned top-down (first nonzero row wins, no pivot scaling
// heuristics), which makes every downstream answer deterministic.
// Returns the pivot columns in order.
inline std::vector<size_t> rref_in_place(Mat& m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    Rat inv = Rat(1) / m(row, col);
    for (size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rat f = m(i, col);
      for (size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline size_t rank(Mat m) { return rref_in_place(m).size(); }

// First solution of A x = b under the echelon contract: free variables are 0.
// Returns nothing when the system is inconsistent.
inline std::optional<RatVec> solve_linear(const Mat& a, const RatVec& b) {
  if (a.rows() != b.size())
    throw std::invalid_argument("solve_linear: rows(A) != length(b)");
  Mat aug(a.rows(), a.cols() + 1);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  std::vector<size_t> pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;  // row [0 .. 0 | 1]
  RatVec x(a.cols(), Rat(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

// Basis of the null space, one vector per free column, in the standard
// reduced-echelon normalization (free coordinate = 1, pivot coordinates
// balance the pivot rows).
inline std::vector<RatVec> kernel_basis(const Mat& a) {
  Mat r = a;
  std::vector<size_t> pivots = rref_in_place(r);
  std::vector<bool> is_pivot(a.cols(), false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVec v(a.cols(), Rat(0));
    v[free] = 1;
    for (size_t p = 0; p < pivots.size(); ++p) v[pivots[p]] = -r(p, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Mat inverse(const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
  size_t n = a.rows();
  Mat aug = Mat::hcat(a, Mat::identity(n));
  std::vector<size_t> pivots = rref_in_place(aug);
  // The identity block always contributes pivots; A is invertible exactly
  // when all pivots land in the left block.
  for (size_t p : pivots)
    if (p >= n) throw std::domain_error("singular matrix has no inverse");
  if (pivots.size() != n) throw std::domain_error("singular matrix has no inverse");
  Mat inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

// Smallest n in [1, max_n] with A^n = I, if any.
inline std::optional<size_t> matrix_order(const Mat& a, size_t max_n) {
  if (a.rows() != a.cols()) throw std::invalid_argument("order of non-square matrix");
  Mat p = a;
  for (size_t n = 1; n <= max_n; ++n) {
    if (p.is_identity()) return n;
    p = p * a;
  }
  return std::nullopt;
}

}  // namespace arq
