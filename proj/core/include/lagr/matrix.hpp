#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "lagr/error.hpp"

namespace lagr {

// Dense matrix over an exact field (Rat, QExt, Fp<p>). Row-major.
// Conventions used throughout the library:
//   * linear operators act on column vectors, composition is plain product;
//   * subspaces are stored as matrices whose rows are basis vectors.
template <class S>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * size_t(cols), S(0)) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  static Mat from_rows(const std::vector<std::vector<S>>& rows) {
    int r = int(rows.size());
    int c = r == 0 ? 0 : int(rows[0].size());
    Mat m(r, c);
    for (int i = 0; i < r; ++i) {
      check(int(rows[i].size()) == c, "from_rows: ragged rows");
      for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }

  S& operator()(int i, int j) { return a_[size_t(i) * c_ + j]; }
  const S& operator()(int i, int j) const { return a_[size_t(i) * c_ + j]; }

  std::vector<S> row(int i) const {
    return std::vector<S>(a_.begin() + size_t(i) * c_, a_.begin() + size_t(i + 1) * c_);
  }

  void set_row(int i, const std::vector<S>& v) {
    check(int(v.size()) == c_, "set_row: size mismatch");
    for (int j = 0; j < c_; ++j) (*this)(i, j) = v[j];
  }

  Mat transpose() const {
    Mat t(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Mat operator*(const Mat& x, const Mat& y) {
    check(x.c_ == y.r_, "matrix product: shape mismatch");
    Mat z(x.r_, y.c_);
    for (int i = 0; i < x.r_; ++i)
      for (int k = 0; k < x.c_; ++k) {
        const S& xik = x(i, k);
        if (xik == S(0)) continue;
        for (int j = 0; j < y.c_; ++j) z(i, j) += xik * y(k, j);
      }
    return z;
  }

  friend Mat operator+(const Mat& x, const Mat& y) {
    check(x.r_ == y.r_ && x.c_ == y.c_, "matrix sum: shape mismatch");
    Mat z = x;
    for (size_t t = 0; t < z.a_.size(); ++t) z.a_[t] += y.a_[t];
    return z;
  }

  friend Mat operator-(const Mat& x, const Mat& y) {
    check(x.r_ == y.r_ && x.c_ == y.c_, "matrix difference: shape mismatch");
    Mat z = x;
    for (size_t t = 0; t < z.a_.size(); ++t) z.a_[t] -= y.a_[t];
    return z;
  }

  Mat operator-() const {
    Mat z = *this;
    for (auto& v : z.a_) v = -v;
    return z;
  }

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
  }
  friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

  bool is_zero() const {
    for (const auto& v : a_)
      if (!(v == S(0))) return false;
    return true;
  }

  // Operator application, column convention: (*this) * v.
  std::vector<S> apply(const std::vector<S>& v) const {
    check(int(v.size()) == c_, "apply: size mismatch");
    std::vector<S> out(r_, S(0));
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j)
        if (!((*this)(i, j) == S(0))) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  // Row vector times matrix; how subspace bases are pushed through maps
  // that were stored in transposed (row) form.
  std::vector<S> apply_row(const std::vector<S>& v) const {
    check(int(v.size()) == r_, "apply_row: size mismatch");
    std::vector<S> out(c_, S(0));
    for (int i = 0; i < r_; ++i)
      if (!(v[i] == S(0)))
        for (int j = 0; j < c_; ++j) out[j] += v[i] * (*this)(i, j);
    return out;
  }

  Mat scaled(const S& factor) const {
    Mat z = *this;
    for (auto& v : z.a_) v = v * factor;
    return z;
  }

  // Stacks other below this.
  Mat vstack(const Mat& other) const {
    if (r_ == 0 && c_ == 0) return other;
    check(c_ == other.c_, "vstack: column mismatch");
    Mat z(r_ + other.r_, c_);
    z.a_.assign(a_.begin(), a_.end());
    z.a_.insert(z.a_.end(), other.a_.begin(), other.a_.end());
    return z;
  }

  // Places other to the right of this.
  Mat hstack(const Mat& other) const {
    check(r_ == other.r_, "hstack: row mismatch");
    Mat z(r_, c_ + other.c_);
    for (int i = 0; i < r_; ++i) {
      for (int j = 0; j < c_; ++j) z(i, j) = (*this)(i, j);
      for (int j = 0; j < other.c_; ++j) z(i, c_ + j) = other(i, j);
    }
    return z;
  }

 private:
  int r_ = 0, c_ = 0;
  std::vector<S> a_;
};

// In-place Gauss-Jordan reduction to reduced row echelon form.
// Returns the pivot columns in order. Exact field, so any nonzero pivot is fine.
template <class S>
std::vector<int> rref(Mat<S>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int sel = -1;
    for (int i = row; i < m.rows(); ++i)
      if (!(m(i, col) == S(0))) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    S inv = S(1) / m(row, col);
    for (int j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == S(0)) continue;
      S f = m(i, col);
      for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class S>
int rank_of(Mat<S> m) {
  return int(rref(m).size());
}

// Basis (as rows) of the right kernel {x : m x = 0}.
template <class S>
Mat<S> kernel(const Mat<S>& m) {
  Mat<S> r = m;
  std::vector<int> pivots = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<S>> rows;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<S> x(m.cols(), S(0));
    x[free] = S(1);
    for (int k = 0; k < int(pivots.size()); ++k) x[pivots[k]] = -r(k, free);
    rows.push_back(std::move(x));
  }
  Mat<S> out = Mat<S>::from_rows(rows);
  return rows.empty() ? Mat<S>(0, m.cols()) : out;
}

template <class S>
std::optional<Mat<S>> inverse_of(const Mat<S>& m) {
  check(m.rows() == m.cols(), "inverse: square matrices only");
  Mat<S> work = m.hstack(Mat<S>::identity(m.rows()));
  std::vector<int> piv = rref(work);
  if (int(piv.size()) < m.rows() || (m.rows() > 0 && piv[m.rows() - 1] >= m.rows()))
    return std::nullopt;
  Mat<S> inv(m.rows(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.rows(); ++j) inv(i, j) = work(i, m.rows() + j);
  return inv;
}

// One solution of A x = b, if any.
template <class S>
std::optional<std::vector<S>> solve_linear(const Mat<S>& a, const std::vector<S>& b) {
  check(int(b.size()) == a.rows(), "solve: rhs size mismatch");
  Mat<S> rhs(a.rows(), 1);
  for (int i = 0; i < a.rows(); ++i) rhs(i, 0) = b[i];
  Mat<S> work = a.hstack(rhs);
  std::vector<int> piv = rref(work);
  std::vector<S> x(a.cols(), S(0));
  for (int k = 0; k < int(piv.size()); ++k) {
    if (piv[k] == a.cols()) return std::nullopt;  // pivot in the rhs column
    x[piv[k]] = work(k, a.cols());
  }
  return x;
}

}  // namespace lagr
