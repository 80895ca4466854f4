#pragma once

#include <vector>

#include "lagr/matrix.hpp"

namespace lagr {

// Linear subspace of S^n in canonical form: the basis matrix is kept in
// reduced row echelon form, so equality of subspaces is matrix equality.
template <class S>
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(int ambient) { return Subspace(Mat<S>(0, ambient), ambient); }

  static Subspace full(int ambient) { return span(Mat<S>::identity(ambient)); }

  static Subspace span(Mat<S> rows) {
    int ambient = rows.cols();
    std::vector<int> piv = rref(rows);
    Mat<S> basis(int(piv.size()), ambient);
    for (int i = 0; i < int(piv.size()); ++i)
      for (int j = 0; j < ambient; ++j) basis(i, j) = rows(i, j);
    Subspace out(std::move(basis), ambient);
    out.pivots_ = std::move(piv);
    return out;
  }

  static Subspace span_rows(const std::vector<std::vector<S>>& rows, int ambient) {
    if (rows.empty()) return zero(ambient);
    return span(Mat<S>::from_rows(rows));
  }

  int dim() const { return basis_.rows(); }
  int ambient() const { return ambient_; }
  const Mat<S>& basis() const { return basis_; }

  std::vector<std::vector<S>> basis_rows() const {
    std::vector<std::vector<S>> out;
    out.reserve(dim());
    for (int i = 0; i < dim(); ++i) out.push_back(basis_.row(i));
    return out;
  }

  // Residual of v after eliminating along the stored pivots; zero iff v lies
  // in the subspace. Doubles as a canonical section of the quotient map.
  std::vector<S> reduce(std::vector<S> v) const {
    check(int(v.size()) == ambient_, "reduce: ambient mismatch");
    for (int i = 0; i < dim(); ++i) {
      const S& c = v[pivots_[i]];
      if (c == S(0)) continue;
      S f = c;
      for (int j = 0; j < ambient_; ++j) v[j] -= f * basis_(i, j);
    }
    return v;
  }

  bool contains(const std::vector<S>& v) const {
    std::vector<S> r = reduce(v);
    for (const auto& c : r)
      if (!(c == S(0))) return false;
    return true;
  }

  bool contains(const Subspace& other) const {
    check(ambient_ == other.ambient_, "contains: ambient mismatch");
    for (int i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_.row(i))) return false;
    return true;
  }

  friend bool operator==(const Subspace& x, const Subspace& y) {
    return x.ambient_ == y.ambient_ && x.basis_ == y.basis_;
  }
  friend bool operator!=(const Subspace& x, const Subspace& y) { return !(x == y); }

  Subspace operator+(const Subspace& other) const {
    check(ambient_ == other.ambient_, "sum: ambient mismatch");
    return span(basis_.vstack(other.basis_));
  }

  Subspace intersect(const Subspace& other) const {
    check(ambient_ == other.ambient_, "intersect: ambient mismatch");
    // x = a U = b W. Solve [U^T | -W^T] (a, b)^T = 0 and push the a-part
    // back through U.
    if (dim() == 0 || other.dim() == 0) return zero(ambient_);
    Mat<S> stacked = basis_.transpose().hstack(-other.basis_.transpose());
    Mat<S> null = kernel(stacked);
    std::vector<std::vector<S>> rows;
    for (int i = 0; i < null.rows(); ++i) {
      std::vector<S> x(ambient_, S(0));
      for (int k = 0; k < dim(); ++k) {
        const S& ak = null(i, k);
        if (ak == S(0)) continue;
        for (int j = 0; j < ambient_; ++j) x[j] += ak * basis_(k, j);
      }
      rows.push_back(std::move(x));
    }
    return span_rows(rows, ambient_);
  }

  // Image under a linear operator given in column convention.
  Subspace image_under(const Mat<S>& op) const {
    check(op.cols() == ambient_, "image_under: shape mismatch");
    std::vector<std::vector<S>> rows;
    rows.reserve(dim());
    for (int i = 0; i < dim(); ++i) rows.push_back(op.apply(basis_.row(i)));
    return span_rows(rows, op.rows());
  }

 private:
  Subspace(Mat<S> basis, int ambient) : basis_(std::move(basis)), ambient_(ambient) {
    // callers fill pivots_ when they already ran rref
    if (pivots_.empty() && basis_.rows() > 0) {
      for (int i = 0; i < basis_.rows(); ++i)
        for (int j = 0; j < basis_.cols(); ++j)
          if (!(basis_(i, j) == S(0))) {
            pivots_.push_back(j);
            break;
          }
    }
  }

  Mat<S> basis_;       // rref rows
  std::vector<int> pivots_;
  int ambient_ = 0;
};

}  // namespace lagr
