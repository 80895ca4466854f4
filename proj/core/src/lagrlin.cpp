#include "lagr/lagrlin.hpp"

#include <utility>

#include "lagr/error.hpp"

namespace lagr {

namespace {

Rat pair_value(const Mat<Rat>& gram, const std::vector<Rat>& x, const std::vector<Rat>& y) {
  Rat out = 0;
  for (int i = 0; i < gram.rows(); ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < gram.cols(); ++j)
      if (gram(i, j) != 0 && y[j] != 0) out += x[i] * gram(i, j) * y[j];
  }
  return out;
}

std::vector<Rat> add_scaled(std::vector<Rat> x, const Rat& c, const std::vector<Rat>& y) {
  for (size_t i = 0; i < x.size(); ++i) x[i] += c * y[i];
  return x;
}

}  // namespace

QuadraticSpace make_space(Mat<Rat> gram, std::string label) {
  check(gram.rows() == gram.cols(), "quadratic space: square Gram required");
  if (gram != gram.transpose()) throw usage_error("quadratic space: Gram must be symmetric");
  if (rank_of(gram) != gram.rows())
    throw usage_error("quadratic space: Gram must be nondegenerate");
  QuadraticSpace sp;
  sp.dim = gram.rows();
  sp.gram = std::move(gram);
  sp.label = std::move(label);
  return sp;
}

QuadraticSpace double_space(const Mat<Rat>& block, std::string label) {
  int n = block.rows();
  Mat<Rat> g(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g(i, j) = block(i, j);
      g(n + i, n + j) = -block(i, j);
    }
  return make_space(std::move(g), std::move(label));
}

Rat form_value(const QuadraticSpace& sp, const std::vector<Rat>& x, const std::vector<Rat>& y) {
  check(int(x.size()) == sp.dim && int(y.size()) == sp.dim, "form_value: size mismatch");
  return pair_value(sp.gram, x, y);
}

bool is_lagrangian(const QuadraticSpace& sp, const Mat<Rat>& basis_rows) {
  check(basis_rows.cols() == sp.dim, "is_lagrangian: ambient mismatch");
  if (rank_of(basis_rows) != basis_rows.rows())
    throw usage_error("is_lagrangian: basis rows are dependent");
  return 2 * basis_rows.rows() == sp.dim && rows_isotropic(sp.gram, basis_rows);
}

LagrangianSubspace make_lagrangian(const QuadraticSpace& sp, const Mat<Rat>& basis_rows) {
  if (!is_lagrangian(sp, basis_rows))
    throw usage_error("make_lagrangian: rows do not span a Lagrangian subspace of " + sp.label);
  return LagrangianSubspace{sp, Subspace<Rat>::span(basis_rows)};
}

bool same_component(const LagrangianSubspace& a, const LagrangianSubspace& b) {
  if (a.ambient.dim != b.ambient.dim)
    throw usage_error("same_component: ambient dimensions differ");
  if (a.ambient.gram != b.ambient.gram)
    throw usage_error("same_component: Lagrangians live in different spaces");
  int inter = a.space.intersect(b.space).dim();
  return (a.dim() - inter) % 2 == 0;
}

long lagrangian_grassmannian_dim(int ambient_dim) {
  if (ambient_dim < 0) throw usage_error("lagrangian_grassmannian_dim: negative dimension");
  long n = ambient_dim / 2;
  return ambient_dim % 2 == 0 ? n * (n - 1) / 2 : n * (n + 1) / 2;
}

IsotropicLines isotropic_lines(const QuadraticSpace& sp) {
  if (sp.dim != 2) throw usage_error("isotropic_lines: the space must be 2-dimensional");
  const Rat a = sp.gram(0, 0);
  const Rat b = sp.gram(0, 1);
  const Rat c = sp.gram(1, 1);

  IsotropicLines out;
  out.lines = Mat<QExt>(2, 2);
  if (a == 0) {
    // (1,0) is isotropic; the second line comes from y(2bx + cy) = 0
    out.split_over_q = true;
    out.lines(0, 0) = QExt(1);
    out.lines(0, 1) = QExt(0);
    if (c == 0) {
      out.lines(1, 0) = QExt(0);
      out.lines(1, 1) = QExt(1);
    } else {
      out.lines(1, 0) = QExt(c);
      out.lines(1, 1) = QExt(-2 * b);
    }
    return out;
  }

  // roots of a t^2 + 2b t + c over x = t y
  QExt root = qext_sqrt(b * b - a * c);
  QExt t1 = (QExt(-b) + root) / QExt(a);
  QExt t2 = (QExt(-b) - root) / QExt(a);
  out.split_over_q = root.is_rational();
  out.radicand = root.radicand();
  out.lines(0, 0) = t1;
  out.lines(0, 1) = QExt(1);
  out.lines(1, 0) = t2;
  out.lines(1, 1) = QExt(1);
  return out;
}

Mat<Rat> orthogonal_basis(const Mat<Rat>& gram) {
  int n = gram.rows();
  check(gram == gram.transpose() && rank_of(gram) == n, "orthogonal_basis: need a nondegenerate symmetric form");
  std::vector<std::vector<Rat>> b;
  for (int i = 0; i < n; ++i) {
    std::vector<Rat> e(n, Rat(0));
    e[i] = 1;
    b.push_back(std::move(e));
  }
  for (int i = 0; i < n; ++i) {
    if (pair_value(gram, b[i], b[i]) == 0) {
      // repair the pivot from the untouched tail; nondegeneracy of the
      // remaining block guarantees one of the two moves exists
      int swap_j = -1, add_j = -1;
      for (int j = i + 1; j < n && swap_j < 0; ++j) {
        if (pair_value(gram, b[j], b[j]) != 0) swap_j = j;
        if (add_j < 0 && pair_value(gram, b[i], b[j]) != 0) add_j = j;
      }
      if (swap_j >= 0)
        std::swap(b[i], b[swap_j]);
      else {
        check(add_j >= 0, "orthogonal_basis: degenerate block");
        b[i] = add_scaled(b[i], Rat(1), b[add_j]);
      }
    }
    Rat q = pair_value(gram, b[i], b[i]);
    check(q != 0, "orthogonal_basis: pivot repair failed");
    for (int j = i + 1; j < n; ++j)
      b[j] = add_scaled(std::move(b[j]), -pair_value(gram, b[j], b[i]) / q, b[i]);
  }
  return Mat<Rat>::from_rows(b);
}

Mat<Rat> form_reflection(const Mat<Rat>& gram, const std::vector<Rat>& w) {
  Rat q = pair_value(gram, w, w);
  check(q != 0, "form_reflection: isotropic mirror vector");
  int n = gram.rows();
  Mat<Rat> r = Mat<Rat>::identity(n);
  // x - 2 <x,w>/<w,w> w, assembled as I - (2/q) w (w^T G)
  std::vector<Rat> wg(n, Rat(0));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) wg[j] += w[k] * gram(k, j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) -= Rat(2) / q * w[i] * wg[j];
  return r;
}

Mat<Rat> random_form_isometry(const Mat<Rat>& gram, Rng& rng) {
  int n = gram.rows();
  auto ginv = inverse_of(gram);
  check(ginv.has_value(), "random_form_isometry: degenerate form");
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat<Rat> m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        m(i, j) = rat(rng.range(-3, 3));
        m(j, i) = -m(i, j);
      }
    Mat<Rat> a = *ginv * m;
    auto denom = inverse_of(Mat<Rat>::identity(n) + a);
    if (!denom) continue;
    Mat<Rat> phi = (Mat<Rat>::identity(n) - a) * *denom;
    check(phi.transpose() * gram * phi == gram, "random_form_isometry: Cayley output not orthogonal");
    return phi;
  }
  check(false, "random_form_isometry: no invertible Cayley denominator found");
  return Mat<Rat>();
}

Mat<Rat> extend_isometry(const Mat<Rat>& gram, const Mat<Rat>& from_rows,
                         const Mat<Rat>& to_rows) {
  int n = gram.rows();
  int r = from_rows.rows();
  check(to_rows.rows() == r && from_rows.cols() == n && to_rows.cols() == n,
        "extend_isometry: shape mismatch");
  if (rank_of(from_rows) != r) throw usage_error("extend_isometry: dependent source rows");
  if (from_rows * gram * from_rows.transpose() != to_rows * gram * to_rows.transpose())
    throw usage_error("extend_isometry: Gram tables differ, no isometry can match the rows");

  // simultaneous orthogonalization; identical row operations keep the
  // correspondence from_i -> to_i intact because the Gram tables agree
  std::vector<std::vector<Rat>> src, dst;
  for (int i = 0; i < r; ++i) {
    src.push_back(from_rows.row(i));
    dst.push_back(to_rows.row(i));
  }
  for (int i = 0; i < r; ++i) {
    if (pair_value(gram, src[i], src[i]) == 0) {
      int swap_j = -1, add_j = -1;
      for (int j = i + 1; j < r && swap_j < 0; ++j) {
        if (pair_value(gram, src[j], src[j]) != 0) swap_j = j;
        if (add_j < 0 && pair_value(gram, src[i], src[j]) != 0) add_j = j;
      }
      if (swap_j >= 0) {
        std::swap(src[i], src[swap_j]);
        std::swap(dst[i], dst[swap_j]);
      } else if (add_j >= 0) {
        src[i] = add_scaled(std::move(src[i]), Rat(1), src[add_j]);
        dst[i] = add_scaled(std::move(dst[i]), Rat(1), dst[add_j]);
      } else {
        throw usage_error("extend_isometry: the form degenerates on the spanned subspace");
      }
    }
    Rat q = pair_value(gram, src[i], src[i]);
    check(q != 0, "extend_isometry: pivot repair failed");
    for (int j = i + 1; j < r; ++j) {
      Rat f = -pair_value(gram, src[j], src[i]) / q;
      src[j] = add_scaled(std::move(src[j]), f, src[i]);
      dst[j] = add_scaled(std::move(dst[j]), f, dst[i]);
    }
  }

  // chain of reflections sending each src vector to its dst partner while
  // fixing the previously matched ones (they are orthogonal to every mirror)
  Mat<Rat> f = Mat<Rat>::identity(n);
  for (int i = 0; i < r; ++i) {
    std::vector<Rat> u = f.apply(src[i]);
    const std::vector<Rat>& v = dst[i];
    if (u == v) continue;
    std::vector<Rat> diff = u;
    for (int k = 0; k < n; ++k) diff[k] -= v[k];
    if (pair_value(gram, diff, diff) != 0) {
      f = form_reflection(gram, diff) * f;
    } else {
      std::vector<Rat> sum = u;
      for (int k = 0; k < n; ++k) sum[k] += v[k];
      f = form_reflection(gram, v) * form_reflection(gram, sum) * f;
    }
    check(f.apply(src[i]) == v, "extend_isometry: reflection step missed its target");
  }
  check(f.transpose() * gram * f == gram, "extend_isometry: result is not an isometry");
  for (int i = 0; i < r; ++i)
    check(f.apply(from_rows.row(i)) == to_rows.row(i), "extend_isometry: row image mismatch");
  return f;
}

Mat<Rat> isometry_graph(const Mat<Rat>& phi) {
  return Mat<Rat>::identity(phi.rows()).hstack(phi.transpose());
}

std::vector<Mat<Rat>> coordinate_lagrangians(const Mat<Rat>& block) {
  Mat<Rat> u = orthogonal_basis(block);
  int n = u.rows();
  std::vector<Mat<Rat>> out;
  out.reserve(size_t(1) << n);
  for (int mask = 0; mask < (1 << n); ++mask) {
    Mat<Rat> rows(n, 2 * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        rows(i, j) = u(i, j);
        rows(i, n + j) = (mask >> i) & 1 ? u(i, j) : -u(i, j);
      }
    out.push_back(std::move(rows));
  }
  return out;
}

}  // namespace lagr
