#pragma once

#include <string>
#include <vector>

#include "lagr/matrix.hpp"
#include "lagr/qext.hpp"
#include "lagr/rng.hpp"
#include "lagr/subspace.hpp"

namespace lagr {

// Nondegenerate symmetric bilinear form on Q^dim. label records which
// construction produced the space (doubled Cartan, doubled center, ...).
struct QuadraticSpace {
  int dim = 0;
  Mat<Rat> gram;
  std::string label;
};

// Validates symmetry and full rank.
QuadraticSpace make_space(Mat<Rat> gram, std::string label);

// The space U + U carrying <<,>> on the first summand minus <<,>> on the
// second: Gram [[B, 0], [0, -B]].
QuadraticSpace double_space(const Mat<Rat>& block, std::string label);

Rat form_value(const QuadraticSpace& sp, const std::vector<Rat>& x, const std::vector<Rat>& y);

template <class S>
bool rows_isotropic(const Mat<S>& gram, const Mat<S>& rows) {
  Mat<S> prod = rows * gram * rows.transpose();
  return prod.is_zero();
}

// True iff the rows span an isotropic subspace of half the ambient dimension.
// Dependent rows are an error rather than a false.
bool is_lagrangian(const QuadraticSpace& sp, const Mat<Rat>& basis_rows);

struct LagrangianSubspace {
  QuadraticSpace ambient;
  Subspace<Rat> space;

  int dim() const { return space.dim(); }
};

LagrangianSubspace make_lagrangian(const QuadraticSpace& sp, const Mat<Rat>& basis_rows);

// True when dim V1 - dim(V1 cap V2) is even, i.e. the two Lagrangians sit in
// the same connected component of the Lagrangian Grassmannian.
bool same_component(const LagrangianSubspace& a, const LagrangianSubspace& b);

// Complex dimension of one component: n(n-1)/2 for ambient dimension 2n,
// n(n+1)/2 for 2n+1.
long lagrangian_grassmannian_dim(int ambient_dim);

// The two isotropic lines of a nondegenerate binary form, over Q when the
// discriminant is a square and over Q(sqrt(radicand)) otherwise; in the
// second case split_over_q certifies that no rational line exists.
struct IsotropicLines {
  bool split_over_q = false;
  long radicand = 0;  // 0 when both lines are rational
  Mat<QExt> lines;    // two rows, each spanning one line
};

IsotropicLines isotropic_lines(const QuadraticSpace& sp);

// Rows forming an orthogonal basis for the form (diagonal restricted Gram,
// nonzero diagonal). The form must be nondegenerate.
Mat<Rat> orthogonal_basis(const Mat<Rat>& gram);

// Reflection in the hyperplane orthogonal to w; w must be anisotropic.
Mat<Rat> form_reflection(const Mat<Rat>& gram, const std::vector<Rat>& w);

// Seeded rational isometry of the form, built from a Cayley transform of a
// random form-skew matrix. Lands in the special orthogonal group.
Mat<Rat> random_form_isometry(const Mat<Rat>& gram, Rng& rng);

// Witt extension: the returned F is a form isometry of the whole space with
// F(from_i) = to_i for every row. Requires matching Gram tables and a
// nondegenerate restriction to the spanned subspaces.
Mat<Rat> extend_isometry(const Mat<Rat>& gram, const Mat<Rat>& from_rows,
                         const Mat<Rat>& to_rows);

// Basis rows of the graph {(x, phi x)} inside the doubled space.
Mat<Rat> isometry_graph(const Mat<Rat>& phi);

// The 2^n subspaces spanned by one of (u_i, u_i), (u_i, -u_i) per orthogonal
// basis vector u_i; all Lagrangian in double_space(block). Bit i of the
// enumeration index picks the plus sign.
std::vector<Mat<Rat>> coordinate_lagrangians(const Mat<Rat>& block);

}  // namespace lagr
