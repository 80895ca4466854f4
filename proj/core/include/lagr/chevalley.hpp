#pragma once

#include <string>
#include <vector>

#include "lagr/bd.hpp"
#include "lagr/matrix.hpp"
#include "lagr/qext.hpp"
#include "lagr/rootdata.hpp"
#include "lagr/subspace.hpp"
#include "lagr/weyl.hpp"

namespace lagr {

// Exact model of the semisimple Lie algebra attached to a root system, in a
// Chevalley basis.  The coordinate order is
//
//   h_0 .. h_{r-1},  e_{beta_0} .. e_{beta_{N-1}},  f_{beta_0} .. f_{beta_{N-1}}
//
// where h_i is the Killing-dual H_{alpha_i} of the i-th simple root (so the
// Cartan block composes directly with the root-system helpers), beta_p runs
// over the positive roots in their stored order, e is the positive root
// vector x_beta and f the negative one x_{-beta}.  Structure constants for
// root-vector pairs are the integers N_{beta,gamma}; brackets against the
// Cartan and the pair brackets [e,f] follow the usual Chevalley relations,
// so everything downstream is exact rational arithmetic.
struct LieAlgebraModel {
  RootSystem rs;
  std::vector<std::vector<long>> npos;  // npos[p][q] = N_{beta_p, beta_q}, 0 if sum is not a root
  Mat<Rat> killing;                     // dim_g x dim_g Gram: Cartan block is the root-system
                                        // Gram, kappa(e_beta, f_beta) = 2/<<beta,beta>>, rest zero

  int dim_g() const { return rs.rank + 2 * rs.n_pos(); }
  int h_index(int i) const { return i; }
  int e_index(int p) const { return rs.rank + p; }
  int f_index(int p) const { return rs.rank + rs.n_pos() + p; }

  std::vector<Rat> basis_vec(int idx) const;

  // N_{a,b} for arbitrary roots a, b (coordinate vectors, either sign) with
  // a + b a root.  Positive pairs come from the table, the rest from the
  // antisymmetry and norm-ratio identities.
  Rat n_constant(const std::vector<int>& a, const std::vector<int>& b) const;

  // Bracket of two basis elements / of arbitrary coordinate vectors.
  std::vector<Rat> bracket_basis(int a, int b) const;
  std::vector<Rat> bracket(const std::vector<Rat>& x, const std::vector<Rat>& y) const;
  std::vector<QExt> bracket(const std::vector<QExt>& x, const std::vector<QExt>& y) const;

  Mat<Rat> ad(const std::vector<Rat>& x) const;

  Rat killing_value(const std::vector<Rat>& x, const std::vector<Rat>& y) const;

  // Root vectors normalized so that <<E_beta, E_{-beta}>> = 1: E_beta = e_beta
  // and E_{-beta} a rational multiple of f_beta.
  std::vector<Rat> e_plus(int p) const { return basis_vec(e_index(p)); }
  std::vector<Rat> e_minus(int p) const;

  // h-coordinates of the coroot beta^vee = 2 H_beta / <<beta,beta>>.
  std::vector<Rat> coroot_vec(int p) const;
};

// Builds the model and verifies its defining invariants: every structure
// constant has the root-string magnitude, the Jacobi identity holds on all
// basis triples, and the stored Killing form is ad-invariant.  The exhaustive
// checks are why the rank is capped.
LieAlgebraModel build_lie_algebra(const RootSystem& rs, int rank_cap = 4);

// Element of the maximal torus, recorded by the values of the simple-root
// characters: alpha_i(m) = simple_values[i], a nonzero rational.  Ad_m scales
// e_beta by beta(m) = prod alpha_i(m)^{beta_i} and fixes the Cartan.
struct TorusElement {
  std::vector<Rat> simple_values;
};

TorusElement identity_torus(int rank);
Rat torus_character(const TorusElement& m, const std::vector<int>& root);
TorusElement torus_inverse(const TorusElement& m);
Mat<Rat> torus_adjoint(const LieAlgebraModel& model, const TorusElement& m);

// Adjoint action of the standard lift v-dot of a Weyl group element,
// n_i = exp(ad e_i) exp(-ad f_i) exp(ad e_i) multiplied along a reduced word.
// The Cartan block always equals the reflection action of v.
Mat<Rat> weyl_lift_adjoint(const LieAlgebraModel& model, const WeylElement& v);

// The Levi isomorphism gamma_d: g_S -> g_T induced by a Gram-preserving
// bijection d, extended by zero off g_S (so composing with the Levi
// projection is matrix composition).  Sends H_{alpha_s} to H_{alpha_{d(s)}}
// and E_{alpha_s} to E_{alpha_{d(s)}}; higher root vectors pick up signs
// determined by the structure constants.  The bracket-homomorphism and
// isometry properties are verified on all basis pairs of g_S; a failure
// means the structure-constant signs are inconsistent and is reported as a
// check_error.
Mat<Rat> gamma_d_map(const LieAlgebraModel& model, const BDTriple& t);

// chi_S extended to all of g along g = n_S^- + z_S + g_S + n_S: the identity
// on g_S, zero on z_S and on every root space outside [S].
Mat<Rat> levi_projection(const LieAlgebraModel& model, const std::vector<int>& S);

// The twist phi = Ad_{v-dot} gamma_d chi_S Ad_m^{-1} on g.
Mat<Rat> phi_operator(const LieAlgebraModel& model, const BDTriple& t,
                      const WeylElement& v, const TorusElement& m);

// Subspace of the double g + g carrying the split form
// <(x1,x2),(y1,y2)> = kappa(x1,y1) - kappa(x2,y2).  Coordinates may live in a
// quadratic extension since isotropic directions of split planes sometimes
// do.  The basis is kept in reduced row echelon form.
struct DoubleSubspace {
  int gdim = 0;             // dim of one factor
  Subspace<QExt> space;     // subspace of Q(sqrt(D))^{2 gdim}
  int dim() const { return space.dim(); }
};

Mat<QExt> double_killing_gram(const LieAlgebraModel& model);

// The subspace l_{S,T,d,V} = V + (n_S + n_T^-) + graph(gamma_d | g_S), then
// optionally pushed by Ad_{(m, v-dot)} (first factor by m, second by v-dot).
// V is given by rows in h+h coordinates (2 * rank columns) and must be a
// Lagrangian subspace of z_S + z_T, else usage_error.  The result always has
// dimension dim g.
DoubleSubspace build_lagrangian(const LieAlgebraModel& model, const BDTriple& t,
                                const Mat<QExt>& v_rows);
DoubleSubspace build_lagrangian(const LieAlgebraModel& model, const BDTriple& t,
                                const Mat<QExt>& v_rows, const WeylElement& v,
                                const TorusElement& m);

// dim = dim g, isotropic for the split form, closed under the componentwise
// bracket.
bool is_lagrangian_subalgebra(const LieAlgebraModel& model, const DoubleSubspace& l);

// Direct solve of {x in g : [(x,x), l] is contained in l}, returned as a
// subspace of the diagonal copy of g inside g + g.
DoubleSubspace normalizer_in_diagonal(const LieAlgebraModel& model, const DoubleSubspace& l);

// Direct solve of g_Delta intersect l.
DoubleSubspace intersect_with_diagonal(const LieAlgebraModel& model, const DoubleSubspace& l);

// Normalizer of the labeled subspace l_{S,T,d,V,v,m}, computed twice: by the
// direct solve above and by assembling z'_{S(v,d)} + g^phi_{S(v,d)} + psi(n_v)
// where psi = 1 + phi + phi^2 + ... on n_{S(v,d)} and n_v = n ^ Ad_{v-dot} n^-.
// The two z' descriptions (kernel form and the z - phi(z) in Ad_{v-dot} z_T
// form) are both evaluated.  Any mismatch is a check_error: it would mean the
// closed formula and the definition disagree, which must surface as a test
// failure.  Requires v of minimal length in v W_T.
struct NormalizerReport {
  DoubleSubspace direct;
  DoubleSubspace formula;
  int z_prime_dim = 0;
  int g_phi_dim = 0;
  int psi_dim = 0;    // equals the length of v
};

NormalizerReport normalizer_in_diagonal(const LieAlgebraModel& model, const WeylGroup& wg,
                                        const BDTriple& t, const Mat<QExt>& v_rows,
                                        const WeylElement& v, const TorusElement& m);

// Intersection with the diagonal of the labeled subspace, again computed
// directly and through the closed formula
//   Ad_{(m, v-dot)} V' + (g^phi_{S(v,d)} + psi(n_v))_Delta,
//   V' = {(z, v^{-1} z) : z in z'_{S(v,d)}} ^ (V + graph(gamma_d | h_S)).
struct IntersectionReport {
  DoubleSubspace direct;
  DoubleSubspace formula;
  int v_prime_dim = 0;
};

IntersectionReport intersect_with_diagonal(const LieAlgebraModel& model, const WeylGroup& wg,
                                           const BDTriple& t, const Mat<QExt>& v_rows,
                                           const WeylElement& v, const TorusElement& m);

// Nilpotency certificate for phi: phi preserves z_{S(v,d)}, g_{S(v,d)} and
// n_{S(v,d)}, kills the bottom stratum of n_{S(v,d)}, lowers the remaining
// strata of positive roots one step at a time, and phi^k = 0 on n_{S(v,d)}
// with k at most the number of strata.  All of this is checked, not assumed;
// the report carries the numbers a caller wants to print.
struct PhiNilpotencyReport {
  int index = 0;             // least k with phi^k = 0 on n_{S(v,d)}, 0 when n is zero
  int strata_count = 0;      // number of nonempty Sigma_j
  std::vector<int> strata_sizes;
};

PhiNilpotencyReport phi_nilpotency(const LieAlgebraModel& model, const WeylGroup& wg,
                                   const BDTriple& t, const WeylElement& v,
                                   const TorusElement& m);

// Checker for the graded-triangularity fact used in the normalizer proof:
// if phi lowers the grading of V = V_0 + ... + V_k, Y meets im(phi) only at 0
// and U meets ker(phi) only at 0, then {u in U : u - phi(u) in Y} = 0.
// Hypotheses are tested first; when one fails the fact is reported as
// inapplicable rather than true or false.
struct LinalgFactReport {
  bool applicable = false;
  bool holds = false;
  std::string detail;
};

LinalgFactReport linalg_fact_check(const std::vector<Subspace<Rat>>& graded,
                                   const Subspace<Rat>& u_space, const Subspace<Rat>& y_space,
                                   const Mat<Rat>& phi);

// Lift of a rational matrix / subspace into the quadratic-extension ambient.
Mat<QExt> lift_mat(const Mat<Rat>& m);
std::vector<QExt> lift_vec(const std::vector<Rat>& v);

}  // namespace lagr
