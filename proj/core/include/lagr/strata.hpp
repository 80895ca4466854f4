#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lagr/bd.hpp"
#include "lagr/chevalley.hpp"
#include "lagr/rng.hpp"

namespace lagr {

// The census layer: orbits and strata of the variety of Lagrangian
// subalgebras of g + g, named by the classifying data that the lower layers
// construct and certify.

enum class OrbitKind {
  GG,        // (G x G)-orbit: triple plus a Lagrangian V in z_S + z_T
  BB,        // (B x B^-)-orbit: triple, V, and a pair (w, v)
  GDelta,    // G_Delta-orbit: triple, V, coset representative v, torus part m
  Stratum,   // all GG-orbits of a triple with a fixed parity
  Component  // a stratum whose closure is maximal
};

// A canonical orbit name.  Fields beyond the triple are meaningful only for
// the kinds listed above; v_rows spans V in h + h coordinates and is kept in
// reduced echelon form, so equal labels compare equal field by field.  For
// GDelta labels the torus part is the representative chosen by
// gdelta_orbit_reps, one per equivalence class.
struct OrbitLabel {
  OrbitKind kind = OrbitKind::Stratum;
  BDTriple triple;
  Mat<QExt> v_rows;
  int eps = 0;
  WeylElement w;   // BB only
  WeylElement v;   // BB and GDelta
  TorusElement m;  // GDelta only

  std::string key() const;
};

// dim g - dim z_S: the dimension of any (G x G)-orbit attached to the triple.
long orbit_dim(const RootSystem& rs, const BDTriple& t);

// Dimension of the union of those orbits over one component of the Lagrangian
// Grassmannian of z_S + z_T: n + z(z-3)/2, which the implementation also
// recomputes as orbit_dim plus the Grassmannian component dimension.
long stratum_dim(const RootSystem& rs, const BDTriple& t);

// Validated GG label: V must be a Lagrangian subspace of z_S + z_T, handed in
// as rows in h + h coordinates (usage_error otherwise).  Parity is not filled
// in; eps_of computes it on demand.
OrbitLabel gg_label(const RootSystem& rs, const BDTriple& t, const Mat<QExt>& v_rows);

// The orbits in the closure of a GG orbit: one for every subset S1 of S, with
// the triple restricted to S1 and V enlarged by the graph of the twist on
// h_S ^ z_{S1}.  The input orbit itself comes first; every produced V is
// re-validated.  Only GG labels degenerate this way (usage_error otherwise).
std::vector<OrbitLabel> orbit_closure(const RootSystem& rs, const OrbitLabel& label);

// Which of the two components of the ambient variety the subalgebra
// l_{S,T,d,V,v,m} lands in: the parity of dim g minus the dimension of its
// intersection with the diagonal.  The intersection comes from the structural
// model; at v = e, m = e the direct solve is checked against the closed
// formula before use.  Throws cap_error through the model for large ranks.
int eps_of(const LieAlgebraModel& model, const WeylGroup& wg, const BDTriple& t,
           const Mat<QExt>& v_rows);
int eps_of(const LieAlgebraModel& model, const WeylGroup& wg, const BDTriple& t,
           const Mat<QExt>& v_rows, const WeylElement& v, const TorusElement& m);

// Canonical V witnesses spanning the realized parities of a triple: for
// z = dim z_S = 0 just the zero subspace; for z = 1 the two isotropic lines
// of the split binary form on z_S + z_T; for z >= 2 the graph of a Witt
// extension isometry z_S -> z_T and the same graph with one sign flipped on
// an orthogonal basis vector, which lie in different Grassmannian components.
std::vector<Mat<QExt>> parity_witnesses(const RootSystem& rs, const BDTriple& t);

// One census row: a triple with one realized parity, its dimensions, its
// status under the maximality rule, and the boundary triples reached by
// restricting d to proper subsets of S.
struct StratumEntry {
  BDTriple triple;
  int eps = 0;
  long orbit_dim = 0;
  long stratum_dim = 0;
  bool is_component = false;
  std::vector<BDTriple> boundary;
};

// Every realized (triple, parity) pair of the root system, sorted by
// (S, T, d, eps).  A stratum fails to be a component exactly when S misses a
// single simple root, some self-isometry d1 of the whole diagram restricts to
// d with T = d1(S), and the parity matches dim h - dim h^{d1} mod 2; those
// strata lie in the closure of the full-support stratum of d1.  The sweep
// over triples runs in parallel.
std::vector<StratumEntry> stratum_census(const LieAlgebraModel& model, const WeylGroup& wg);

struct ComponentEntry {
  OrbitLabel label;  // kind Component
  long dim = 0;
};

// The census rows that survive the maximality rule, as Component labels.
std::vector<ComponentEntry> irreducible_components(const LieAlgebraModel& model,
                                                   const WeylGroup& wg);

// stratum_census serialized as
// {type, triples:[{S,T,d,eps,orbitDim,stratumDim,isComponent,boundary:[...]}]}
// with two-space indentation; byte-identical across runs.
std::string census_json(const LieAlgebraModel& model, const WeylGroup& wg);

// All (w, v) pairs in W x W^T as BB labels, w over the whole group and v over
// the minimal coset representatives, in (length, word) order of each factor.
std::vector<OrbitLabel> bb_orbit_reps(const RootSystem& rs, const WeylGroup& wg,
                                      const BDTriple& t);

// GDelta labels for all v in W^T, with the torus parts {e} union torus_sample
// merged into equivalence classes: m and m' name the same orbit when m'/m
// lies in the subtorus cut out by the coset condition, tested on the
// character lattice.  The first representative of each class is kept, so the
// identity always labels its own class.
std::vector<OrbitLabel> gdelta_orbit_reps(const RootSystem& rs, const WeylGroup& wg,
                                          const BDTriple& t, const Mat<QExt>& v_rows,
                                          const std::vector<TorusElement>& torus_sample);

// Dimension and component count of the variety of Lagrangian subalgebras of
// g + h: every member is a Borel nilradical plus a Lagrangian subspace of
// h + h, so the variety fibers trivially over the flag variety and
// dim = #positive roots + r(r-1)/2 with exactly two components.
std::pair<long, int> lagr_gh_census(const RootSystem& rs);

// Five seeded torus elements with small positive entries, the default sample
// for gdelta_orbit_reps.
std::vector<TorusElement> default_torus_sample(int rank, Rng& rng);

}  // namespace lagr
