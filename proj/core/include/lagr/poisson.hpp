#pragma once

#include <string>
#include <vector>

#include "lagr/strata.hpp"

namespace lagr {

// Rank of the standard Poisson structure along the orbit intersections that
// stratify the variety: the correction space attached to an orbit label, the
// general transversality count, and the closed forms it specializes to on
// conjugacy classes and double Bruhat cells.

// The Lagrangian correction space attached to a triple and a minimal coset
// representative v: pairs (z, v^{-1} z) with z in z_{S(v,d)} whose twisted
// and transported Cartan projections agree, plus the graph of the Cartan
// twist on h_S.  Always half-dimensional in h + h; that is asserted, not
// assumed.
struct XSpace {
  BDTriple triple;
  WeylElement v;
  Mat<Rat> basis;  // rows in h + h coordinates, reduced echelon form

  int dim() const { return basis.rows(); }
};

// Solves the defining linear system over the rationals.  Throws usage_error
// when v is not the minimal representative of its coset, check_error if the
// solution fails the Lagrangian invariant.
XSpace x_space(const RootSystem& rs, const WeylGroup& wg, const BDTriple& t,
               const WeylElement& v);

// dim of {x : w(x) = -x} in h.
long h_minus_dim(const WeylElement& w);

// dim of the intersection of the antidiagonal {(x, -x)} with (w, v1) X.
long rank_correction(const RootSystem& rs, const WeylElement& w, const WeylElement& v1,
                     const XSpace& x);

// Codimension count for the orbit of l under B x B^-: the pair Borel has
// dimension dim g + rank, minus the stabilizer solved directly on the model.
long borel_pair_orbit_dim(const LieAlgebraModel& model, const DoubleSubspace& l);

// Rank of the Poisson structure along the intersection of a G_Delta orbit
// with a (B x B^-) orbit inside their common (G x G)-orbit.  The two orbits
// meet transversally there, so the intersection dimension is pure arithmetic
// in the orbit dimensions; the rank subtracts the correction-space term.  A
// negative dimension or rank means the orbits cannot meet at all: the values
// are reported as computed with cell_empty set, never patched up.
struct PoissonRank {
  long rank = 0;
  long dim = 0;             // dim of the intersection
  long correction = 0;
  long dim_orbit = 0;       // dim of the G_Delta orbit
  long dim_borel_orbit = 0;  // dim of the (B x B^-) orbit
  bool cell_empty = false;
};

// o names the G_Delta orbit (kind GDelta), o_prime the (B x B^-) orbit (kind
// BB).  Both must carry the same triple and the same Lagrangian V, else
// usage_error: the theorem lives inside one (G x G)-orbit.
PoissonRank pi0_rank(const LieAlgebraModel& model, const WeylGroup& wg, const OrbitLabel& o,
                     const OrbitLabel& o_prime);

// Rank along the cell of w for a conjugacy class of the given dimension:
// dim C - l(w) - dim h^{-w}.  A negative value only says the class misses
// the cell, flagged rather than clamped.
struct ConjugacyRank {
  long rank = 0;
  bool cell_empty = false;
};

ConjugacyRank conjugacy_rank(long dim_class, const WeylElement& w);

// Closed form on the shifted double Bruhat cell attached to (u, v, w):
// dim = l(u) + l(v) - l(w), rank = dim - dim h^{-u^{-1} v w^{-1}}.  Whether
// the cell is actually nonempty is a separate question; see nonempty_check.
struct DoubleBruhatRank {
  long rank = 0;
  long dim = 0;
};

DoubleBruhatRank double_bruhat_rank(const WeylGroup& wg, const WeylElement& u,
                                    const WeylElement& v, const WeylElement& w);

// One-sided randomized certificate that the shifted cell
// (B u B) ^ (B^- v B^- w^{-1}) is nonempty.  Points are sampled in the
// simply-connected group over a prime field, membership is decided by exact
// Bruhat pivot patterns, and any witness certifies the cell.  No witness
// after the sample budget means unknown, never "empty".
// Only type A factors are sampled; other types return unknown outright.
// Throws cap_error above rank 3.
enum class CellStatus { CertifiedNonempty, Unknown };

CellStatus nonempty_check(const RootSystem& rs, const WeylGroup& wg, const WeylElement& u,
                          const WeylElement& v, const WeylElement& w, Rng& rng,
                          int samples = 256);

// One line of the rank table over the full (u, v, w) grid.  conditional
// marks cells whose nonemptiness the certificate could not settle.
struct RankRow {
  WeylElement u, v, w;
  long dim = 0;
  long rank = 0;
  long correction = 0;
  bool conditional = false;
};

// The grid sweep, parallel over cells, each cell seeded from (seed, index)
// so the output is byte-stable for a fixed seed regardless of thread count.
std::vector<RankRow> rank_table(const WeylGroup& wg, std::uint64_t seed, int samples = 256);

// CSV rendering with columns u,v,w,dim,rank,correction,nonempty.
std::string rank_table_csv(const WeylGroup& wg, std::uint64_t seed, int samples = 256);

}  // namespace lagr
