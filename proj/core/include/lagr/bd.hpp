#pragma once

#include <string>
#include <vector>

#include "lagr/rootdata.hpp"
#include "lagr/weyl.hpp"

namespace lagr {

// A pair of subsets S, T of the simple roots together with a Killing-form
// isometry d : S -> T.  Subsets are kept sorted; d_img is aligned with S,
// so d(S[k]) = d_img[k].
struct BDTriple {
  std::vector<int> S;
  std::vector<int> T;
  std::vector<int> d_img;

  bool in_S(int simple) const;
  bool in_T(int simple) const;
  // image of a simple root index under d; the index must lie in S
  int image_of(int simple) const;
  // preimage under d; the index must lie in T
  int preimage_of(int simple) const;
  std::string str() const;

  bool operator==(const BDTriple& o) const {
    return S == o.S && T == o.T && d_img == o.d_img;
  }
};

// Validating constructor: checks index ranges, bijectivity, and that d
// preserves the Killing pairing of coroot representatives.
BDTriple make_triple(const RootSystem& rs, std::vector<int> S, std::vector<int> T,
                     std::vector<int> d_img);

// All pairing-preserving bijections S -> T, each encoded as an image list
// aligned with sorted S, in lexicographic image order.
std::vector<std::vector<int>> isometries(const RootSystem& rs, const std::vector<int>& S,
                                         const std::vector<int>& T);

// Every triple over every subset pair, ordered by (|S|, S, T, d) lexicographically.
// With nilpotent_only, keeps the triples whose d-orbits all leave S
// (equivalently s_of with v = e is empty).
std::vector<BDTriple> enumerate_triples(const RootSystem& rs, bool nilpotent_only = false);

bool is_nilpotent(const RootSystem& rs, const BDTriple& t);

// Image of a root with the given simple-basis coordinates under the linear
// extension of d.  The input must be supported on S; the output is a root
// supported on T.
std::vector<int> d_root_image(const RootSystem& rs, const BDTriple& t,
                              const std::vector<int>& coords);

// S(v,d): the largest subset of S stable under alpha -> v(d(alpha)), i.e.
// the simple roots whose whole forward orbit stays inside S.  Requires v
// minimal in its coset v W_T.
std::vector<int> s_of(const RootSystem& rs, const WeylGroup& wg, const BDTriple& t,
                      const WeylElement& v);

// One refinement step: given w, produce (S', T', d') with T' = S cap w(T),
// d' = w o d restricted to the preimage of T'.
BDTriple advance_triple(const RootSystem& rs, const WeylGroup& wg, const BDTriple& t,
                        const WeylElement& w);

// The w's admissible at a refinement step: minimal double-coset representatives
// for (W_S, W_T) inside the parabolic generated by prev_S, ordered by
// (length, word).
std::vector<WeylElement> legal_choices(const RootSystem& rs, const WeylGroup& wg,
                                       const std::vector<int>& prev_S, const BDTriple& t);

struct Quadruple {
  std::vector<int> S;
  std::vector<int> T;
  std::vector<int> d_img;
  WeylElement w;
};

struct QuadrupleSequence {
  std::vector<Quadruple> steps;  // indices 0..i0
  int i0 = 0;
  WeylElement v_inf;
  std::vector<int> s_inf;
};

// Run the refinement recursion with the supplied choices.  Choices beyond the
// stabilization point must be the identity; missing choices default to it.
// An illegal choice is reported together with the legal set at that step.
QuadrupleSequence run_sequence(const RootSystem& rs, const WeylGroup& wg, const BDTriple& t,
                               const std::vector<WeylElement>& choices);

// Invert the sequence -> v_inf bijection: the unique sequence whose product
// is v.  Requires v minimal in v W_T.
QuadrupleSequence sequence_for(const RootSystem& rs, const WeylGroup& wg, const BDTriple& t,
                               const WeylElement& v);

// Every legal sequence for the triple, in depth-first (length, word) choice order.
std::vector<QuadrupleSequence> all_sequences(const RootSystem& rs, const WeylGroup& wg,
                                             const BDTriple& t);

// Partition of the positive roots outside the span of S(v,d) by how many
// applications of v o d keep them inside the span of S.  Entry j lists the
// root indices whose chain leaves the span at step j exactly.
std::vector<std::vector<int>> sigma_strata(const RootSystem& rs, const WeylGroup& wg,
                                           const BDTriple& t, const WeylElement& v);

}  // namespace lagr
