#pragma once

#include <map>
#include <string>
#include <vector>

#include "lagr/matrix.hpp"
#include "lagr/rat.hpp"
#include "lagr/subspace.hpp"

namespace lagr {

struct SimpleFactor {
  char series = 0;  // 'A'..'G'
  int rank = 0;
};

struct TypeSpec {
  std::vector<SimpleFactor> factors;

  int total_rank() const {
    int r = 0;
    for (const auto& f : factors) r += f.rank;
    return r;
  }
  std::string str() const;
};

// Grammar: SIMPLE := [A-G][1-9][0-9]*, SPEC := SIMPLE ('x' SIMPLE)*.
// Rejects out-of-range members (B1, C2, D3, E9, F5, G3, ...) so every valid
// spec names exactly one isomorphism class. Errors carry the byte position.
TypeSpec parse_type_spec(const std::string& text);

// Semisimple root system with exact Killing-form data on the Cartan h.
//
// Roots are integer coordinate vectors in the simple-root basis. h is
// identified with Q^rank in the basis {H_{alpha_i}}, where H_alpha is the
// Killing dual of alpha. All operators on h are rank x rank matrices in
// that basis (column convention).
struct RootSystem {
  TypeSpec type;
  int rank = 0;
  Mat<Rat> cartan;                          // cartan(i,j) = <alpha_i, alpha_j^vee>
  std::vector<std::vector<int>> pos_roots;  // height order, simple roots first
  Mat<Rat> coroot_gram;                     // kappa(h_i, h_j) summed over all roots
  Mat<Rat> killing_gram;                    // K(i,j) = <<alpha_i, alpha_j>>
  Mat<Rat> dual_change;                     // row i: H_{alpha_i} in the coroot basis

  int n_pos() const { return int(pos_roots.size()); }
  int dim_g() const { return rank + 2 * n_pos(); }

  // Index into pos_roots, or -1 when beta is not a positive root.
  int root_index(const std::vector<int>& beta) const;
  bool is_root(const std::vector<int>& beta) const;

  int height(const std::vector<int>& beta) const;

  // Cartan pairing <beta, alpha_j^vee> for beta given in root coordinates.
  long pairing(const std::vector<int>& beta, int j) const;

  std::vector<int> reflect_simple(int j, const std::vector<int>& beta) const;

  // <<beta, gamma>> for vectors in root coordinates (rational combinations allowed).
  Rat killing(const std::vector<Rat>& beta, const std::vector<Rat>& gamma) const;
  Rat killing_roots(const std::vector<int>& beta, const std::vector<int>& gamma) const;

 private:
  std::map<std::vector<int>, int> index_;
  friend RootSystem build_root_system(const TypeSpec&, int);
};

RootSystem build_root_system(const TypeSpec& type, int rank_cap = 8);
RootSystem build_root_system(const std::string& spec, int rank_cap = 8);

// Order of the Weyl group, exact.
Int weyl_order(const TypeSpec& type);

// Cartan-level data attached to a subset S of the simple roots:
// h_S = span{H_alpha : alpha in S}, its Killing complement
// z_S = {x in h : alpha(x) = 0 for alpha in S}, and the projection onto h_S
// along z_S. Subsets are strictly increasing lists of simple-root indices.
struct CartanSubspaceData {
  std::vector<int> S;
  Subspace<Rat> h_part;   // h_S
  Subspace<Rat> z_part;   // z_S
  Mat<Rat> proj;          // chi_S as an operator on h
};

CartanSubspaceData cartan_subspaces(const RootSystem& rs, const std::vector<int>& S);

// The Cartan piece of the Levi isomorphism attached to a Gram-preserving
// bijection d: S -> T, i.e. the map H_{alpha_s} -> H_{alpha_{d(s)}} extended
// by zero on the complementary coordinates span{H_alpha : alpha not in S}.
// For the extension by zero on z_S instead, compose with
// cartan_subspaces(rs, S).proj. d_img[k] is the image index of S[k]. Throws
// usage_error unless d preserves the Killing Gram entrywise.
Mat<Rat> levi_cartan_transport(const RootSystem& rs, const std::vector<int>& S,
                               const std::vector<int>& T, const std::vector<int>& d_img);

}  // namespace lagr
