#pragma once

#include <utility>
#include <vector>

#include "lagr/rootdata.hpp"

namespace lagr {

// Weyl group element. The signed permutation of the positive roots is the
// canonical form (equality, hashing, descent tests all read it); the matrix
// gives the action on h in the H_{alpha_i} basis, which coincides with the
// action on root coordinates. word is the lex-least reduced word.
struct WeylElement {
  std::vector<int> perm;  // image of the i-th positive root: sign * (index + 1)
  Mat<Rat> hmat;
  std::vector<int> word;

  int length() const { return int(word.size()); }
  bool is_identity() const { return word.empty(); }

  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.perm == b.perm; }
  friend bool operator!=(const WeylElement& a, const WeylElement& b) { return !(a == b); }

  std::string word_str() const;  // "e" or "s1s2..."
};

class WeylGroup {
 public:
  // Enumerates the whole group (breadth-first over right multiplication).
  // element_cap guards against accidentally huge types.
  explicit WeylGroup(const RootSystem& rs, long element_cap = 1000000);

  const RootSystem& root_system() const { return *rs_; }

  // All elements ordered by (length, lexicographic word).
  const std::vector<WeylElement>& elements() const { return elements_; }

  WeylElement identity() const;
  WeylElement simple(int i) const;
  // Composition: product(a, b) applied to x is a(b(x)).
  WeylElement product(const WeylElement& a, const WeylElement& b) const;
  WeylElement inverse(const WeylElement& a) const;
  WeylElement from_word(const std::vector<int>& word) const;
  WeylElement parse(const std::string& text) const;  // "e" or "s1s2s1"
  WeylElement longest() const;

  std::vector<int> act_root(const WeylElement& w, const std::vector<int>& beta) const;

  // True when w(alpha_t) is a positive root for every t in T.
  bool right_minimal(const WeylElement& w, const std::vector<int>& T) const;
  // True when w^{-1}(alpha_s) is positive for every s in S.
  bool left_minimal(const WeylElement& w, const std::vector<int>& S) const;

  // Minimal length coset representatives W^T, ordered by (length, word).
  std::vector<WeylElement> min_coset_reps(const std::vector<int>& T) const;

  // Minimal length double coset representatives ^S W^T, same order.
  std::vector<WeylElement> min_double_coset_reps(const std::vector<int>& S,
                                                 const std::vector<int>& T) const;

  // Elements of the standard parabolic subgroup W_S, ordered by (length, word).
  std::vector<WeylElement> parabolic(const std::vector<int>& S) const;

  // v in W^T splits uniquely as u * w with w in ^S W^T minimal in its double
  // coset, u in W_S with no right descent in S cap w(T), and lengths adding.
  std::pair<WeylElement, WeylElement> uw_decompose(const WeylElement& v, const std::vector<int>& S,
                                                   const std::vector<int>& T) const;

  // dim of the (-1)-eigenspace of w on h.
  int h_minus_dim(const WeylElement& w) const;

 private:
  WeylElement make(std::vector<int> perm) const;
  std::vector<int> compose_perm(const std::vector<int>& a, const std::vector<int>& b) const;
  std::vector<int> canonical_word(std::vector<int> perm) const;

  const RootSystem* rs_;
  std::vector<std::vector<int>> simple_perms_;
  std::vector<WeylElement> elements_;
};

}  // namespace lagr
