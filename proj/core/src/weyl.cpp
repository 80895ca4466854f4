#include "lagr/weyl.hpp"

#include <algorithm>
#include <map>

namespace lagr {

std::string WeylElement::word_str() const {
  if (word.empty()) return "e";
  std::string out;
  for (int i : word) out += "s" + std::to_string(i + 1);
  return out;
}

namespace {

int signed_length(const std::vector<int>& perm) {
  int n = 0;
  for (int v : perm)
    if (v < 0) ++n;
  return n;
}

std::vector<int> invert_perm(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (int i = 0; i < int(perm.size()); ++i) {
    int img = perm[i];
    if (img > 0)
      inv[img - 1] = i + 1;
    else
      inv[-img - 1] = -(i + 1);
  }
  return inv;
}

bool word_less(const WeylElement& a, const WeylElement& b) {
  if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
  return a.word < b.word;
}

}  // namespace

WeylGroup::WeylGroup(const RootSystem& rs, long element_cap) : rs_(&rs) {
  Int order = weyl_order(rs.type);
  check(order.fits_slong_p(), "Weyl group order does not fit in a long");
  if (order.get_si() > element_cap)
    throw cap_error("Weyl group has " + order.get_str() + " elements, cap is " + std::to_string(element_cap));

  // Signed permutations of the simple reflections.
  int np = rs.n_pos();
  for (int j = 0; j < rs.rank; ++j) {
    std::vector<int> p(np);
    for (int i = 0; i < np; ++i) {
      std::vector<int> img = rs.reflect_simple(j, rs.pos_roots[i]);
      bool neg = false;
      for (int c : img)
        if (c < 0) neg = true;
      if (neg)
        for (int& c : img) c = -c;
      int idx = rs.root_index(img);
      check(idx >= 0, "reflection left the root system");
      p[i] = neg ? -(idx + 1) : idx + 1;
    }
    simple_perms_.push_back(std::move(p));
  }

  // Closure under right multiplication by the generators.
  std::vector<int> ident(np);
  for (int i = 0; i < np; ++i) ident[i] = i + 1;
  std::map<std::vector<int>, bool> seen;
  std::vector<std::vector<int>> all{ident};
  seen[ident] = true;
  for (size_t head = 0; head < all.size(); ++head) {
    std::vector<int> cur = all[head];
    for (int j = 0; j < rs.rank; ++j) {
      std::vector<int> q = compose_perm(cur, simple_perms_[j]);
      if (seen.emplace(q, true).second) all.push_back(std::move(q));
    }
  }
  check(long(all.size()) == order.get_si(), "Weyl enumeration found the wrong number of elements");

  elements_.reserve(all.size());
  for (auto& p : all) elements_.push_back(make(std::move(p)));
  std::sort(elements_.begin(), elements_.end(), word_less);
}

std::vector<int> WeylGroup::compose_perm(const std::vector<int>& a, const std::vector<int>& b) const {
  std::vector<int> c(b.size());
  for (int i = 0; i < int(b.size()); ++i) {
    int mid = b[i];
    int sign = mid > 0 ? 1 : -1;
    int idx = mid > 0 ? mid - 1 : -mid - 1;
    c[i] = sign * a[idx];
  }
  return c;
}

std::vector<int> WeylGroup::canonical_word(std::vector<int> perm) const {
  // Greedy smallest left descent: i is a left descent of w exactly when
  // w^{-1}(alpha_i) is negative, and the lex-least reduced word starts with
  // the least such i.
  std::vector<int> word;
  int remaining = signed_length(perm);
  while (remaining > 0) {
    std::vector<int> inv = invert_perm(perm);
    int pick = -1;
    for (int i = 0; i < rs_->rank; ++i)
      if (inv[i] < 0) {
        pick = i;
        break;
      }
    check(pick >= 0, "nonidentity element with no left descent");
    word.push_back(pick);
    perm = compose_perm(simple_perms_[pick], perm);
    int now = signed_length(perm);
    check(now == remaining - 1, "left descent did not shorten the element");
    remaining = now;
  }
  return word;
}

WeylElement WeylGroup::make(std::vector<int> perm) const {
  WeylElement w;
  w.word = canonical_word(perm);
  w.perm = std::move(perm);
  check(signed_length(w.perm) == int(w.word.size()), "length disagrees with inversion count");
  // Action on h: column i is w(alpha_i) in root coordinates.
  w.hmat = Mat<Rat>(rs_->rank, rs_->rank);
  for (int i = 0; i < rs_->rank; ++i) {
    int img = w.perm[i];  // simple roots are the first rank entries of pos_roots
    int sign = img > 0 ? 1 : -1;
    const std::vector<int>& coords = rs_->pos_roots[img > 0 ? img - 1 : -img - 1];
    for (int j = 0; j < rs_->rank; ++j) w.hmat(j, i) = rat(sign * coords[j]);
  }
  return w;
}

WeylElement WeylGroup::identity() const {
  std::vector<int> p(rs_->n_pos());
  for (int i = 0; i < rs_->n_pos(); ++i) p[i] = i + 1;
  return make(std::move(p));
}

WeylElement WeylGroup::simple(int i) const {
  check(i >= 0 && i < rs_->rank, "simple reflection index out of range");
  return make(simple_perms_[i]);
}

WeylElement WeylGroup::product(const WeylElement& a, const WeylElement& b) const {
  return make(compose_perm(a.perm, b.perm));
}

WeylElement WeylGroup::inverse(const WeylElement& a) const { return make(invert_perm(a.perm)); }

WeylElement WeylGroup::from_word(const std::vector<int>& word) const {
  WeylElement w = identity();
  for (int i : word) w = product(w, simple(i));
  return w;
}

WeylElement WeylGroup::parse(const std::string& text) const {
  if (text == "e" || text == "1" || text.empty()) return identity();
  std::vector<int> word;
  size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] != 's' || pos + 1 >= text.size() || !isdigit(text[pos + 1]))
      throw usage_error("bad Weyl word \"" + text + "\" at position " + std::to_string(pos));
    size_t end = pos + 1;
    while (end < text.size() && isdigit(text[end])) ++end;
    int idx = std::stoi(text.substr(pos + 1, end - pos - 1)) - 1;
    if (idx < 0 || idx >= rs_->rank)
      throw usage_error("generator index out of range in \"" + text + "\"");
    word.push_back(idx);
    pos = end;
  }
  return from_word(word);
}

WeylElement WeylGroup::longest() const {
  const WeylElement* best = nullptr;
  for (const auto& w : elements_)
    if (!best || w.length() > best->length()) best = &w;
  check(best != nullptr, "empty group");
  return *best;
}

std::vector<int> WeylGroup::act_root(const WeylElement& w, const std::vector<int>& beta) const {
  std::vector<int> out(rs_->rank, 0);
  for (int j = 0; j < rs_->rank; ++j) {
    if (beta[j] == 0) continue;
    for (int i = 0; i < rs_->rank; ++i) out[i] += beta[j] * int(to_long(w.hmat(i, j)));
  }
  return out;
}

bool WeylGroup::right_minimal(const WeylElement& w, const std::vector<int>& T) const {
  for (int t : T)
    if (w.perm[t] < 0) return false;  // simple roots head the positive-root list
  return true;
}

bool WeylGroup::left_minimal(const WeylElement& w, const std::vector<int>& S) const {
  std::vector<int> inv = invert_perm(w.perm);
  for (int s : S)
    if (inv[s] < 0) return false;
  return true;
}

std::vector<WeylElement> WeylGroup::min_coset_reps(const std::vector<int>& T) const {
  std::vector<WeylElement> out;
  for (const auto& w : elements_)
    if (right_minimal(w, T)) out.push_back(w);
  return out;  // elements_ is already (length, word) sorted
}

std::vector<WeylElement> WeylGroup::min_double_coset_reps(const std::vector<int>& S,
                                                          const std::vector<int>& T) const {
  std::vector<WeylElement> out;
  for (const auto& w : elements_)
    if (right_minimal(w, T) && left_minimal(w, S)) out.push_back(w);
  return out;
}

std::vector<WeylElement> WeylGroup::parabolic(const std::vector<int>& S) const {
  // Breadth-first inside the parabolic; cheaper than filtering elements_ by
  // "word uses only S" (which canonical words do satisfy, but proving that
  // here is unnecessary).
  std::vector<WeylElement> all{identity()};
  std::map<std::vector<int>, bool> seen;
  seen[all[0].perm] = true;
  for (size_t head = 0; head < all.size(); ++head) {
    WeylElement cur = all[head];
    for (int j : S) {
      WeylElement nxt = product(cur, simple(j));
      if (seen.emplace(nxt.perm, true).second) all.push_back(std::move(nxt));
    }
  }
  std::sort(all.begin(), all.end(), word_less);
  return all;
}

std::pair<WeylElement, WeylElement> WeylGroup::uw_decompose(const WeylElement& v,
                                                            const std::vector<int>& S,
                                                            const std::vector<int>& T) const {
  if (!right_minimal(v, T)) throw usage_error("uw_decompose: v is not minimal in v W_T");
  WeylElement u = identity();
  WeylElement w = v;
  for (;;) {
    std::vector<int> inv = invert_perm(w.perm);
    int pick = -1;
    for (int s : S)
      if (inv[s] < 0) {
        pick = s;
        break;
      }
    if (pick < 0) break;
    u = product(u, simple(pick));
    w = product(simple(pick), w);
  }
  check(u.length() + w.length() == v.length(), "uw_decompose: lengths do not add");
  check(left_minimal(w, S) && right_minimal(w, T), "uw_decompose: w is not the double coset minimum");
  check(product(u, w) == v, "uw_decompose: product mismatch");
  // u must avoid right descents in S cap w(T).
  for (int t : T) {
    int img = w.perm[t];
    if (img < 0) continue;
    const std::vector<int>& coords = rs_->pos_roots[img - 1];
    int s = -1;
    if (rs_->height(coords) == 1)
      for (int j = 0; j < rs_->rank; ++j)
        if (coords[j] == 1) s = j;
    if (s < 0 || std::find(S.begin(), S.end(), s) == S.end()) continue;
    check(u.perm[s] > 0, "uw_decompose: u has a right descent in S cap w(T)");
  }
  return {u, w};
}

int WeylGroup::h_minus_dim(const WeylElement& w) const {
  Mat<Rat> m = w.hmat + Mat<Rat>::identity(rs_->rank);
  return rs_->rank - rank_of(m);
}

}  // namespace lagr
