#include "lagr/bd.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "lagr/error.hpp"
#include "lagr/parallel.hpp"

namespace lagr {

namespace {

std::string subset_str(const std::vector<int>& s) {
  std::ostringstream os;
  os << '{';
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) os << ',';
    os << 'a' << (s[i] + 1);
  }
  os << '}';
  return os.str();
}

// all k-subsets of {0..n-1} in lexicographic order
std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i <= n - (k - depth); ++i) {
      cur[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

bool sorted_contains(const std::vector<int>& v, int x) {
  return std::binary_search(v.begin(), v.end(), x);
}

// is the coordinate support of beta contained in S?
bool supported_on(const std::vector<int>& beta, const std::vector<int>& S) {
  for (int j = 0; j < int(beta.size()); ++j)
    if (beta[j] != 0 && !sorted_contains(S, j)) return false;
  return true;
}

// degree of node i inside the sub-diagram on S
int subdiagram_degree(const RootSystem& rs, const std::vector<int>& S, int i) {
  int deg = 0;
  for (int j : S)
    if (j != i && rs.cartan(i, j) != Rat(0)) ++deg;
  return deg;
}

void require_coset_minimal(const WeylGroup& wg, const WeylElement& v, const std::vector<int>& T) {
  if (!wg.right_minimal(v, T))
    throw usage_error("v = " + v.word_str() + " is not minimal in its coset modulo " +
                      subset_str(T) + ": it sends a listed simple root negative");
}

std::string element_list_str(const std::vector<WeylElement>& els) {
  std::string out;
  for (size_t i = 0; i < els.size(); ++i) {
    if (i) out += ", ";
    out += els[i].word_str();
  }
  return out;
}

}  // namespace

bool BDTriple::in_S(int simple) const { return sorted_contains(S, simple); }
bool BDTriple::in_T(int simple) const { return sorted_contains(T, simple); }

int BDTriple::image_of(int simple) const {
  auto it = std::lower_bound(S.begin(), S.end(), simple);
  check(it != S.end() && *it == simple, "image_of: index not in S");
  return d_img[it - S.begin()];
}

int BDTriple::preimage_of(int simple) const {
  for (size_t k = 0; k < d_img.size(); ++k)
    if (d_img[k] == simple) return S[k];
  check(false, "preimage_of: index not in T");
  return -1;
}

std::string BDTriple::str() const {
  std::ostringstream os;
  os << "(S=" << subset_str(S) << ", T=" << subset_str(T) << ", d:";
  if (S.empty()) os << " -";
  for (size_t k = 0; k < S.size(); ++k) {
    if (k) os << ',';
    os << " a" << (S[k] + 1) << "->a" << (d_img[k] + 1);
  }
  os << ')';
  return os.str();
}

BDTriple make_triple(const RootSystem& rs, std::vector<int> S, std::vector<int> T,
                     std::vector<int> d_img) {
  if (!std::is_sorted(S.begin(), S.end()) || !std::is_sorted(T.begin(), T.end()))
    throw usage_error("triple subsets must be strictly increasing");
  if (S.size() != T.size() || S.size() != d_img.size())
    throw usage_error("triple needs |S| = |T| = |d|");
  for (int i : S)
    if (i < 0 || i >= rs.rank) throw usage_error("S index out of range");
  for (int i : T)
    if (i < 0 || i >= rs.rank) throw usage_error("T index out of range");
  std::vector<int> sorted_img = d_img;
  std::sort(sorted_img.begin(), sorted_img.end());
  if (sorted_img != T) throw usage_error("d must be a bijection onto T");
  for (size_t a = 0; a < S.size(); ++a)
    for (size_t b = 0; b < S.size(); ++b)
      if (rs.killing_gram(d_img[a], d_img[b]) != rs.killing_gram(S[a], S[b]))
        throw usage_error("d does not preserve the Killing pairing on " + subset_str(S));
  return BDTriple{std::move(S), std::move(T), std::move(d_img)};
}

std::vector<std::vector<int>> isometries(const RootSystem& rs, const std::vector<int>& S,
                                         const std::vector<int>& T) {
  std::vector<std::vector<int>> out;
  if (S.size() != T.size()) return out;
  if (S.empty()) return {std::vector<int>{}};

  // cheap pruning before trying every bijection: the multiset of
  // (sub-diagram degree, root length) must agree
  auto profile = [&](const std::vector<int>& sub) {
    std::vector<std::pair<int, Rat>> p;
    for (int i : sub) p.emplace_back(subdiagram_degree(rs, sub, i), rs.killing_gram(i, i));
    std::sort(p.begin(), p.end());
    return p;
  };
  if (profile(S) != profile(T)) return out;

  std::vector<int> img = T;  // ascending start gives lexicographic emission
  do {
    bool ok = true;
    for (size_t a = 0; a < S.size() && ok; ++a)
      for (size_t b = 0; b < S.size() && ok; ++b)
        ok = rs.killing_gram(img[a], img[b]) == rs.killing_gram(S[a], S[b]);
    if (ok) out.push_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

std::vector<BDTriple> enumerate_triples(const RootSystem& rs, bool nilpotent_only) {
  std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs;
  for (int k = 0; k <= rs.rank; ++k) {
    auto subs = combinations(rs.rank, k);
    for (const auto& s : subs)
      for (const auto& t : subs) pairs.emplace_back(s, t);
  }

  std::vector<std::vector<BDTriple>> buckets(pairs.size());
  parallel_for(pairs.size(), [&](size_t i) {
    const auto& [s, t] = pairs[i];
    for (auto& d : isometries(rs, s, t)) {
      BDTriple tr{s, t, std::move(d)};
      if (!nilpotent_only || is_nilpotent(rs, tr)) buckets[i].push_back(std::move(tr));
    }
  });

  std::vector<BDTriple> out;
  for (auto& b : buckets)
    for (auto& tr : b) out.push_back(std::move(tr));
  return out;
}

bool is_nilpotent(const RootSystem& rs, const BDTriple& t) {
  (void)rs;
  // shrink S under d alone; nilpotent means nothing survives
  std::vector<int> cur = t.S;
  for (int round = 0; round <= int(t.S.size()); ++round) {
    std::vector<int> next;
    for (int s : cur)
      if (sorted_contains(cur, t.image_of(s))) next.push_back(s);
    if (next == cur) return cur.empty();
    cur = std::move(next);
  }
  check(false, "d-shrinking failed to stabilize");
  return false;
}

std::vector<int> d_root_image(const RootSystem& rs, const BDTriple& t,
                              const std::vector<int>& coords) {
  std::vector<int> out(rs.rank, 0);
  for (int j = 0; j < rs.rank; ++j) {
    if (coords[j] == 0) continue;
    check(t.in_S(j), "d_root_image: root not supported on S");
    out[t.image_of(j)] = coords[j];
  }
  return out;
}

std::vector<int> s_of(const RootSystem& rs, const WeylGroup& wg, const BDTriple& t,
                      const WeylElement& v) {
  require_coset_minimal(wg, v, t.T);
  std::vector<int> cur = t.S;
  for (int round = 0; round <= int(t.S.size()); ++round) {
    std::vector<int> next;
    for (int s : cur) {
      std::vector<int> unit(rs.rank, 0);
      unit[s] = 1;
      std::vector<int> img = wg.act_root(v, d_root_image(rs, t, unit));
      // membership in cur as a simple root
      int hit = -1;
      for (int j = 0; j < rs.rank && hit < 0; ++j) {
        std::vector<int> cand(rs.rank, 0);
        cand[j] = 1;
        if (img == cand) hit = j;
      }
      if (hit >= 0 && sorted_contains(cur, hit)) next.push_back(s);
    }
    if (next == cur) return cur;
    cur = std::move(next);
  }
  check(false, "orbit shrinking failed to stabilize");
  return {};
}

BDTriple advance_triple(const RootSystem& rs, const WeylGroup& wg, const BDTriple& t,
                        const WeylElement& w) {
  // T' collects the d-then-w images that land back in S as simple roots
  std::vector<std::pair<int, int>> next_pairs;  // (source in S, target simple)
  for (size_t k = 0; k < t.S.size(); ++k) {
    std::vector<int> unit(rs.rank, 0);
    unit[t.d_img[k]] = 1;
    std::vector<int> img = wg.act_root(w, unit);
    int hit = -1;
    for (int j = 0; j < rs.rank && hit < 0; ++j) {
      std::vector<int> cand(rs.rank, 0);
      cand[j] = 1;
      if (img == cand) hit = j;
    }
    if (hit >= 0 && t.in_S(hit)) next_pairs.emplace_back(t.S[k], hit);
  }
  std::sort(next_pairs.begin(), next_pairs.end());
  std::vector<int> S2, T2, d2;
  for (auto& [src, dst] : next_pairs) {
    S2.push_back(src);
    d2.push_back(dst);
  }
  T2 = d2;
  std::sort(T2.begin(), T2.end());
  return make_triple(rs, std::move(S2), std::move(T2), std::move(d2));
}

std::vector<WeylElement> legal_choices(const RootSystem& rs, const WeylGroup& wg,
                                       const std::vector<int>& prev_S, const BDTriple& t) {
  (void)rs;
  std::vector<WeylElement> out;
  for (const auto& w : wg.parabolic(prev_S))
    if (wg.left_minimal(w, t.S) && wg.right_minimal(w, t.T)) out.push_back(w);
  std::sort(out.begin(), out.end(), [](const WeylElement& a, const WeylElement& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.word < b.word;
  });
  return out;
}

QuadrupleSequence run_sequence(const RootSystem& rs, const WeylGroup& wg, const BDTriple& t,
                               const std::vector<WeylElement>& choices) {
  QuadrupleSequence seq;
  std::vector<int> prev_S(rs.rank);
  for (int i = 0; i < rs.rank; ++i) prev_S[i] = i;

  BDTriple cur = make_triple(rs, t.S, t.T, t.d_img);
  WeylElement product = wg.identity();
  size_t ci = 0;

  for (int step = 0;; ++step) {
    check(step <= rs.rank + 1, "refinement failed to stabilize");
    std::vector<WeylElement> legal = legal_choices(rs, wg, prev_S, cur);
    WeylElement w = ci < choices.size() ? choices[ci++] : wg.identity();
    if (std::find(legal.begin(), legal.end(), w) == legal.end()) {
      std::ostringstream os;
      os << "illegal choice " << w.word_str() << " at step " << step
         << "; legal choices: " << element_list_str(legal);
      throw usage_error(os.str());
    }
    BDTriple next = advance_triple(rs, wg, cur, w);
    seq.steps.push_back(Quadruple{cur.S, cur.T, cur.d_img, w});
    product = wg.product(w, product);
    if (next.S == cur.S) {
      seq.i0 = int(seq.steps.size()) - 1;
      // after stabilization the double cosets are singletons, so any
      // remaining supplied choices can only be the identity
      for (; ci < choices.size(); ++ci)
        if (!choices[ci].is_identity())
          throw usage_error("illegal choice " + choices[ci].word_str() + " at step " +
                            std::to_string(ci) + "; legal choices: e");
      break;
    }
    prev_S = cur.S;
    cur = std::move(next);
  }

  seq.v_inf = product;
  check(wg.right_minimal(seq.v_inf, t.T), "sequence product escaped the minimal coset set");
  seq.s_inf = s_of(rs, wg, t, seq.v_inf);
  check(seq.s_inf == cur.S, "stabilized subset disagrees with the orbit computation");
  return seq;
}

QuadrupleSequence sequence_for(const RootSystem& rs, const WeylGroup& wg, const BDTriple& t,
                               const WeylElement& v) {
  require_coset_minimal(wg, v, t.T);
  std::vector<WeylElement> choices;
  BDTriple cur = make_triple(rs, t.S, t.T, t.d_img);
  WeylElement rem = v;
  for (int step = 0;; ++step) {
    check(step <= rs.rank + 1, "peeling failed to stabilize");
    auto [u, w] = wg.uw_decompose(rem, cur.S, cur.T);
    choices.push_back(w);
    BDTriple next = advance_triple(rs, wg, cur, w);
    if (next.S == cur.S) {
      check(u.is_identity(), "residual factor at stabilization should be trivial");
      break;
    }
    cur = std::move(next);
    rem = u;
  }
  QuadrupleSequence seq = run_sequence(rs, wg, t, choices);
  check(seq.v_inf == v, "sequence reconstruction missed its target");
  return seq;
}

std::vector<QuadrupleSequence> all_sequences(const RootSystem& rs, const WeylGroup& wg,
                                             const BDTriple& t) {
  std::vector<QuadrupleSequence> out;
  std::vector<int> gamma(rs.rank);
  for (int i = 0; i < rs.rank; ++i) gamma[i] = i;

  std::function<void(const std::vector<int>&, const BDTriple&, std::vector<WeylElement>&)> rec =
      [&](const std::vector<int>& prev_S, const BDTriple& cur, std::vector<WeylElement>& acc) {
        for (const auto& w : legal_choices(rs, wg, prev_S, cur)) {
          BDTriple next = advance_triple(rs, wg, cur, w);
          acc.push_back(w);
          if (next.S == cur.S)
            out.push_back(run_sequence(rs, wg, t, acc));
          else
            rec(cur.S, next, acc);
          acc.pop_back();
        }
      };
  std::vector<WeylElement> acc;
  rec(gamma, t, acc);
  return out;
}

std::vector<std::vector<int>> sigma_strata(const RootSystem& rs, const WeylGroup& wg,
                                           const BDTriple& t, const WeylElement& v) {
  require_coset_minimal(wg, v, t.T);
  std::vector<int> svd = s_of(rs, wg, t, v);
  std::vector<std::vector<int>> strata;
  for (int p = 0; p < rs.n_pos(); ++p) {
    const std::vector<int>& beta = rs.pos_roots[p];
    if (supported_on(beta, svd)) continue;
    std::vector<int> cur = beta;
    int j = 0;
    while (supported_on(cur, t.S)) {
      cur = wg.act_root(v, d_root_image(rs, t, cur));
      check(rs.root_index(cur) >= 0, "chain left the positive roots");
      ++j;
      check(j <= rs.n_pos(), "chain failed to exit the span of S");
    }
    if (int(strata.size()) <= j) strata.resize(j + 1);
    strata[j].push_back(p);
  }
  return strata;
}

}  // namespace lagr
