#include "lagr/rootdata.hpp"

#include <algorithm>
#include <set>

namespace lagr {

std::string TypeSpec::str() const {
  std::string out;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (i) out += 'x';
    out += factors[i].series;
    out += std::to_string(factors[i].rank);
  }
  return out;
}

namespace {

[[noreturn]] void parse_fail(const std::string& text, size_t pos, const std::string& why) {
  throw usage_error("bad type spec \"" + text + "\" at position " + std::to_string(pos) + ": " + why);
}

bool series_admits(char series, int rank) {
  switch (series) {
    case 'A': return rank >= 1;
    case 'B': return rank >= 2;
    case 'C': return rank >= 3;
    case 'D': return rank >= 4;
    case 'E': return rank >= 6 && rank <= 8;
    case 'F': return rank == 4;
    case 'G': return rank == 2;
    default: return false;
  }
}

}  // namespace

TypeSpec parse_type_spec(const std::string& text) {
  TypeSpec spec;
  size_t pos = 0;
  if (text.empty()) parse_fail(text, 0, "empty spec");
  for (;;) {
    if (pos >= text.size()) parse_fail(text, pos, "expected a simple type");
    char series = text[pos];
    if (series < 'A' || series > 'G') parse_fail(text, pos, "expected a series letter A..G");
    size_t digits = pos + 1;
    if (digits >= text.size() || text[digits] < '1' || text[digits] > '9')
      parse_fail(text, pos + 1, "expected a rank starting with 1..9");
    size_t end = digits;
    while (end < text.size() && text[end] >= '0' && text[end] <= '9') ++end;
    if (end - digits > 3) parse_fail(text, digits, "rank absurdly large");
    int rank = std::stoi(text.substr(digits, end - digits));
    if (!series_admits(series, rank))
      parse_fail(text, pos, std::string(1, series) + std::to_string(rank) + " is not a simple type");
    spec.factors.push_back({series, rank});
    if (end == text.size()) break;
    if (text[end] != 'x') parse_fail(text, end, "expected 'x' between factors");
    pos = end + 1;
  }
  return spec;
}

namespace {

// Cartan matrix of one simple factor, Bourbaki numbering.
Mat<Rat> simple_cartan(char series, int n) {
  Mat<Rat> a(n, n);
  auto chain = [&](int i, int j) {
    a(i, j) = rat(-1);
    a(j, i) = rat(-1);
  };
  for (int i = 0; i < n; ++i) a(i, i) = rat(2);
  switch (series) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
      break;
    case 'B':
      for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
      a(n - 2, n - 1) = rat(-2);  // short last root
      break;
    case 'C':
      for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
      a(n - 1, n - 2) = rat(-2);  // long last root
      break;
    case 'D':
      for (int i = 0; i + 1 < n - 1; ++i) chain(i, i + 1);
      chain(n - 3, n - 1);
      break;
    case 'E':
      // nodes 1,3,4,5,6(,7,8) form a chain; node 2 hangs off node 4
      chain(0, 2);
      for (int i = 2; i + 1 < n; ++i) chain(i, i + 1);
      chain(1, 3);
      break;
    case 'F':
      chain(0, 1);
      chain(1, 2);
      chain(2, 3);
      a(1, 2) = rat(-2);
      break;
    case 'G':
      chain(0, 1);
      a(1, 0) = rat(-3);  // first root short
      break;
    default:
      throw usage_error("unknown series");
  }
  return a;
}

size_t expected_pos_roots(char series, int n) {
  switch (series) {
    case 'A': return size_t(n) * (n + 1) / 2;
    case 'B':
    case 'C': return size_t(n) * n;
    case 'D': return size_t(n) * (n - 1);
    case 'E': return n == 6 ? 36 : (n == 7 ? 63 : 120);
    case 'F': return 24;
    case 'G': return 6;
    default: return 0;
  }
}

}  // namespace

int RootSystem::root_index(const std::vector<int>& beta) const {
  auto it = index_.find(beta);
  return it == index_.end() ? -1 : it->second;
}

bool RootSystem::is_root(const std::vector<int>& beta) const {
  if (root_index(beta) >= 0) return true;
  std::vector<int> neg(beta);
  for (int& c : neg) c = -c;
  return root_index(neg) >= 0;
}

int RootSystem::height(const std::vector<int>& beta) const {
  int h = 0;
  for (int c : beta) h += c;
  return h;
}

long RootSystem::pairing(const std::vector<int>& beta, int j) const {
  Rat s(0);
  for (int k = 0; k < rank; ++k)
    if (beta[k] != 0) s += rat(beta[k]) * cartan(k, j);
  return to_long(s);
}

std::vector<int> RootSystem::reflect_simple(int j, const std::vector<int>& beta) const {
  std::vector<int> out = beta;
  out[j] -= int(pairing(beta, j));
  return out;
}

Rat RootSystem::killing(const std::vector<Rat>& beta, const std::vector<Rat>& gamma) const {
  Rat s(0);
  for (int i = 0; i < rank; ++i) {
    if (beta[i] == 0) continue;
    for (int j = 0; j < rank; ++j)
      if (gamma[j] != 0) s += beta[i] * killing_gram(i, j) * gamma[j];
  }
  return s;
}

Rat RootSystem::killing_roots(const std::vector<int>& beta, const std::vector<int>& gamma) const {
  std::vector<Rat> b(rank), g(rank);
  for (int i = 0; i < rank; ++i) {
    b[i] = rat(beta[i]);
    g[i] = rat(gamma[i]);
  }
  return killing(b, g);
}

RootSystem build_root_system(const TypeSpec& type, int rank_cap) {
  RootSystem rs;
  rs.type = type;
  rs.rank = type.total_rank();
  if (rs.rank > rank_cap)
    throw cap_error("total rank " + std::to_string(rs.rank) + " exceeds cap " + std::to_string(rank_cap));

  // Block-diagonal Cartan matrix.
  rs.cartan = Mat<Rat>(rs.rank, rs.rank);
  {
    int off = 0;
    for (const auto& f : type.factors) {
      Mat<Rat> blk = simple_cartan(f.series, f.rank);
      for (int i = 0; i < f.rank; ++i)
        for (int j = 0; j < f.rank; ++j) rs.cartan(off + i, off + j) = blk(i, j);
      off += f.rank;
    }
  }

  // Positive roots: close the simple roots under all simple reflections.
  // Every root is W-conjugate to a simple root, so this reaches everything.
  {
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> queue;
    for (int i = 0; i < rs.rank; ++i) {
      std::vector<int> e(rs.rank, 0);
      e[i] = 1;
      seen.insert(e);
      queue.push_back(e);
    }
    while (!queue.empty()) {
      std::vector<int> beta = queue.back();
      queue.pop_back();
      for (int j = 0; j < rs.rank; ++j) {
        Rat p(0);
        for (int k = 0; k < rs.rank; ++k)
          if (beta[k] != 0) p += rat(beta[k]) * rs.cartan(k, j);
        std::vector<int> img = beta;
        img[j] -= int(to_long(p));
        if (seen.insert(img).second) queue.push_back(img);
      }
    }
    for (const auto& beta : seen) {
      bool pos = true;
      for (int c : beta)
        if (c < 0) pos = false;
      if (pos) rs.pos_roots.push_back(beta);
    }
    std::sort(rs.pos_roots.begin(), rs.pos_roots.end(), [&](const auto& x, const auto& y) {
      int hx = rs.height(x), hy = rs.height(y);
      if (hx != hy) return hx < hy;
      return x > y;  // alpha_1 before alpha_2 within a height level
    });
    size_t expect = 0;
    for (const auto& f : type.factors) expect += expected_pos_roots(f.series, f.rank);
    check(rs.pos_roots.size() == expect, "positive root count mismatch for " + type.str());
    for (int i = 0; i < int(rs.pos_roots.size()); ++i) rs.index_[rs.pos_roots[i]] = i;
  }

  // Killing form on coroots: kappa(h_j, h_l) = sum over all roots beta of
  // beta(h_j) beta(h_l); a root and its negative contribute equally.
  rs.coroot_gram = Mat<Rat>(rs.rank, rs.rank);
  for (const auto& beta : rs.pos_roots) {
    std::vector<long> vals(rs.rank);
    for (int j = 0; j < rs.rank; ++j) vals[j] = rs.pairing(beta, j);
    for (int j = 0; j < rs.rank; ++j)
      for (int l = 0; l < rs.rank; ++l) rs.coroot_gram(j, l) += rat(2 * vals[j] * vals[l]);
  }

  // Change to the Killing-dual basis: H_{alpha_i} = sum_j P(i,j) h_j with
  // P = cartan * coroot_gram^{-1}, and then K = cartan * P^T.
  auto inv = inverse_of(rs.coroot_gram);
  check(inv.has_value(), "coroot Gram is singular");
  rs.dual_change = rs.cartan * *inv;
  rs.killing_gram = rs.cartan * rs.dual_change.transpose();

  // Sanity: K symmetric, and Cartan integers recovered from K match.
  for (int i = 0; i < rs.rank; ++i)
    for (int j = 0; j < rs.rank; ++j) {
      check(rs.killing_gram(i, j) == rs.killing_gram(j, i), "Killing Gram not symmetric");
      Rat two_over(2);
      check(two_over * rs.killing_gram(i, j) / rs.killing_gram(j, j) == rs.cartan(i, j),
            "Cartan integers disagree with Killing Gram");
    }
  return rs;
}

RootSystem build_root_system(const std::string& spec, int rank_cap) {
  return build_root_system(parse_type_spec(spec), rank_cap);
}

Int weyl_order(const TypeSpec& type) {
  Int order = 1;
  auto fact = [](int n) {
    Int f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
  };
  for (const auto& f : type.factors) {
    Int blk;
    switch (f.series) {
      case 'A': blk = fact(f.rank + 1); break;
      case 'B':
      case 'C': blk = fact(f.rank) << f.rank; break;
      case 'D': blk = fact(f.rank) << (f.rank - 1); break;
      case 'E': blk = f.rank == 6 ? 51840 : (f.rank == 7 ? 2903040 : 696729600); break;
      case 'F': blk = 1152; break;
      case 'G': blk = 12; break;
      default: throw usage_error("unknown series");
    }
    order *= blk;
  }
  return order;
}

CartanSubspaceData cartan_subspaces(const RootSystem& rs, const std::vector<int>& S) {
  for (size_t k = 0; k < S.size(); ++k) {
    check(S[k] >= 0 && S[k] < rs.rank, "subset index out of range");
    check(k == 0 || S[k - 1] < S[k], "subset must be strictly increasing");
  }
  CartanSubspaceData out;
  out.S = S;

  std::vector<std::vector<Rat>> h_rows;
  for (int s : S) {
    std::vector<Rat> e(rs.rank, Rat(0));
    e[s] = Rat(1);
    h_rows.push_back(std::move(e));
  }
  out.h_part = Subspace<Rat>::span_rows(h_rows, rs.rank);

  // alpha_s(x) for x = sum x_j H_{alpha_j} is sum_j K(s,j) x_j, so z_S is
  // the kernel of the S-rows of the Killing Gram.
  Mat<Rat> rows(int(S.size()), rs.rank);
  for (int k = 0; k < int(S.size()); ++k)
    for (int j = 0; j < rs.rank; ++j) rows(k, j) = rs.killing_gram(S[k], j);
  out.z_part = Subspace<Rat>::span(kernel(rows));

  check(out.h_part.dim() + out.z_part.dim() == rs.rank, "h_S + z_S does not fill h");
  check((out.h_part + out.z_part).dim() == rs.rank, "h_S and z_S overlap");

  // chi_S: solve K_SS c = K_{S,j} for each basis vector; the projection of
  // e_j onto h_S along z_S is sum_k c_k e_{S_k}.
  Mat<Rat> kss(int(S.size()), int(S.size()));
  for (int a = 0; a < int(S.size()); ++a)
    for (int b = 0; b < int(S.size()); ++b) kss(a, b) = rs.killing_gram(S[a], S[b]);
  auto kss_inv = inverse_of(kss);
  check(kss_inv.has_value(), "Killing Gram restricted to S is singular");
  out.proj = Mat<Rat>(rs.rank, rs.rank);
  for (int j = 0; j < rs.rank; ++j) {
    std::vector<Rat> rhs(S.size());
    for (int a = 0; a < int(S.size()); ++a) rhs[a] = rs.killing_gram(S[a], j);
    std::vector<Rat> c = kss_inv->apply(rhs);
    for (int k = 0; k < int(S.size()); ++k) out.proj(S[k], j) = c[k];
  }

  check(out.proj * out.proj == out.proj, "chi_S is not idempotent");
  for (int s : S) {
    std::vector<Rat> e(rs.rank, Rat(0));
    e[s] = Rat(1);
    check(out.proj.apply(e) == e, "chi_S does not fix h_S");
  }
  for (const auto& zrow : out.z_part.basis_rows()) {
    std::vector<Rat> img = out.proj.apply(zrow);
    for (const auto& c : img) check(c == 0, "chi_S does not kill z_S");
  }
  return out;
}

Mat<Rat> levi_cartan_transport(const RootSystem& rs, const std::vector<int>& S,
                               const std::vector<int>& T, const std::vector<int>& d_img) {
  check(S.size() == d_img.size(), "transport: size mismatch");
  for (int t : d_img) {
    bool in_t = std::find(T.begin(), T.end(), t) != T.end();
    if (!in_t) throw usage_error("transport image not inside T");
  }
  for (size_t a = 0; a < S.size(); ++a)
    for (size_t b = 0; b < S.size(); ++b)
      if (rs.killing_gram(S[a], S[b]) != rs.killing_gram(d_img[a], d_img[b]))
        throw usage_error("d does not preserve the Killing Gram on S");
  Mat<Rat> m(rs.rank, rs.rank);
  for (size_t k = 0; k < S.size(); ++k) m(d_img[k], S[k]) = Rat(1);
  return m;
}

}  // namespace lagr
