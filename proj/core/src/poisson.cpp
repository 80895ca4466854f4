#include "lagr/poisson.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "lagr/fp.hpp"
#include "lagr/parallel.hpp"

namespace lagr {

namespace {

void require_minimal(const WeylGroup& wg, const WeylElement& v, const std::vector<int>& T,
                     const std::string& who) {
  for (int t : T) {
    std::vector<int> alpha(wg.root_system().rank, 0);
    alpha[t] = 1;
    std::vector<int> img = wg.act_root(v, alpha);
    if (std::all_of(img.begin(), img.end(), [](int c) { return c <= 0; }))
      throw usage_error(who + ": v = " + v.word_str() + " is not minimal in its coset");
  }
}

// gamma_d chi_S as an operator on h.
Mat<Rat> cartan_twist(const RootSystem& rs, const BDTriple& t) {
  return levi_cartan_transport(rs, t.S, t.T, t.d_img) * cartan_subspaces(rs, t.S).proj;
}

// <(x1,y1),(x2,y2)> = K(x1,x2) - K(y1,y2) on rows of length 2 rank.
Rat split_pairing(const RootSystem& rs, const std::vector<Rat>& a, const std::vector<Rat>& b) {
  int r = rs.rank;
  Rat out;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const Rat& k = rs.killing_gram(i, j);
      out += a[i] * k * b[j] - a[r + i] * k * b[r + j];
    }
  return out;
}

std::vector<Rat> concat_halves(std::vector<Rat> x, const std::vector<Rat>& y) {
  x.insert(x.end(), y.begin(), y.end());
  return x;
}

// ---------------------------------------------------------------------------
// Finite-field sampling in SL_n for the nonemptiness certificate.  Everything
// here is exact arithmetic mod a fixed prime; Bruhat cells are recognized by
// the submatrix-rank pivot pattern, which is invariant under the Borel
// multiplications the sampler performs.

constexpr long kPrime = 10007;
using F = Fp<kPrime>;
using FMat = Mat<F>;

// The standard lift of a simple reflection: an SL_2 rotation block.
FMat simple_lift(int n, int i) {
  FMat m = FMat::identity(n);
  m(i, i) = F(0);
  m(i, i + 1) = F(1);
  m(i + 1, i) = F(-1);
  m(i + 1, i + 1) = F(0);
  return m;
}

FMat word_lift(int n, const std::vector<int>& word) {
  FMat m = FMat::identity(n);
  for (int i : word) m = m * simple_lift(n, i);
  return m;
}

// Inverse lift, multiplied in reversed order.
FMat word_lift_inv(int n, const std::vector<int>& word) {
  FMat m = FMat::identity(n);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    FMat s = simple_lift(n, *it);
    s(*it, *it + 1) = F(-1);
    s(*it + 1, *it) = F(1);
    m = m * s;
  }
  return m;
}

// The permutation of {0..n-1} a word composes to, as images pi[j].
std::vector<int> word_perm(int n, const std::vector<int>& word) {
  std::vector<int> pi(n);
  for (int j = 0; j < n; ++j) pi[j] = j;
  // Right-multiplying by the transposition (i, i+1) swaps two images.
  for (int i : word) std::swap(pi[i], pi[i + 1]);
  return pi;
}

int corner_rank(const FMat& g, int i0, int j1) {
  int n = g.rows();
  FMat sub(n - i0, j1 + 1);
  for (int i = i0; i < n; ++i)
    for (int j = 0; j <= j1; ++j) sub(i - i0, j) = g(i, j);
  return rank_of(sub);
}

// The permutation pi with g in B pi B, read off the rank jumps of the
// bottom-left corner submatrices.
std::vector<int> upper_pattern(const FMat& g) {
  int n = g.rows();
  auto rk = [&](int i, int j) {
    if (i >= n || j < 0) return 0;
    return corner_rank(g, i, j);
  };
  std::vector<int> pi(n, -1);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (rk(i, j) - rk(i + 1, j) - rk(i, j - 1) + rk(i + 1, j - 1) == 1) pi[j] = i;
  return pi;
}

// g in B^- pi B^-: conjugate by the order-reversing permutation, which swaps
// the two Borels, and translate the pattern back.
std::vector<int> lower_pattern(const FMat& g) {
  int n = g.rows();
  FMat rev(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rev(i, j) = g(n - 1 - i, n - 1 - j);
  std::vector<int> q = upper_pattern(rev);
  std::vector<int> pi(n);
  for (int j = 0; j < n; ++j) pi[j] = n - 1 - q[n - 1 - j];
  return pi;
}

F random_unit(Rng& rng) { return F(1 + rng.range(0, kPrime - 2)); }

FMat random_upper(int n, Rng& rng) {
  FMat m(n, n);
  F det(1);
  for (int i = 0; i + 1 < n; ++i) {
    m(i, i) = random_unit(rng);
    det *= m(i, i);
  }
  m(n - 1, n - 1) = det.inverse();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m(i, j) = F(rng.range(0, kPrime - 1));
  return m;
}

FMat random_lower(int n, Rng& rng) {
  FMat m(n, n);
  F det(1);
  for (int i = 0; i + 1 < n; ++i) {
    m(i, i) = random_unit(rng);
    det *= m(i, i);
  }
  m(n - 1, n - 1) = det.inverse();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) m(i, j) = F(rng.range(0, kPrime - 1));
  return m;
}

// Certificate search for one SL_n factor.  The monomial point u-dot w-dot is
// tried first; it settles every cell with v = uw.  Random points are then
// drawn inside whichever of B u B, B^- v B^- has the better chance of
// exposing the other side's pattern.
CellStatus factor_check(int n, const std::vector<int>& uw, const std::vector<int>& vw,
                        const std::vector<int>& ww, Rng& rng, int samples) {
  FMat ulift = word_lift(n, uw);
  FMat wlift = word_lift(n, ww);
  FMat winv = word_lift_inv(n, ww);
  FMat vlift = word_lift(n, vw);
  std::vector<int> uperm = word_perm(n, uw);
  std::vector<int> vperm = word_perm(n, vw);

  if (lower_pattern(ulift * wlift) == vperm) return CellStatus::CertifiedNonempty;

  bool from_u_side = vw.size() >= uw.size();
  for (int k = 0; k < samples; ++k) {
    if (from_u_side) {
      FMat g = random_upper(n, rng) * ulift * random_upper(n, rng);
      if (lower_pattern(g * wlift) == vperm) return CellStatus::CertifiedNonempty;
    } else {
      FMat x = random_lower(n, rng) * vlift * random_lower(n, rng);
      if (upper_pattern(x * winv) == uperm) return CellStatus::CertifiedNonempty;
    }
  }
  return CellStatus::Unknown;
}

}  // namespace

XSpace x_space(const RootSystem& rs, const WeylGroup& wg, const BDTriple& t,
               const WeylElement& v) {
  require_minimal(wg, v, t.T, "x_space");
  int r = rs.rank;
  Mat<Rat> vinv = wg.inverse(v).hmat;
  Mat<Rat> cond = cartan_twist(rs, t) - cartan_subspaces(rs, t.T).proj * vinv;

  Mat<Rat> zbasis = cartan_subspaces(rs, s_of(rs, wg, t, v)).z_part.basis();
  Mat<Rat> system(r, zbasis.rows());
  for (int k = 0; k < zbasis.rows(); ++k) {
    std::vector<Rat> col = cond.apply(zbasis.row(k));
    for (int i = 0; i < r; ++i) system(i, k) = col[i];
  }

  std::vector<std::vector<Rat>> rows;
  Mat<Rat> coeffs = kernel(system);
  for (int i = 0; i < coeffs.rows(); ++i) {
    std::vector<Rat> z(r, Rat(0));
    for (int k = 0; k < zbasis.rows(); ++k)
      for (int j = 0; j < r; ++j) z[j] += coeffs(i, k) * zbasis(k, j);
    rows.push_back(concat_halves(z, vinv.apply(z)));
  }
  for (size_t k = 0; k < t.S.size(); ++k) {
    std::vector<Rat> x(r, Rat(0)), y(r, Rat(0));
    x[t.S[k]] = Rat(1);
    y[t.d_img[k]] = Rat(1);
    rows.push_back(concat_halves(std::move(x), y));
  }

  Subspace<Rat> sp = Subspace<Rat>::span_rows(rows, 2 * r);
  check(sp.dim() == r, "x_space: correction space is not half-dimensional");
  for (int i = 0; i < sp.dim(); ++i)
    for (int j = i; j < sp.dim(); ++j)
      check(split_pairing(rs, sp.basis().row(i), sp.basis().row(j)) == Rat(0),
            "x_space: correction space is not isotropic");
  return XSpace{t, v, sp.basis()};
}

long h_minus_dim(const WeylElement& w) {
  int r = w.hmat.rows();
  return kernel(w.hmat + Mat<Rat>::identity(r)).rows();
}

long rank_correction(const RootSystem& rs, const WeylElement& w, const WeylElement& v1,
                     const XSpace& x) {
  int r = rs.rank;
  // A combination of basis rows (a_i, b_i) lands on the antidiagonal exactly
  // when w(sum c_i a_i) + v1(sum c_i b_i) = 0, and distinct combinations give
  // distinct points since the rows are independent.
  Mat<Rat> sum_map(r, x.dim());
  for (int i = 0; i < x.dim(); ++i) {
    std::vector<Rat> row = x.basis.row(i);
    std::vector<Rat> a(row.begin(), row.begin() + r);
    std::vector<Rat> b(row.begin() + r, row.end());
    std::vector<Rat> wa = w.hmat.apply(a);
    std::vector<Rat> vb = v1.hmat.apply(b);
    for (int j = 0; j < r; ++j) sum_map(j, i) = wa[j] + vb[j];
  }
  return kernel(sum_map).rows();
}

long borel_pair_orbit_dim(const LieAlgebraModel& model, const DoubleSubspace& l) {
  int n = model.dim_g();
  int r = model.rs.rank;
  int npos = model.rs.n_pos();
  check(l.space.ambient() == 2 * n, "borel_pair_orbit_dim: ambient mismatch");

  // Basis of b + b^-: (h_i, 0), (e_p, 0), (0, h_i), (0, f_p).
  std::vector<std::pair<int, int>> gens;  // (component, basis index in g)
  for (int i = 0; i < r; ++i) gens.emplace_back(0, model.h_index(i));
  for (int p = 0; p < npos; ++p) gens.emplace_back(0, model.e_index(p));
  for (int i = 0; i < r; ++i) gens.emplace_back(1, model.h_index(i));
  for (int p = 0; p < npos; ++p) gens.emplace_back(1, model.f_index(p));

  const Mat<QExt>& b = l.space.basis();
  std::vector<QExt> zero(n, QExt());
  std::vector<std::vector<QExt>> residuals;
  for (const auto& [side, idx] : gens) {
    std::vector<QExt> x = lift_vec(model.basis_vec(idx));
    std::vector<QExt> rk;
    for (int i = 0; i < b.rows(); ++i) {
      std::vector<QExt> ri = b.row(i);
      std::vector<QExt> y1(ri.begin(), ri.begin() + n);
      std::vector<QExt> y2(ri.begin() + n, ri.end());
      std::vector<QExt> br1 = side == 0 ? model.bracket(x, y1) : zero;
      std::vector<QExt> br2 = side == 1 ? model.bracket(x, y2) : zero;
      br1.insert(br1.end(), br2.begin(), br2.end());
      std::vector<QExt> red = l.space.reduce(br1);
      rk.insert(rk.end(), red.begin(), red.end());
    }
    residuals.push_back(std::move(rk));
  }
  Mat<QExt> m(int(residuals[0].size()), int(gens.size()));
  for (int k = 0; k < int(gens.size()); ++k)
    for (int row = 0; row < m.rows(); ++row) m(row, k) = residuals[k][row];
  long stab = kernel(m).rows();
  return (n + r) - stab;
}

PoissonRank pi0_rank(const LieAlgebraModel& model, const WeylGroup& wg, const OrbitLabel& o,
                     const OrbitLabel& o_prime) {
  if (o.kind != OrbitKind::GDelta || o_prime.kind != OrbitKind::BB)
    throw usage_error("pi0_rank: wants a GDelta label and a BB label, in that order");
  const RootSystem& rs = model.rs;
  const BDTriple& t = o.triple;
  if (t.S != o_prime.triple.S || t.T != o_prime.triple.T || t.d_img != o_prime.triple.d_img)
    throw usage_error("pi0_rank: labels carry different triples");
  OrbitLabel v_check = gg_label(rs, t, o.v_rows);
  OrbitLabel v_check_prime = gg_label(rs, t, o_prime.v_rows);
  if (!(Subspace<QExt>::span(v_check.v_rows) == Subspace<QExt>::span(v_check_prime.v_rows)))
    throw usage_error("pi0_rank: labels lie in different (G x G)-orbits");

  int n = model.dim_g();
  int r = rs.rank;
  long z = r - long(t.S.size());

  DoubleSubspace l_diag = build_lagrangian(model, t, v_check.v_rows, o.v, o.m);
  long dim_orbit = n - normalizer_in_diagonal(model, l_diag).space.dim();

  DoubleSubspace base = build_lagrangian(model, t, v_check.v_rows);
  Mat<QExt> push(2 * n, 2 * n);
  Mat<QExt> first = lift_mat(weyl_lift_adjoint(model, o_prime.w));
  Mat<QExt> second = lift_mat(weyl_lift_adjoint(model, o_prime.v));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      push(i, j) = first(i, j);
      push(n + i, n + j) = second(i, j);
    }
  DoubleSubspace l_pair;
  l_pair.gdim = n;
  l_pair.space = base.space.image_under(push);
  long dim_borel = borel_pair_orbit_dim(model, l_pair);

  PoissonRank out;
  out.dim_orbit = dim_orbit;
  out.dim_borel_orbit = dim_borel;
  // The two orbits meet transversally inside the common (G x G)-orbit of
  // dimension n - z, so the intersection dimension is forced.
  out.dim = dim_orbit + dim_borel - (n - z);
  out.correction = rank_correction(rs, o_prime.w, o_prime.v, x_space(rs, wg, t, o.v));
  out.rank = out.dim - out.correction;
  out.cell_empty = out.dim < 0 || out.rank < 0;
  return out;
}

ConjugacyRank conjugacy_rank(long dim_class, const WeylElement& w) {
  if (dim_class < 0) throw usage_error("conjugacy_rank: class dimension must be nonnegative");
  ConjugacyRank out;
  out.rank = dim_class - w.length() - h_minus_dim(w);
  out.cell_empty = out.rank < 0;
  return out;
}

DoubleBruhatRank double_bruhat_rank(const WeylGroup& wg, const WeylElement& u,
                                    const WeylElement& v, const WeylElement& w) {
  std::vector<int> word = wg.inverse(u).word;
  word.insert(word.end(), v.word.begin(), v.word.end());
  const std::vector<int>& winv = wg.inverse(w).word;
  word.insert(word.end(), winv.begin(), winv.end());
  DoubleBruhatRank out;
  out.dim = long(u.length()) + v.length() - w.length();
  out.rank = out.dim - h_minus_dim(wg.from_word(word));
  return out;
}

CellStatus nonempty_check(const RootSystem& rs, const WeylGroup& wg, const WeylElement& u,
                          const WeylElement& v, const WeylElement& w, Rng& rng, int samples) {
  if (rs.rank > 3)
    throw cap_error("nonempty_check: rank cap is 3, got " + rs.type.str());
  (void)wg;
  int offset = 0;
  for (const SimpleFactor& f : rs.type.factors) {
    if (f.series != 'A') return CellStatus::Unknown;
    auto restrict_word = [&](const std::vector<int>& word) {
      std::vector<int> out;
      for (int i : word)
        if (i >= offset && i < offset + f.rank) out.push_back(i - offset);
      return out;
    };
    CellStatus st = factor_check(f.rank + 1, restrict_word(u.word), restrict_word(v.word),
                                 restrict_word(w.word), rng, samples);
    if (st == CellStatus::Unknown) return CellStatus::Unknown;
    offset += f.rank;
  }
  return CellStatus::CertifiedNonempty;
}

std::vector<RankRow> rank_table(const WeylGroup& wg, std::uint64_t seed, int samples) {
  const std::vector<WeylElement>& els = wg.elements();
  const RootSystem& rs = wg.root_system();
  long k = long(els.size());
  std::vector<RankRow> rows(k * k * k);
  parallel_for(k * k * k, [&](long idx) {
    const WeylElement& u = els[idx / (k * k)];
    const WeylElement& v = els[(idx / k) % k];
    const WeylElement& w = els[idx % k];
    DoubleBruhatRank closed = double_bruhat_rank(wg, u, v, w);
    Rng cell_rng(seed ^ (0x9E3779B97F4A7C15ULL * std::uint64_t(idx + 1)));
    CellStatus st = nonempty_check(rs, wg, u, v, w, cell_rng, samples);
    rows[idx] = RankRow{u,           v,
                        w,           closed.dim,
                        closed.rank, closed.dim - closed.rank,
                        st == CellStatus::Unknown};
  });
  return rows;
}

std::string rank_table_csv(const WeylGroup& wg, std::uint64_t seed, int samples) {
  std::ostringstream out;
  out << "u,v,w,dim,rank,correction,nonempty\n";
  for (const RankRow& row : rank_table(wg, seed, samples))
    out << row.u.word_str() << ',' << row.v.word_str() << ',' << row.w.word_str() << ','
        << row.dim << ',' << row.rank << ',' << row.correction << ','
        << (row.conditional ? "unknown" : "yes") << '\n';
  return out.str();
}

}  // namespace lagr
