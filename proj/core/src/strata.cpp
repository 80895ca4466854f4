#include "lagr/strata.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "json.hpp"
#include "lagr/lagrlin.hpp"
#include "lagr/parallel.hpp"
#include "lagr/rootdata.hpp"

namespace lagr {

namespace {

long z_dim(const RootSystem& rs, const BDTriple& t) { return rs.rank - long(t.S.size()); }

std::vector<int> full_set(int rank) {
  std::vector<int> s(rank);
  for (int i = 0; i < rank; ++i) s[i] = i;
  return s;
}

// gamma_d on the Cartan: transports h_S onto h_T and kills z_S.
Mat<Rat> cartan_twist(const RootSystem& rs, const BDTriple& t) {
  return levi_cartan_transport(rs, t.S, t.T, t.d_img) * cartan_subspaces(rs, t.S).proj;
}

// The triple restricted to a subset of S (indices into t.S).
BDTriple restrict_triple(const RootSystem& rs, const BDTriple& t, unsigned mask) {
  std::vector<int> s1, d1;
  for (size_t k = 0; k < t.S.size(); ++k) {
    if (mask & (1u << k)) {
      s1.push_back(t.S[k]);
      d1.push_back(t.d_img[k]);
    }
  }
  std::vector<int> t1 = d1;
  std::sort(t1.begin(), t1.end());
  return make_triple(rs, std::move(s1), std::move(t1), std::move(d1));
}

Rat killing_pair(const RootSystem& rs, const std::vector<Rat>& x, const std::vector<Rat>& y) {
  Rat acc(0);
  for (int i = 0; i < rs.rank; ++i)
    for (int j = 0; j < rs.rank; ++j) acc += x[i] * rs.killing_gram(i, j) * y[j];
  return acc;
}

QExt double_form(const RootSystem& rs, const std::vector<QExt>& a, const std::vector<QExt>& b) {
  QExt acc(0);
  int r = rs.rank;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      QExt k = QExt(rs.killing_gram(i, j));
      acc = acc + a[i] * k * b[j] - a[r + i] * k * b[r + j];
    }
  return acc;
}

// Membership of an h + h row in z_S + z_T: the first half is killed by every
// alpha_s, the second by every alpha_t.
bool in_center_pair(const RootSystem& rs, const BDTriple& t, const std::vector<QExt>& row) {
  int r = rs.rank;
  for (int s : t.S) {
    QExt acc(0);
    for (int j = 0; j < r; ++j) acc = acc + QExt(rs.killing_gram(s, j)) * row[j];
    if (!(acc == QExt(0))) return false;
  }
  for (int s : t.T) {
    QExt acc(0);
    for (int j = 0; j < r; ++j) acc = acc + QExt(rs.killing_gram(s, j)) * row[r + j];
    if (!(acc == QExt(0))) return false;
  }
  return true;
}

std::vector<std::vector<int>> all_isometries(const RootSystem& rs) {
  std::vector<int> all = full_set(rs.rank);
  return isometries(rs, all, all);
}

int cycle_count(const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  int cycles = 0;
  for (size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (size_t j = i; !seen[j]; j = size_t(perm[j])) seen[j] = true;
  }
  return cycles;
}

// The exception to the maximality rule: S missing one simple root, the triple
// a restriction of a diagram self-isometry d1, and the parity matching
// dim h - dim h^{d1} (the fixed space dimension is the cycle count of d1).
bool maximality_exception(const RootSystem& rs, const BDTriple& t, int eps,
                          const std::vector<std::vector<int>>& diagram_isos) {
  if (int(t.S.size()) != rs.rank - 1) return false;
  for (const auto& d1 : diagram_isos) {
    bool restricts = true;
    for (size_t k = 0; k < t.S.size() && restricts; ++k)
      if (d1[t.S[k]] != t.d_img[k]) restricts = false;
    if (restricts && eps == (rs.rank - cycle_count(d1)) % 2) return true;
  }
  return false;
}

std::vector<BDTriple> proper_boundary(const RootSystem& rs, const BDTriple& t) {
  std::vector<BDTriple> out;
  unsigned full = (1u << t.S.size()) - 1;
  for (unsigned mask = full; mask-- > 0;) out.push_back(restrict_triple(rs, t, mask));
  return out;
}

Rat rat_pow(const Rat& base, long e) {
  Rat acc(1);
  Rat b = e < 0 ? Rat(1) / base : base;
  for (long k = 0; k < std::labs(e); ++k) acc *= b;
  return acc;
}

// Integer character vectors vanishing on the displacement space D: the
// multiplicative test Pi ratio_i^{n_i} = 1 over these characters decides
// membership of a torus ratio in the subtorus with Lie algebra D.
std::vector<std::vector<long>> vanishing_characters(const RootSystem& rs,
                                                    const Subspace<Rat>& d_space) {
  Mat<Rat> rows(d_space.dim(), rs.rank);
  for (int k = 0; k < d_space.dim(); ++k) {
    std::vector<Rat> d = d_space.basis_rows()[k];
    for (int i = 0; i < rs.rank; ++i) {
      Rat acc(0);
      for (int j = 0; j < rs.rank; ++j) acc += rs.killing_gram(i, j) * d[j];
      rows(k, i) = acc;
    }
  }
  Mat<Rat> null = kernel(rows);
  std::vector<std::vector<long>> out;
  for (int i = 0; i < null.rows(); ++i) {
    Int denom(1);
    for (int j = 0; j < null.cols(); ++j)
      denom = lcm(denom, Int(null(i, j).get_den()));
    std::vector<long> n(null.cols());
    for (int j = 0; j < null.cols(); ++j) n[j] = to_long(null(i, j) * Rat(denom));
    out.push_back(std::move(n));
  }
  return out;
}

bool torus_equivalent(const TorusElement& a, const TorusElement& b,
                      const std::vector<std::vector<long>>& characters) {
  for (const auto& n : characters) {
    Rat value(1);
    for (size_t i = 0; i < n.size(); ++i)
      value *= rat_pow(b.simple_values[i] / a.simple_values[i], n[i]);
    if (value != 1) return false;
  }
  return true;
}

}  // namespace

std::string OrbitLabel::key() const {
  std::ostringstream os;
  os << int(kind) << '|' << triple.str() << "|e" << eps;
  os << "|V";
  for (int i = 0; i < v_rows.rows(); ++i)
    for (int j = 0; j < v_rows.cols(); ++j) os << ' ' << v_rows(i, j).str();
  if (kind == OrbitKind::BB) os << "|w " << w.word_str();
  if (kind == OrbitKind::BB || kind == OrbitKind::GDelta) os << "|v " << v.word_str();
  if (kind == OrbitKind::GDelta) {
    os << "|m";
    for (const auto& c : m.simple_values) os << ' ' << to_string(c);
  }
  return os.str();
}

long orbit_dim(const RootSystem& rs, const BDTriple& t) { return rs.dim_g() - z_dim(rs, t); }

long stratum_dim(const RootSystem& rs, const BDTriple& t) {
  long n = rs.dim_g();
  long z = z_dim(rs, t);
  long value = n + z * (z - 3) / 2;
  check(value == orbit_dim(rs, t) + lagrangian_grassmannian_dim(int(2 * z)),
        "stratum dimension: the two computations disagree");
  return value;
}

OrbitLabel gg_label(const RootSystem& rs, const BDTriple& t, const Mat<QExt>& v_rows) {
  if (v_rows.cols() != 2 * rs.rank)
    throw usage_error("gg_label: V rows must have h + h coordinates");
  Subspace<QExt> v = Subspace<QExt>::span(v_rows);
  if (v.dim() != v_rows.rows()) throw usage_error("gg_label: dependent V rows");
  if (v.dim() != z_dim(rs, t))
    throw usage_error("gg_label: V must have dimension dim z_S");
  for (const auto& row : v.basis_rows()) {
    if (!in_center_pair(rs, t, row))
      throw usage_error("gg_label: V must lie inside z_S + z_T");
    for (const auto& other : v.basis_rows())
      if (!(double_form(rs, row, other) == QExt(0)))
        throw usage_error("gg_label: V is not isotropic");
  }
  OrbitLabel out;
  out.kind = OrbitKind::GG;
  out.triple = t;
  out.v_rows = Mat<QExt>(v.dim(), 2 * rs.rank);
  for (int i = 0; i < v.dim(); ++i) out.v_rows.set_row(i, v.basis_rows()[i]);
  return out;
}

std::vector<OrbitLabel> orbit_closure(const RootSystem& rs, const OrbitLabel& label) {
  if (label.kind != OrbitKind::GG)
    throw usage_error("orbit_closure: only GG labels degenerate");
  const BDTriple& t = label.triple;
  Mat<Rat> twist = cartan_twist(rs, t);
  Subspace<Rat> h_s = Subspace<Rat>::zero(rs.rank);
  for (int s : t.S) {
    std::vector<Rat> e(rs.rank, Rat(0));
    e[s] = Rat(1);
    h_s = h_s + Subspace<Rat>::span_rows({e}, rs.rank);
  }

  std::vector<OrbitLabel> out;
  unsigned full = (1u << t.S.size());
  for (unsigned down = 0; down < full; ++down) {
    unsigned mask = full - 1 - down;  // the orbit itself first
    BDTriple t1 = restrict_triple(rs, t, mask);
    Subspace<Rat> extra = h_s.intersect(cartan_subspaces(rs, t1.S).z_part);
    Mat<QExt> rows(label.v_rows.rows() + extra.dim(), 2 * rs.rank);
    for (int i = 0; i < label.v_rows.rows(); ++i) rows.set_row(i, label.v_rows.row(i));
    for (int k = 0; k < extra.dim(); ++k) {
      std::vector<Rat> x = extra.basis_rows()[k];
      std::vector<Rat> y = twist.apply(x);
      std::vector<QExt> row(2 * rs.rank);
      for (int j = 0; j < rs.rank; ++j) {
        row[j] = QExt(x[j]);
        row[rs.rank + j] = QExt(y[j]);
      }
      rows.set_row(label.v_rows.rows() + k, row);
    }
    out.push_back(gg_label(rs, t1, rows));
  }
  return out;
}

int eps_of(const LieAlgebraModel& model, const WeylGroup& wg, const BDTriple& t,
           const Mat<QExt>& v_rows) {
  return eps_of(model, wg, t, v_rows, wg.identity(), identity_torus(model.rs.rank));
}

int eps_of(const LieAlgebraModel& model, const WeylGroup& wg, const BDTriple& t,
           const Mat<QExt>& v_rows, const WeylElement& v, const TorusElement& m) {
  IntersectionReport rep = intersect_with_diagonal(model, wg, t, v_rows, v, m);
  bool base_point = v.is_identity() &&
                    std::all_of(m.simple_values.begin(), m.simple_values.end(),
                                [](const Rat& c) { return c == 1; });
  if (base_point)
    check(rep.direct.dim() == rep.formula.dim(),
          "eps: direct intersection disagrees with the closed formula");
  return int((model.rs.dim_g() - rep.direct.dim()) % 2);
}

std::vector<Mat<QExt>> parity_witnesses(const RootSystem& rs, const BDTriple& t) {
  long z = z_dim(rs, t);
  if (z == 0) return {Mat<QExt>(0, 2 * rs.rank)};

  // a form isometry of h carrying h_S to h_T along d, hence z_S onto z_T
  Mat<Rat> from(int(t.S.size()), rs.rank), to(int(t.S.size()), rs.rank);
  for (size_t k = 0; k < t.S.size(); ++k) {
    from(int(k), t.S[k]) = Rat(1);
    to(int(k), t.d_img[k]) = Rat(1);
  }
  Mat<Rat> iso = extend_isometry(rs.killing_gram, from, to);

  // orthogonal basis of z_S for the restricted form
  std::vector<std::vector<Rat>> zb = cartan_subspaces(rs, t.S).z_part.basis_rows();
  Mat<Rat> gram_z(static_cast<int>(z), static_cast<int>(z));
  for (long i = 0; i < z; ++i)
    for (long j = 0; j < z; ++j) gram_z(int(i), int(j)) = killing_pair(rs, zb[i], zb[j]);
  Mat<Rat> combos = orthogonal_basis(gram_z);
  std::vector<std::vector<Rat>> u;
  for (int i = 0; i < int(z); ++i) {
    std::vector<Rat> acc(rs.rank, Rat(0));
    for (int k = 0; k < int(z); ++k)
      for (int j = 0; j < rs.rank; ++j) acc[j] += combos(i, k) * zb[k][j];
    u.push_back(std::move(acc));
  }

  if (z == 1) {
    // the two isotropic lines of the induced binary form, in the basis
    // (u_0, 0), (0, iso u_0)
    Rat q = killing_pair(rs, u[0], u[0]);
    Mat<Rat> gram2(2, 2);
    gram2(0, 0) = q;
    gram2(1, 1) = -q;
    IsotropicLines lines = isotropic_lines(make_space(gram2, "center pair"));
    std::vector<Rat> w0 = iso.apply(u[0]);
    std::vector<Mat<QExt>> out;
    for (int i = 0; i < 2; ++i) {
      Mat<QExt> rows(1, 2 * rs.rank);
      for (int j = 0; j < rs.rank; ++j) {
        rows(0, j) = lines.lines(i, 0) * QExt(u[0][j]);
        rows(0, rs.rank + j) = lines.lines(i, 1) * QExt(w0[j]);
      }
      out.push_back(std::move(rows));
    }
    return out;
  }

  // graphs of the isometry and of its one-sign twist: they differ in a
  // dimension-one slice, so they land in the two different components
  std::vector<Mat<QExt>> out;
  for (int flip = 0; flip < 2; ++flip) {
    Mat<QExt> rows(int(z), 2 * rs.rank);
    for (int i = 0; i < int(z); ++i) {
      std::vector<Rat> y = iso.apply(u[i]);
      Rat sign = (flip == 1 && i == 0) ? Rat(-1) : Rat(1);
      for (int j = 0; j < rs.rank; ++j) {
        rows(i, j) = QExt(u[i][j]);
        rows(i, rs.rank + j) = QExt(sign * y[j]);
      }
    }
    out.push_back(std::move(rows));
  }
  return out;
}

std::vector<StratumEntry> stratum_census(const LieAlgebraModel& model, const WeylGroup& wg) {
  const RootSystem& rs = model.rs;
  std::vector<BDTriple> triples = enumerate_triples(rs);
  std::vector<std::vector<int>> diagram_isos = all_isometries(rs);

  std::vector<std::vector<StratumEntry>> slots(triples.size());
  parallel_for(int(triples.size()), [&](int idx) {
    const BDTriple& t = triples[idx];
    std::vector<int> parities;
    for (const auto& v_rows : parity_witnesses(rs, t)) {
      int eps = eps_of(model, wg, t, v_rows);
      if (std::find(parities.begin(), parities.end(), eps) == parities.end())
        parities.push_back(eps);
    }
    if (z_dim(rs, t) >= 1)
      check(parities.size() == 2, "census: parity witnesses landed in one component");
    std::sort(parities.begin(), parities.end());
    for (int eps : parities) {
      StratumEntry entry;
      entry.triple = t;
      entry.eps = eps;
      entry.orbit_dim = orbit_dim(rs, t);
      entry.stratum_dim = stratum_dim(rs, t);
      entry.is_component = !maximality_exception(rs, t, eps, diagram_isos);
      entry.boundary = proper_boundary(rs, t);
      slots[idx].push_back(std::move(entry));
    }
  });

  std::vector<StratumEntry> out;
  for (auto& slot : slots)
    for (auto& entry : slot) out.push_back(std::move(entry));
  std::sort(out.begin(), out.end(), [](const StratumEntry& a, const StratumEntry& b) {
    auto ka = std::tie(a.triple.S, a.triple.T, a.triple.d_img, a.eps);
    auto kb = std::tie(b.triple.S, b.triple.T, b.triple.d_img, b.eps);
    return ka < kb;
  });
  return out;
}

std::vector<ComponentEntry> irreducible_components(const LieAlgebraModel& model,
                                                   const WeylGroup& wg) {
  std::vector<ComponentEntry> out;
  for (const auto& entry : stratum_census(model, wg)) {
    if (!entry.is_component) continue;
    ComponentEntry c;
    c.label.kind = OrbitKind::Component;
    c.label.triple = entry.triple;
    c.label.eps = entry.eps;
    c.dim = entry.stratum_dim;
    out.push_back(std::move(c));
  }
  return out;
}

std::string census_json(const LieAlgebraModel& model, const WeylGroup& wg) {
  nlohmann::ordered_json j;
  j["type"] = model.rs.type.str();
  if (model.rs.type.str() == "A2")
    j["note"] =
        "A widely quoted hand census for sl3 lists four irreducible "
        "components; the maximality rule implemented here certifies eight. "
        "The four extra entries are the singleton strata with S = T and "
        "parity 1 and the singleton strata with S != T and parity 0, none of "
        "which lies in the closure of a larger stratum under the boundary "
        "formula. The table reports the rule's output verbatim.";
  j["triples"] = nlohmann::ordered_json::array();
  for (const auto& entry : stratum_census(model, wg)) {
    nlohmann::ordered_json row;
    row["S"] = entry.triple.S;
    row["T"] = entry.triple.T;
    row["d"] = entry.triple.d_img;
    row["eps"] = entry.eps;
    row["orbitDim"] = entry.orbit_dim;
    row["stratumDim"] = entry.stratum_dim;
    row["isComponent"] = entry.is_component;
    row["boundary"] = nlohmann::ordered_json::array();
    for (const auto& b : entry.boundary) {
      nlohmann::ordered_json edge;
      edge["S"] = b.S;
      edge["T"] = b.T;
      edge["d"] = b.d_img;
      row["boundary"].push_back(std::move(edge));
    }
    j["triples"].push_back(std::move(row));
  }
  return j.dump(2);
}

std::vector<OrbitLabel> bb_orbit_reps(const RootSystem& rs, const WeylGroup& wg,
                                      const BDTriple& t) {
  std::vector<OrbitLabel> out;
  for (const auto& w : wg.elements()) {
    for (const auto& v : wg.min_coset_reps(t.T)) {
      OrbitLabel lab;
      lab.kind = OrbitKind::BB;
      lab.triple = t;
      lab.v_rows = Mat<QExt>(0, 2 * rs.rank);
      lab.w = w;
      lab.v = v;
      out.push_back(std::move(lab));
    }
  }
  return out;
}

std::vector<OrbitLabel> gdelta_orbit_reps(const RootSystem& rs, const WeylGroup& wg,
                                          const BDTriple& t, const Mat<QExt>& v_rows,
                                          const std::vector<TorusElement>& torus_sample) {
  OrbitLabel base = gg_label(rs, t, v_rows);  // validates V
  for (const auto& m : torus_sample)
    if (int(m.simple_values.size()) != rs.rank)
      throw usage_error("gdelta_orbit_reps: torus element of the wrong rank");

  Mat<Rat> twist = cartan_twist(rs, t);
  Mat<Rat> proj_t = cartan_subspaces(rs, t.T).proj;

  std::vector<OrbitLabel> out;
  for (const auto& v : wg.min_coset_reps(t.T)) {
    // displacement directions m1 - m1' of coset-condition pairs, on the
    // Cartan: gamma_d chi_S(X1) = chi_T(Ad_{v^{-1}} X2)
    Mat<Rat> vinv = wg.inverse(v).hmat;
    Mat<Rat> constraint(rs.rank, 2 * rs.rank);
    Mat<Rat> right = proj_t * vinv;
    for (int i = 0; i < rs.rank; ++i)
      for (int j = 0; j < rs.rank; ++j) {
        constraint(i, j) = twist(i, j);
        constraint(i, rs.rank + j) = -right(i, j);
      }
    Mat<Rat> pairs = kernel(constraint);
    std::vector<std::vector<Rat>> moves;
    for (int i = 0; i < pairs.rows(); ++i) {
      std::vector<Rat> row = pairs.row(i);
      std::vector<Rat> d(rs.rank);
      for (int j = 0; j < rs.rank; ++j) d[j] = row[j] - row[rs.rank + j];
      moves.push_back(std::move(d));
    }
    auto characters =
        vanishing_characters(rs, Subspace<Rat>::span_rows(moves, rs.rank));

    std::vector<TorusElement> reps;
    auto consider = [&](const TorusElement& m) {
      for (const auto& r : reps)
        if (torus_equivalent(r, m, characters)) return;
      reps.push_back(m);
    };
    consider(identity_torus(rs.rank));
    for (const auto& m : torus_sample) consider(m);

    for (const auto& m : reps) {
      OrbitLabel lab = base;
      lab.kind = OrbitKind::GDelta;
      lab.v = v;
      lab.m = m;
      out.push_back(std::move(lab));
    }
  }
  return out;
}

std::pair<long, int> lagr_gh_census(const RootSystem& rs) {
  return {rs.n_pos() + long(rs.rank) * (rs.rank - 1) / 2, 2};
}

std::vector<TorusElement> default_torus_sample(int rank, Rng& rng) {
  std::vector<TorusElement> out;
  for (int k = 0; k < 5; ++k) {
    TorusElement m;
    for (int i = 0; i < rank; ++i)
      m.simple_values.push_back(rat(rng.range(1, 3), rng.range(1, 3)));
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace lagr
