#include <set>

#include "doctest.h"
#include "lagr/lagrlin.hpp"
#include "lagr/rootdata.hpp"

using namespace lagr;

namespace {

Mat<Rat> diag(const std::vector<Rat>& d) {
  Mat<Rat> m(int(d.size()), int(d.size()));
  for (int i = 0; i < m.rows(); ++i) m(i, i) = d[i];
  return m;
}

Mat<QExt> lift(const Mat<Rat>& m) {
  Mat<QExt> out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = QExt(m(i, j));
  return out;
}

}  // namespace

TEST_CASE("is_lagrangian on the doubled Cartan") {
  RootSystem a2 = build_root_system("A2");
  QuadraticSpace hh = double_space(a2.killing_gram, "h(+)h");
  CHECK(hh.dim == 4);

  Mat<Rat> diagonal = Mat<Rat>::identity(2).hstack(Mat<Rat>::identity(2));
  CHECK(is_lagrangian(hh, diagonal));

  Mat<Rat> first_factor = Mat<Rat>::identity(2).hstack(Mat<Rat>(2, 2));
  CHECK_FALSE(is_lagrangian(hh, first_factor));

  // graphs of form isometries are Lagrangian
  Rng rng(7);
  for (int k = 0; k < 4; ++k) {
    Mat<Rat> phi = random_form_isometry(a2.killing_gram, rng);
    CHECK(phi.transpose() * a2.killing_gram * phi == a2.killing_gram);
    CHECK(is_lagrangian(hh, isometry_graph(phi)));
  }

  Mat<Rat> dependent(2, 4);
  dependent(0, 0) = 1;
  dependent(1, 0) = 2;
  CHECK_THROWS_AS(is_lagrangian(hh, dependent), usage_error);

  CHECK_THROWS_AS(make_space(Mat<Rat>(2, 2), "junk"), usage_error);
  Mat<Rat> asym(2, 2);
  asym(0, 1) = 1;
  CHECK_THROWS_AS(make_space(asym, "junk"), usage_error);
}

TEST_CASE("component parity") {
  RootSystem a2 = build_root_system("A2");
  QuadraticSpace hh = double_space(a2.killing_gram, "h(+)h");

  Mat<Rat> plus = Mat<Rat>::identity(2).hstack(Mat<Rat>::identity(2));
  Mat<Rat> minus = Mat<Rat>::identity(2).hstack(-Mat<Rat>::identity(2));
  LagrangianSubspace vp = make_lagrangian(hh, plus);
  LagrangianSubspace vm = make_lagrangian(hh, minus);

  CHECK(same_component(vp, vp));
  CHECK(same_component(vp, vm));  // 2 - 0 is even

  // the two isotropic lines of a split plane are in different components
  QuadraticSpace plane = double_space(diag({Rat(1)}), "plane");
  Mat<Rat> l1(1, 2), l2(1, 2);
  l1(0, 0) = 1;
  l1(0, 1) = 1;
  l2(0, 0) = 1;
  l2(0, 1) = -1;
  LagrangianSubspace w1 = make_lagrangian(plane, l1);
  LagrangianSubspace w2 = make_lagrangian(plane, l2);
  CHECK_FALSE(same_component(w1, w2));

  CHECK_THROWS_AS(same_component(vp, w1), usage_error);
}

TEST_CASE("parity is an equivalence with two classes") {
  for (const Mat<Rat>& block :
       {diag({Rat(1)}), diag({Rat(1), Rat(3)}), diag({rat(1, 2), Rat(2), Rat(5)}),
        build_root_system("A3").killing_gram}) {
    QuadraticSpace dd = double_space(block, "test");
    std::vector<LagrangianSubspace> vs;
    for (const auto& rows : coordinate_lagrangians(block)) vs.push_back(make_lagrangian(dd, rows));

    // XOR relation across all triples
    for (const auto& x : vs)
      for (const auto& y : vs)
        for (const auto& z : vs)
          CHECK(same_component(x, z) == (same_component(x, y) == same_component(y, z)));

    // exactly two classes, of equal size
    size_t with_first = 0;
    for (const auto& y : vs) with_first += same_component(vs[0], y) ? 1 : 0;
    CHECK(with_first == vs.size() / 2);
  }
}

TEST_CASE("component dimension formula") {
  CHECK(lagrangian_grassmannian_dim(4) == 1);
  CHECK(lagrangian_grassmannian_dim(2) == 0);
  CHECK(lagrangian_grassmannian_dim(5) == 3);
  CHECK(lagrangian_grassmannian_dim(0) == 0);
  CHECK(lagrangian_grassmannian_dim(6) == 3);
  CHECK(lagrangian_grassmannian_dim(7) == 6);
  CHECK(lagrangian_grassmannian_dim(8) == 6);
  CHECK_THROWS_AS(lagrangian_grassmannian_dim(-2), usage_error);
}

TEST_CASE("isotropic lines of binary forms") {
  auto isotropic_in = [](const QuadraticSpace& sp, const IsotropicLines& found) {
    Mat<QExt> g = lift(sp.gram);
    for (int i = 0; i < 2; ++i) {
      std::vector<QExt> v = found.lines.row(i);
      QExt q;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) q += v[a] * g(a, b) * v[b];
      CHECK(q == QExt(0));
      CHECK_FALSE((v[0] == QExt(0) && v[1] == QExt(0)));
    }
    // the two lines are distinct: the 2x2 matrix of spans has full rank
    CHECK(rank_of(found.lines) == 2);
  };

  QuadraticSpace hyp = make_space(diag({rat(5, 3), rat(-5, 3)}), "hyperbolic");
  auto lines = isotropic_lines(hyp);
  CHECK(lines.split_over_q);
  CHECK(lines.radicand == 0);
  isotropic_in(hyp, lines);
  CHECK(lines.lines(0, 0) == QExt(1));
  CHECK(lines.lines(0, 1) == QExt(1));
  CHECK(lines.lines(1, 0) == QExt(-1));
  CHECK(lines.lines(1, 1) == QExt(1));

  // off-diagonal split plane
  Mat<Rat> off(2, 2);
  off(0, 1) = rat(1, 2);
  off(1, 0) = rat(1, 2);
  QuadraticSpace offsp = make_space(off, "offdiag");
  auto offlines = isotropic_lines(offsp);
  CHECK(offlines.split_over_q);
  isotropic_in(offsp, offlines);

  // sqrt(2) needed: certified not split over Q
  QuadraticSpace irr = make_space(diag({Rat(1), Rat(-2)}), "irrational");
  auto irrlines = isotropic_lines(irr);
  CHECK_FALSE(irrlines.split_over_q);
  CHECK(irrlines.radicand == 2);
  isotropic_in(irr, irrlines);

  // definite form: anisotropic even over R, lines live in Q(sqrt(-1))
  QuadraticSpace def = make_space(diag({Rat(1), Rat(1)}), "definite");
  auto deflines = isotropic_lines(def);
  CHECK_FALSE(deflines.split_over_q);
  CHECK(deflines.radicand == -1);
  isotropic_in(def, deflines);

  CHECK_THROWS_AS(isotropic_lines(make_space(diag({Rat(1), Rat(1), Rat(-1)}), "big")),
                  usage_error);
}

TEST_CASE("orthogonal basis") {
  Mat<Rat> hyp(2, 2);
  hyp(0, 1) = 1;
  hyp(1, 0) = 1;
  for (const Mat<Rat>& g :
       {build_root_system("A2").killing_gram, build_root_system("B3").killing_gram, hyp}) {
    Mat<Rat> u = orthogonal_basis(g);
    Mat<Rat> restricted = u * g * u.transpose();
    for (int i = 0; i < u.rows(); ++i)
      for (int j = 0; j < u.rows(); ++j) {
        if (i == j)
          CHECK(restricted(i, j) != 0);
        else
          CHECK(restricted(i, j) == 0);
      }
    CHECK(Subspace<Rat>::span(u) == Subspace<Rat>::full(g.rows()));
  }
}

TEST_CASE("reflections") {
  RootSystem b2 = build_root_system("B2");
  const Mat<Rat>& g = b2.killing_gram;
  std::vector<Rat> w{Rat(1), Rat(-2)};
  Mat<Rat> r = form_reflection(g, w);
  CHECK(r * r == Mat<Rat>::identity(2));
  CHECK(r.transpose() * g * r == g);
  std::vector<Rat> img = r.apply(w);
  for (int i = 0; i < 2; ++i) CHECK(img[i] == -w[i]);

  CHECK_THROWS_AS(form_reflection(double_space(diag({Rat(1)}), "p").gram, {Rat(1), Rat(1)}),
                  check_error);
}

TEST_CASE("seeded isometries are reproducible") {
  RootSystem a3 = build_root_system("A3");
  Rng r1(42), r2(42), r3(43);
  Mat<Rat> p1 = random_form_isometry(a3.killing_gram, r1);
  Mat<Rat> p2 = random_form_isometry(a3.killing_gram, r2);
  Mat<Rat> p3 = random_form_isometry(a3.killing_gram, r3);
  CHECK(p1 == p2);
  CHECK(p1 != p3);
}

TEST_CASE("extend_isometry realizes Witt extensions") {
  RootSystem a2 = build_root_system("A2");
  const Mat<Rat>& k = a2.killing_gram;

  // send H_{alpha_1} to H_{alpha_2}
  Mat<Rat> from(1, 2), to(1, 2);
  from(0, 0) = 1;
  to(0, 1) = 1;
  Mat<Rat> f = extend_isometry(k, from, to);
  CHECK(f.transpose() * k * f == k);
  CHECK(f.apply({Rat(1), Rat(0)}) == std::vector<Rat>{Rat(0), Rat(1)});

  // the complements of matched subspaces get matched too
  auto zs = cartan_subspaces(a2, {0}).z_part;
  auto zt = cartan_subspaces(a2, {1}).z_part;
  CHECK(zs.image_under(f) == zt);

  // diagram swap on the full Cartan
  Mat<Rat> swap_to(2, 2);
  swap_to(0, 1) = 1;
  swap_to(1, 0) = 1;
  Mat<Rat> fs = extend_isometry(k, Mat<Rat>::identity(2), swap_to);
  CHECK(fs.apply({Rat(1), Rat(0)}) == std::vector<Rat>{Rat(0), Rat(1)});
  CHECK(fs.apply({Rat(0), Rat(1)}) == std::vector<Rat>{Rat(1), Rat(0)});

  // identity extension
  Mat<Rat> fid = extend_isometry(k, Mat<Rat>::identity(2), Mat<Rat>::identity(2));
  CHECK(fid == Mat<Rat>::identity(2));

  // mismatched Gram tables are rejected: B2 roots have different lengths
  RootSystem b2 = build_root_system("B2");
  CHECK_THROWS_AS(extend_isometry(b2.killing_gram, from, to), usage_error);

  // hyperbolic plane: isotropic rows are fine while the form stays
  // nondegenerate on the span
  Mat<Rat> hyp(2, 2);
  hyp(0, 1) = 1;
  hyp(1, 0) = 1;
  Mat<Rat> iso_from(2, 2), iso_to(2, 2);
  iso_from(0, 0) = 1;
  iso_from(1, 1) = 1;
  iso_to(0, 0) = 2;  // rescaled hyperbolic pair has the same Gram table
  iso_to(1, 1) = rat(1, 2);
  Mat<Rat> fh = extend_isometry(hyp, iso_from, iso_to);
  CHECK(fh.transpose() * hyp * fh == hyp);
  CHECK(fh.apply({Rat(1), Rat(0)}) == std::vector<Rat>{Rat(2), Rat(0)});

  // a single isotropic row spans a degenerate subspace: rejected
  Mat<Rat> one_iso(1, 2);
  one_iso(0, 0) = 1;
  CHECK_THROWS_AS(extend_isometry(hyp, one_iso, one_iso), usage_error);
}

TEST_CASE("coordinate Lagrangians") {
  RootSystem a2 = build_root_system("A2");
  QuadraticSpace hh = double_space(a2.killing_gram, "h(+)h");
  auto coords = coordinate_lagrangians(a2.killing_gram);
  REQUIRE(coords.size() == 4);
  std::set<std::vector<std::vector<Rat>>> distinct;
  for (const auto& rows : coords) {
    CHECK(is_lagrangian(hh, rows));
    distinct.insert(Subspace<Rat>::span(rows).basis_rows());
  }
  CHECK(distinct.size() == 4);
}
