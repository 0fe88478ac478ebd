#include <doctest.h>

#include "opal/bv.hpp"
#include "opal/fixtures.hpp"

using namespace opal;

namespace {

QMat m2_mult() {
  QMat m(4, 16);
  auto idx = [](int i, int j) { return i * 2 + j; };
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          if (j == k) m.at(idx(i, l), idx(i, j) * 4 + idx(k, l)) = 1;
  return m;
}
QVec m2_unit() { return {Q(1), Q(0), Q(0), Q(1)}; }

QMat fold_mult(const QMat& mult, const QVec& unit, int dim, int n) {
  if (n == 0) {
    QMat m(dim, 1);
    for (int i = 0; i < dim; ++i) m.at(i, 0) = unit[i];
    return m;
  }
  QMat acc = QMat::identity(dim);
  for (int k = 1; k < n; ++k) acc = mult * acc.kron(QMat::identity(dim));
  return acc;
}

VectAlgebra as_algebra(const SetOperad& as, const QMat& mult, const QVec& unit, int dim) {
  VectAlgebra x(&as);
  x.set_dim(0, dim);
  for (const auto& e : as.all_elements()) {
    int n = as.profile_of_el(e).arity();
    Perm sigma = all_perms(n)[e.idx];
    QMat theta = fold_mult(mult, unit, dim, n);
    if (n >= 2) theta = theta * tensor_perm_matrix(std::vector<int>(n, dim), perm_inverse(sigma));
    x.set_map(e, theta);
  }
  return x;
}

}  // namespace

TEST_CASE("W_0 recovers the operad entry") {
  const auto& fx = SiteFixtures::get();
  SetOperad cdiag = build_cdiag(*fx.poset01, 4);
  for (const Profile& p : {Profile{{0}, 1}, Profile{{0}, 0}, Profile{{1}, 1}}) {
    BvEntry e = build_wn_entry(cdiag, p, 0);
    CHECK(e.quot.quotient.dim(0) == cdiag.entry_size(p));
    for (int k = 1; k <= e.quot.quotient.top_degree(); ++k) CHECK(e.quot.quotient.dim(k) == 0);
    AugmentationData aug = augmentation(e);
    CHECK(aug.report.ok());
  }
}

TEST_CASE("the two-color filtration at level one") {
  const auto& fx = SiteFixtures::get();
  SetOperad cdiag = build_cdiag(*fx.poset01, 4);
  Profile p{{0}, 1};
  BvEntry e1 = build_wn_entry(cdiag, p, 1);
  // pre-quotient dims: degree 0: 5, degree 1: 2
  CHECK(e1.pre.dim(0) == 5);
  CHECK(e1.pre.dim(1) == 2);
  auto h = e1.homology();
  CHECK(h[0] == 1);
  CHECK(h[1] == 0);
  AugmentationData aug = augmentation(e1);
  CHECK(aug.report.ok());

  BvEntry e0 = build_wn_entry(cdiag, p, 0);
  ChainMap iota = filtration_inclusion(e0, e1);
  CHECK(iota.injective());
  CHECK(homology(e0.quot.quotient)[0] == homology(e1.quot.quotient)[0]);
}

TEST_CASE("deeper filtration for the diagram operad") {
  const auto& fx = SiteFixtures::get();
  SetOperad cdiag = build_cdiag(*fx.poset01, 4);
  Profile p{{0}, 1};
  BvEntry prev = build_wn_entry(cdiag, p, 0);
  for (int n = 1; n <= 3; ++n) {
    BvEntry cur = build_wn_entry(cdiag, p, n);
    auto h = cur.homology();
    CHECK(h[0] == cdiag.entry_size(p));
    for (int k = 1; k <= n && k <= int(h.size()) - 1; ++k) CHECK(h[k] == 0);
    AugmentationData aug = augmentation(cur);
    CHECK(aug.report.ok());
    ChainMap iota = filtration_inclusion(prev, cur);
    CHECK(iota.injective());
    prev = cur;
  }
}

TEST_CASE("aqft operad entries on the diamond") {
  const auto& fx = SiteFixtures::get();
  SetOperad ocbar = build_aqft_operad(fx.diamond_wedge, 4);
  Color a = *ocbar.color_by_name("a"), b = *ocbar.color_by_name("b"), one = *ocbar.color_by_name("1");
  for (const Profile& p : {Profile{{a, b}, one}, Profile{{a, a}, one}, Profile{{}, a}}) {
    BvEntry e0 = build_wn_entry(ocbar, p, 0);
    CHECK(e0.quot.quotient.dim(0) == ocbar.entry_size(p));
    BvEntry e1 = build_wn_entry(ocbar, p, 1);
    auto h = e1.homology();
    CHECK(h[0] == ocbar.entry_size(p));
    if (h.size() > 1) CHECK(h[1] == 0);
    AugmentationData aug = augmentation(e1);
    CHECK(aug.report.ok());
    CHECK(filtration_inclusion(e0, e1).injective());
  }
}

TEST_CASE("composition against the augmentation") {
  const auto& fx = SiteFixtures::get();
  SetOperad cdiag = build_cdiag(*fx.poset01, 4);
  CHECK(w_composition_check(cdiag, 2, 2).ok());

  SetOperad as = build_as(4);
  CHECK(w_composition_check(as, 2, 2).ok());
}

TEST_CASE("coherence of the matrix algebra over the associative operad") {
  SetOperad as = build_as(3);
  VectAlgebra m2 = as_algebra(as, m2_mult(), m2_unit(), 4);
  REQUIRE(m2.check().ok());
  CHECK(check_w_algebra(as, m2, 2).ok());
}
