#include <doctest.h>

#include "opal/fixtures.hpp"
#include "opal/operads.hpp"

using namespace opal;

TEST_CASE("classical operads pass the axiom suite") {
  SetOperad as = build_as(4);
  CHECK(as.entry_size(Profile{{0, 0, 0}, 0}) == 6);
  CHECK(as.entry_size(Profile{{}, 0}) == 1);
  CHECK(as.check().ok());

  SetOperad com = build_com(4);
  for (int n = 0; n <= 4; ++n) CHECK(com.entry_size(Profile{std::vector<Color>(n, 0), 0}) == 1);
  CHECK(com.check().ok());
}

TEST_CASE("diagram-style operads") {
  const auto& fx = SiteFixtures::get();
  SetOperad cdiag = build_cdiag(*fx.poset01, 4);
  CHECK(cdiag.check().ok());
  // unary entries are the hom-sets, everything else is empty
  CHECK(cdiag.entry_size(Profile{{0}, 1}) == 1);
  CHECK(cdiag.entry_size(Profile{{1}, 0}) == 0);
  CHECK(cdiag.entry_size(Profile{{0, 0}, 1}) == 0);

  SetOperad oc = build_oc(*fx.poset01, 4);
  CHECK(oc.entry_size(Profile{{0, 0}, 1}) == 2);  // |Sigma_2 x C(0,1)^2|
  CHECK(oc.check().ok());

  SetOperad comc = build_comc(*fx.poset01, 4);
  CHECK(comc.entry_size(Profile{{0, 0}, 1}) == 1);
  CHECK(comc.check().ok());

  SetOperad oc3 = build_oc(*fx.poset012, 3);
  CHECK(oc3.check().ok());
  SetOperad comc3 = build_comc(*fx.poset012, 3);
  CHECK(comc3.check().ok());
  SetOperad cdiag3 = build_cdiag(*fx.poset012, 3);
  CHECK(cdiag3.check().ok());
}

TEST_CASE("tree operad under grafting") {
  SetOperad treeop = build_tree_operad(1, 2, 3);
  CHECK(treeop.partial());
  CHECK(treeop.check().ok());
  // unit is the exceptional edge; composing with it is neutral
  auto up = treeop.unit(0);
  auto cor2 = treeop.element_by_name(Profile{{0, 0}, 0}, PlanarTree::corolla({{0, 0}, 0}).str());
  REQUIRE(cor2.has_value());
  CHECK(*treeop.compose_at(*cor2, 0, up) == *cor2);
}

TEST_CASE("aqft operad on the diamond") {
  const auto& fx = SiteFixtures::get();
  SetOperad ocbar = build_aqft_operad(fx.diamond_wedge, 4);
  CHECK(ocbar.check().ok());

  const FinCategory& d = *fx.diamond;
  Color a = *ocbar.color_by_name("a"), b = *ocbar.color_by_name("b"), one = *ocbar.color_by_name("1");
  // unary entries biject with hom-sets
  CHECK(ocbar.entry_size(Profile{{a}, one}) == 1);
  CHECK(ocbar.entry_size(Profile{{one}, a}) == 0);
  // orthogonal inputs are identified, parallel ones are not
  CHECK(ocbar.entry_size(Profile{{a, b}, one}) == 1);
  CHECK(ocbar.entry_size(Profile{{a, a}, one}) == 2);
  // nullary entries are singletons
  CHECK(ocbar.entry_size(Profile{{}, a}) == 1);
  (void)d;
}

TEST_CASE("aqft operad on the minimal and maximal sites") {
  const auto& fx = SiteFixtures::get();
  // empty orthogonality: O_Cbar-min equals O_C entrywise
  SetOperad min = build_aqft_operad(fx.poset01_min, 3);
  SetOperad oc = build_oc(*fx.poset01, 3);
  CHECK(compare_entrywise(min, oc).ok());

  // maximal orthogonality on the arrow category: entries are plain tuples
  SetOperad max = build_aqft_operad(fx.poset01_max, 3);
  CHECK(max.check().ok());
  CHECK(max.entry_size(Profile{{0, 0}, 1}) == 1);
}

TEST_CASE("pfa operad of configured structures") {
  const auto& fx = SiteFixtures::get();
  SetOperad pfa = build_pfa_operad(fx.interval_cfg);
  CHECK(pfa.check().ok());
  Color i1 = *pfa.color_by_name("I1"), i2 = *pfa.color_by_name("I2"), v = *pfa.color_by_name("V");
  CHECK(pfa.entry_size(Profile{{i1, i2}, v}) == 1);
  CHECK(pfa.entry_size(Profile{{i1, i1}, v}) == 0);

  // minimal configured structure: only empty and unary entries
  SetOperad mn = build_pfa_operad(fx.poset01_cfg_min);
  CHECK(mn.check().ok());
  for (int pid = 0; pid < mn.profile_count(); ++pid)
    if (mn.entry_size(pid) > 0) CHECK(mn.profile_of(pid).arity() <= 1);

  // maximal configured structure agrees with Com^C entrywise
  SetOperad mx = build_pfa_operad(fx.poset01_cfg_max);
  SetOperad comc = build_comc(*fx.poset01, 4);
  CHECK(compare_entrywise(mx, comc).ok());
}

TEST_CASE("comparison morphism delta") {
  const auto& fx = SiteFixtures::get();
  // the generic fixture
  {
    SetOperad pfa = build_pfa_operad(fx.interval_cfg);
    SetOperad ocbar = build_aqft_operad(phi(fx.interval_cfg), 4);
    OperadMorphism delta = comparison_delta(fx.interval_cfg, pfa, ocbar);
    CHECK(delta.check().ok());
  }
  // minimal: bijective on nullary and unary entries
  {
    SetOperad pfa = build_pfa_operad(fx.poset01_cfg_min);
    SetOperad ocbar = build_aqft_operad(phi(fx.poset01_cfg_min), 4);
    OperadMorphism delta = comparison_delta(fx.poset01_cfg_min, pfa, ocbar);
    CHECK(delta.check().ok());
    for (int pid = 0; pid < pfa.profile_count(); ++pid) {
      if (pfa.profile_of(pid).arity() > 1) continue;
      CHECK(pfa.entry_size(pid) == ocbar.entry_size(pfa.profile_of(pid)));
    }
  }
  // maximal: an entrywise bijection
  {
    SetOperad pfa = build_pfa_operad(fx.poset01_cfg_max);
    SetOperad ocbar = build_aqft_operad(maximal_orthogonality(*fx.poset01), 4);
    OperadMorphism delta = comparison_delta(fx.poset01_cfg_max, pfa, ocbar);
    CHECK(delta.check().ok());
    CHECK(delta.entrywise_bijective());
  }
}

TEST_CASE("tree structure morphism") {
  SetOperad as = build_as(4);
  Profile p2{{0, 0}, 0};
  auto id2 = *as.element_by_name(p2, perm_str(perm_id(2)));
  auto sw = *as.element_by_name(p2, perm_str({1, 0}));

  // corolla acts as the identity
  PlanarTree cor = PlanarTree::corolla(p2);
  CHECK(*as.structure_map(cor, {sw}) == sw);

  // the exceptional edge gives the unit
  CHECK(*as.structure_map(PlanarTree::exceptional(0), {}) == as.unit(0));

  // a two-level tree realizes the block composition
  PlanarTree two = PlanarTree::two_level(p2, {{0, 0}, {0}});
  auto one = *as.element_by_name(Profile{{0}, 0}, perm_str(perm_id(1)));
  auto viaTree = *as.structure_map(two, {sw, id2, one});
  auto viaGamma = *as.gamma(sw, {id2, one});
  CHECK(viaTree == viaGamma);

  // gamma over a substituted tree agrees with iterated gamma
  PlanarTree lin = PlanarTree::linear({0, 0, 0});
  auto viaLin = *as.structure_map(lin, {one, one});
  CHECK(viaLin == one);
}

TEST_CASE("operad localization of the interval pfa operad") {
  const auto& fx = SiteFixtures::get();
  SetOperad pfa = build_pfa_operad(psi(fx.poset01_min, 2));
  Color c0 = 0, c1 = 1;
  Mor s = *fx.poset01->morphism_by_name("0<1");
  auto sEl = *pfa.element_by_name(Profile{{c0}, c1}, pfa_element_name({fx.poset01->morphism_name(s)}));

  LocalizedOperad loc = localize_operad(pfa, {sEl}, 3);
  CHECK(loc.status == LocalizationStatus::Complete);
  CHECK(loc.confluent);

  // ell(s) is invertible and the localized unary entries are singletons
  auto ls = loc.ell(sEl);
  CHECK(loc.op.entry_size(Profile{{c0}, c1}) == 1);
  CHECK(loc.op.entry_size(Profile{{c1}, c0}) == 1);
  auto inv = loc.op.elements(Profile{{c1}, c0}).front();
  CHECK(*loc.op.compose_at(ls, 0, inv) == loc.op.unit(c1));
  CHECK(*loc.op.compose_at(inv, 0, ls) == loc.op.unit(c0));

  // localizing at nothing changes nothing
  LocalizedOperad noop = localize_operad(pfa, {}, 3);
  CHECK(noop.status == LocalizationStatus::Complete);
  for (int pid = 0; pid < pfa.profile_count(); ++pid)
    CHECK(noop.op.entry_size(pfa.profile_of(pid)) == pfa.entry_size(pid));

  // localizing at a unit keeps the unit
  auto unitEl = pfa.unit(c0);
  LocalizedOperad locu = localize_operad(pfa, {unitEl}, 3);
  CHECK(locu.ell(unitEl) == locu.op.unit(c0));

  // the localization morphism respects composition on a sample
  auto id1 = pfa.unit(c1);
  CHECK(loc.ell(*pfa.compose_at(id1, 0, sEl)) == *loc.op.compose_at(loc.ell(id1), 0, loc.ell(sEl)));
}

TEST_CASE("fault injection is detected") {
  // corrupt one composition of As within the correct entry
  SetOperad bad = build_as(3);
  auto base = std::make_shared<SetOperad>(build_as(3));
  Profile p2{{0, 0}, 0};
  auto sw = *base->element_by_name(p2, perm_str({1, 0}));
  auto inner_comp = [base, sw](const SetOperad&, SetOperad::El p, int i,
                               SetOperad::El q) -> std::optional<SetOperad::El> {
    auto r = base->compose_at(p, i, q);
    if (r && p == sw && i == 0 && q == sw)
      return SetOperad::El{r->pid, (r->idx + 1) % base->entry_size(r->pid)};
    return r;
  };
  auto inner_act = [base](const SetOperad&, SetOperad::El p,
                          const Perm& s) -> std::optional<SetOperad::El> {
    return base->act(p, s);
  };
  bad.set_rules(inner_comp, inner_act);
  auto rep = bad.check();
  CHECK(!rep.ok());
}
