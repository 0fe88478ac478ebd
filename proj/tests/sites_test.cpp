#include <doctest.h>

#include "opal/fixtures.hpp"
#include "opal/sites.hpp"

using namespace opal;

TEST_CASE("orthogonality closure on the diamond") {
  const auto& fx = SiteFixtures::get();
  const FinCategory& d = *fx.diamond;
  Mor a1 = *d.morphism_by_name("a<1"), b1 = *d.morphism_by_name("b<1");
  OrthRelation closed = close_orthogonality(d, {{a1, b1}});
  CHECK(closed.check().ok());
  // pre-composites through 0 are included
  Mor z1 = *d.morphism_by_name("0<1");
  CHECK(closed.orthogonal(z1, b1));
  CHECK(closed.orthogonal(b1, z1));
  CHECK(closed.orthogonal(z1, z1));
  // and nothing relates a to itself
  CHECK(!closed.orthogonal(a1, a1));
  // the closure sits inside the full wedge relation, which also carries
  // lower-codomain pairs like (0<a, 0<a)
  for (auto pr : closed.pairs()) CHECK(fx.diamond_wedge.orthogonal(pr.first, pr.second));
  Mor za = *d.morphism_by_name("0<a");
  CHECK(fx.diamond_wedge.orthogonal(za, za));
  CHECK(!closed.orthogonal(za, za));
  CHECK(fx.diamond_wedge.check().ok());

  // closing the empty set gives the empty relation; closing a closed relation fixes it
  CHECK(close_orthogonality(d, {}).pairs().empty());
  std::vector<std::pair<Mor, Mor>> gens(closed.pairs().begin(), closed.pairs().end());
  CHECK(close_orthogonality(d, gens) == closed);
}

TEST_CASE("configured structures on bounded lattices") {
  const auto& fx = SiteFixtures::get();
  CHECK(fx.diamond_cfg.check().ok());
  CHECK(fx.interval_cfg.check().ok());
  const FinCategory& d = *fx.diamond;
  Mor a1 = *d.morphism_by_name("a<1"), b1 = *d.morphism_by_name("b<1");
  Mor z1 = *d.morphism_by_name("0<1");
  CHECK(fx.diamond_cfg.member(3, {a1, b1}));
  CHECK(!fx.diamond_cfg.member(3, {a1, a1}));
  // (d; {0 -> d}^n) is a configuration for all n up to the bound
  CHECK(fx.diamond_cfg.member(3, {z1, z1, z1, z1}));

  // generated closure from the disjoint pairs reproduces the lattice structure
  ConfiguredStructure gen = close_configurations(d, {{a1, b1}}, 4);
  CHECK(gen.check().ok());
  CHECK(gen.member(3, {a1, b1}));
  CHECK(gen.member(3, {z1, z1}));
}

TEST_CASE("minimal and maximal configured structures") {
  const auto& fx = SiteFixtures::get();
  const FinCategory& p = *fx.poset01;
  ConfiguredStructure mn = minimal_configured(p, 4);
  CHECK(mn.check().ok());
  for (const auto& [t, cfg] : mn.all()) CHECK(cfg.size() <= 1);

  ConfiguredStructure mx = maximal_configured(p, 4);
  CHECK(mx.check().ok());
  Mor f = *p.morphism_by_name("0<1");
  CHECK(mx.member(1, {f, f, f}));

  // closures from nothing/everything reproduce them
  CHECK(close_configurations(p, {}, 4) == mn);
  std::vector<Config> allPairs;
  for (Mor a = 0; a < p.morphism_count(); ++a)
    for (Mor b = 0; b < p.morphism_count(); ++b)
      if (p.cod(a) == p.cod(b)) allPairs.push_back({a, b});
  CHECK(close_configurations(p, allPairs, 4) == mx);
}

TEST_CASE("psi and phi") {
  const auto& fx = SiteFixtures::get();
  // Psi of the minimal/maximal orthogonality is the minimal/maximal configured structure
  CHECK(psi(fx.poset01_min, 4) == fx.poset01_cfg_min);
  CHECK(psi(fx.poset01_max, 4) == fx.poset01_cfg_max);

  // Psi on the diamond keeps the disjoint pair and drops the repeated one
  const FinCategory& d = *fx.diamond;
  Mor a1 = *d.morphism_by_name("a<1"), b1 = *d.morphism_by_name("b<1");
  ConfiguredStructure cfg = psi(fx.diamond_wedge, 4);
  CHECK(cfg.member(3, {a1, b1}));
  CHECK(!cfg.member(3, {a1, a1}));

  // Phi . Psi is the identity on every built-in orthogonal site
  for (const OrthRelation* o :
       {&fx.diamond_wedge, &fx.interval_wedge, &fx.poset01_min, &fx.poset01_max, &fx.star_pairs}) {
    CHECK(phi(psi(*o, 4)) == *o);
  }

  // Phi of the minimal configured structure is the empty relation
  CHECK(phi(fx.poset01_cfg_min).pairs().empty());
}

TEST_CASE("unit comparison finds the star witness") {
  const auto& fx = SiteFixtures::get();
  // Psi-images are fixed by the unit
  CHECK(compare_unit(fx.diamond_cfg).equal);
  CHECK(compare_unit(fx.poset01_cfg_min).equal);
  CHECK(compare_unit(fx.poset01_cfg_max).equal);

  // the pairwise star is strictly smaller than Psi(Phi(-)): the triple witness
  CHECK(fx.star_cfg.check().ok());
  auto cmp = compare_unit(fx.star_cfg);
  CHECK(!cmp.equal);
  CHECK(cmp.witness.size() == 3);

  // the triple-augmented structure has the same Phi-image
  CHECK(phi(fx.star_cfg) == phi(fx.star_cfg_triple));
  CHECK(!(fx.star_cfg == fx.star_cfg_triple));
  CHECK(compare_unit(fx.star_cfg_triple).equal);
}
