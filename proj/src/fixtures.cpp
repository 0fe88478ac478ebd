#include "opal/fixtures.hpp"

#include <stdexcept>

namespace opal {

OrthRelation lattice_orthogonality(const FinCategory& lattice,
                                   const std::vector<std::vector<int>>& meet, int least) {
  std::set<std::pair<Mor, Mor>> pairs;
  for (Mor f = 0; f < lattice.morphism_count(); ++f)
    for (Mor g = 0; g < lattice.morphism_count(); ++g) {
      if (lattice.cod(f) != lattice.cod(g)) continue;
      if (meet[lattice.dom(f)][lattice.dom(g)] == least) pairs.insert({f, g});
    }
  return OrthRelation(&lattice, std::move(pairs));
}

namespace {

SiteFixtures build() {
  SiteFixtures fx;
  fx.poset01 = std::make_unique<FinCategory>(FinCategory::poset({"0", "1"}, {{0, 1}}));
  fx.poset012 = std::make_unique<FinCategory>(FinCategory::poset({"0", "1", "2"}, {{0, 1}, {1, 2}}));
  fx.diamond = std::make_unique<FinCategory>(
      FinCategory::poset({"0", "a", "b", "1"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
  fx.interval2 = std::make_unique<FinCategory>(
      FinCategory::poset({"empty", "I1", "I2", "V"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));

  {
    FinCategory star;
    star.add_object("a");
    star.add_object("b1");
    star.add_object("b2");
    star.add_object("b3");
    star.add_morphism("f1", 1, 0);
    star.add_morphism("f2", 2, 0);
    star.add_morphism("f3", 3, 0);
    star.freeze();
    fx.star4 = std::make_unique<FinCategory>(std::move(star));
  }
  {
    FinCategory s2;
    s2.add_object("*");
    Mor t = s2.add_morphism("t", 0, 0);
    s2.freeze();
    s2.set_composite(t, t, s2.identity(0));
    fx.sigma2 = std::make_unique<FinCategory>(std::move(s2));
  }

  // meet tables for the diamond-shaped lattices (objects 0, a, b, 1)
  std::vector<std::vector<int>> meet = {
      {0, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 2, 2}, {0, 1, 2, 3}};
  fx.diamond_wedge = lattice_orthogonality(*fx.diamond, meet, 0);
  fx.interval_wedge = lattice_orthogonality(*fx.interval2, meet, 0);
  fx.poset01_min = minimal_orthogonality(*fx.poset01);
  fx.poset01_max = maximal_orthogonality(*fx.poset01);
  {
    const FinCategory& c = *fx.star4;
    Mor f1 = *c.morphism_by_name("f1"), f2 = *c.morphism_by_name("f2"), f3 = *c.morphism_by_name("f3");
    fx.star_pairs = close_orthogonality(c, {{f1, f2}, {f1, f3}, {f2, f3}});
  }

  const int bound = 4;
  fx.diamond_cfg = psi(fx.diamond_wedge, bound);
  fx.interval_cfg = psi(fx.interval_wedge, bound);
  fx.poset01_cfg_min = minimal_configured(*fx.poset01, bound);
  fx.poset01_cfg_max = maximal_configured(*fx.poset01, bound);
  {
    const FinCategory& c = *fx.star4;
    Mor f1 = *c.morphism_by_name("f1"), f2 = *c.morphism_by_name("f2"), f3 = *c.morphism_by_name("f3");
    fx.star_cfg = close_configurations(c, {{f1, f2}, {f1, f3}, {f2, f3}}, bound);
    fx.star_cfg_triple = close_configurations(c, {{f1, f2, f3}}, bound);
  }
  return fx;
}

}  // namespace

const SiteFixtures& SiteFixtures::get() {
  static const SiteFixtures fx = build();
  return fx;
}

}  // namespace opal
