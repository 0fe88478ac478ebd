#include <doctest.h>

#include <random>

#include "opal/fincat.hpp"

using namespace opal;

namespace {

FinCategory sigma2() {
  FinCategory c;
  c.add_object("*");
  Mor t = c.add_morphism("t", 0, 0);
  c.freeze();
  c.set_composite(t, t, c.identity(0));
  return c;
}

}  // namespace

TEST_CASE("category axioms") {
  FinCategory p = FinCategory::poset({"0", "1"}, {{0, 1}});
  CHECK(p.check().ok());

  FinCategory s2 = sigma2();
  CHECK(s2.check().ok());

  // corrupt one composite: overriding t . id breaks the unit law
  FinCategory bad;
  bad.add_object("*");
  Mor t = bad.add_morphism("t", 0, 0);
  bad.freeze();
  bad.set_composite(t, t, bad.identity(0));
  bad.set_composite(t, bad.identity(0), bad.identity(0));
  auto rep = bad.check();
  CHECK(!rep.ok());
}

TEST_CASE("localization of the arrow poset is a groupoid") {
  FinCategory p = FinCategory::poset({"0", "1"}, {{0, 1}});
  Mor f = *p.morphism_by_name("0<1");
  LocalizedCategory loc = localize(p, {f}, 4);
  CHECK(loc.status() == LocalizationStatus::Complete);
  // two objects, every hom-set a singleton
  for (Obj a = 0; a < 2; ++a)
    for (Obj b = 0; b < 2; ++b) CHECK(loc.hom(a, b).size() == 1);
  auto inv = loc.inverse(loc.map_of(f));
  CHECK(inv.has_value());
  CHECK(check_localization_functor(loc).ok());
}

TEST_CASE("localizing at nothing or at identities returns the category") {
  FinCategory p = FinCategory::poset({"0", "1", "2"}, {{0, 1}, {1, 2}});
  LocalizedCategory l0 = localize(p, {}, 4);
  CHECK(l0.status() == LocalizationStatus::Complete);
  int homCount = 0;
  for (Obj a = 0; a < 3; ++a)
    for (Obj b = 0; b < 3; ++b) homCount += int(l0.hom(a, b).size());
  CHECK(homCount == p.morphism_count());

  std::vector<Mor> ids;
  for (Obj o = 0; o < 3; ++o) ids.push_back(p.identity(o));
  LocalizedCategory l1 = localize(p, ids, 4);
  CHECK(l1.status() == LocalizationStatus::Complete);
  homCount = 0;
  for (Obj a = 0; a < 3; ++a)
    for (Obj b = 0; b < 3; ++b) homCount += int(l1.hom(a, b).size());
  CHECK(homCount == p.morphism_count());
}

TEST_CASE("universal property spot check") {
  // F: poset01 -> sigma2 sending 0<1 to the (invertible) twist factors through
  // the localization
  FinCategory p = FinCategory::poset({"0", "1"}, {{0, 1}});
  FinCategory s2 = sigma2();
  Mor f = *p.morphism_by_name("0<1");
  Mor t = *s2.morphism_by_name("t");
  FinFunctor F{&p, &s2, {0, 0}, {}};
  F.on_mor.resize(p.morphism_count());
  F.on_mor[f] = t;
  F.on_mor[p.identity(0)] = s2.identity(0);
  F.on_mor[p.identity(1)] = s2.identity(0);
  CHECK(F.check().ok());

  LocalizedCategory loc = localize(p, {f}, 4);
  // evaluate each class member under F; inverses map to the inverse of F(f) = t
  auto evaluate = [&](const ZigZag& z) {
    Mor acc = s2.identity(0);
    for (const auto& l : z.word) {
      Mor img = F.on_mor[l.m];
      if (l.inverse) img = t;  // t is its own inverse
      acc = *s2.compose(img, acc);
    }
    return acc;
  };
  for (int cls = 0; cls < loc.class_count(); ++cls) {
    Mor v = evaluate(loc.representative(cls));
    for (const auto& member : loc.members(cls)) CHECK(evaluate(member) == v);
  }
}

TEST_CASE("rewrite confluence with union-find cross-check") {
  FinCategory p = FinCategory::poset({"0", "1"}, {{0, 1}});
  Mor f = *p.morphism_by_name("0<1");
  LocalizedCategory loc = localize(p, {f}, 5);

  std::mt19937_64 rng(41);
  int trials = 0;
  for (int c = 0; c < loc.class_count() && trials < 2000; ++c) {
    for (const auto& member : loc.members(c)) {
      // reduce in a random order of applicable positions until stuck
      ZigZag cur = member;
      while (true) {
        std::vector<ZigZag> nexts;
        for (int pos = 0; pos < int(cur.word.size()); ++pos) {
          auto r = loc.reduce_at_position(cur, pos);
          if (r) nexts.push_back(*r);
        }
        if (nexts.empty()) break;
        cur = nexts[rng() % nexts.size()];
      }
      // random-order result lands in the same union-find class
      auto cls = loc.class_of(cur);
      REQUIRE(cls.has_value());
      CHECK(*cls == c);
      if (++trials >= 2000) break;
    }
  }
  CHECK(trials > 10);
}
