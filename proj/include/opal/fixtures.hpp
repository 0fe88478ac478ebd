#pragma once

#include <memory>
#include <string>
#include <vector>

#include "opal/fincat.hpp"
#include "opal/sites.hpp"

namespace opal {

// Built-in categories and sites used across the suites.  Categories are owned
// here so that relations and structures can hold stable pointers.
struct SiteFixtures {
  // categories
  std::unique_ptr<FinCategory> poset01;    // 0 < 1
  std::unique_ptr<FinCategory> poset012;   // 0 < 1 < 2
  std::unique_ptr<FinCategory> diamond;    // 0 < a, b < 1 with a, b incomparable
  std::unique_ptr<FinCategory> interval2;  // empty < I1, I2 < V; I1 left of I2
  std::unique_ptr<FinCategory> star4;      // b1, b2, b3 -> a
  std::unique_ptr<FinCategory> sigma2;     // one object, one involution

  // orthogonal sites
  OrthRelation diamond_wedge;    // generated by the wedge-zero pair (a->1, b->1)
  OrthRelation interval_wedge;   // disjointness on the interval lattice
  OrthRelation poset01_min, poset01_max;
  OrthRelation star_pairs;       // f_i  perp  f_j for i != j

  // configured sites (arity bound 4)
  ConfiguredStructure diamond_cfg;
  ConfiguredStructure interval_cfg;
  ConfiguredStructure poset01_cfg_min, poset01_cfg_max;
  ConfiguredStructure star_cfg;        // binary configurations only
  ConfiguredStructure star_cfg_triple; // with the triple adjoined

  static const SiteFixtures& get();
};

// Orthogonality from a bounded lattice: (f: a -> c) perp (g: b -> c) iff the
// meet of a and b is the least element.
OrthRelation lattice_orthogonality(const FinCategory& lattice,
                                   const std::vector<std::vector<int>>& meet, int least);

}  // namespace opal
