#pragma once

#include <optional>
#include <set>
#include <vector>

#include "opal/fincat.hpp"
#include "opal/report.hpp"

namespace opal {

// A symmetric, composition-stable relation on same-codomain morphism pairs.
class OrthRelation {
 public:
  OrthRelation() = default;
  OrthRelation(const FinCategory* base, std::set<std::pair<Mor, Mor>> pairs);

  const FinCategory& base() const { return *base_; }
  bool orthogonal(Mor f, Mor g) const;
  const std::set<std::pair<Mor, Mor>>& pairs() const { return pairs_; }

  CheckReport check() const;

  bool operator==(const OrthRelation& o) const { return pairs_ == o.pairs_; }

 private:
  const FinCategory* base_ = nullptr;
  std::set<std::pair<Mor, Mor>> pairs_;  // stored with both orders present
};

// Least orthogonality relation containing the generators.
OrthRelation close_orthogonality(const FinCategory& base,
                                 const std::vector<std::pair<Mor, Mor>>& generators);
OrthRelation minimal_orthogonality(const FinCategory& base);
OrthRelation maximal_orthogonality(const FinCategory& base);

// A configuration is a finite sequence of morphisms with a common codomain.
using Config = std::vector<Mor>;

// Distinguished families of configurations, materialized up to an arity bound.
class ConfiguredStructure {
 public:
  ConfiguredStructure() = default;
  ConfiguredStructure(const FinCategory* base, int arity_bound, std::set<Config> configs);

  const FinCategory& base() const { return *base_; }
  int arity_bound() const { return arity_bound_; }
  bool member(Obj target, const Config& c) const;
  // all configurations with the given codomain and arity
  std::vector<Config> configurations(Obj target, int arity) const;
  const std::set<std::pair<Obj, Config>>& all() const { return configs_; }

  CheckReport check() const;

  bool operator==(const ConfiguredStructure& o) const { return configs_ == o.configs_; }

 private:
  const FinCategory* base_ = nullptr;
  int arity_bound_ = 0;
  // empty configurations carry the target object explicitly
  std::set<std::pair<Obj, Config>> configs_;
};

// Least configured structure containing the generators, up to the arity bound.
ConfiguredStructure close_configurations(const FinCategory& base,
                                         const std::vector<Config>& generators, int arity_bound,
                                         const std::vector<Obj>& empty_targets = {});
ConfiguredStructure minimal_configured(const FinCategory& base, int arity_bound);
ConfiguredStructure maximal_configured(const FinCategory& base, int arity_bound);

// Configurations = pairwise orthogonal sequences.
ConfiguredStructure psi(const OrthRelation& o, int arity_bound);
// Orthogonal pairs = binary configurations.
OrthRelation phi(const ConfiguredStructure& k);

struct UnitComparison {
  bool equal;
  Obj witness_target = -1;
  Config witness;  // a configuration of Psi(Phi(K)) missing from K when unequal
};
UnitComparison compare_unit(const ConfiguredStructure& k);

std::string config_str(const FinCategory& c, Obj target, const Config& cfg);

}  // namespace opal
