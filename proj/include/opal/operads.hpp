#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "opal/fincat.hpp"
#include "opal/perm.hpp"
#include "opal/report.hpp"
#include "opal/sites.hpp"
#include "opal/trees.hpp"

namespace opal {

// A Set-valued colored operad with finite entries up to an arity bound.
// Partial compositions are the primary data; gamma and the tree structure
// morphisms are derived.  Entry composition and the symmetric action are
// supplied as rules by the builders and memoized here.
class SetOperad {
 public:
  struct El {
    int pid = -1;
    int idx = -1;
    auto operator<=>(const El&) const = default;
  };

  using CompRule = std::function<std::optional<El>(const SetOperad&, El, int, El)>;
  using ActRule = std::function<std::optional<El>(const SetOperad&, El, const Perm&)>;

  // construction API (used by the builders)
  Color add_color(std::string name);
  El add_element(const Profile& p, std::string name);
  void add_alias(const Profile& p, const std::string& alias, El el);
  void set_unit(Color c, El e);
  void set_rules(CompRule comp, ActRule act);
  void set_arity_bound(int b) { arity_bound_ = b; }
  void set_partial(bool p) { partial_ = p; }

  int color_count() const { return int(colors_.size()); }
  const std::string& color_name(Color c) const { return colors_[c]; }
  std::optional<Color> color_by_name(const std::string& n) const;
  int arity_bound() const { return arity_bound_; }
  bool partial() const { return partial_; }

  int profile_id(const Profile& p) const;  // -1 when the entry is empty
  const Profile& profile_of(int pid) const { return profiles_[pid]; }
  int profile_count() const { return int(profiles_.size()); }
  int entry_size(int pid) const { return int(elems_[pid].size()); }
  int entry_size(const Profile& p) const;
  const std::string& element_name(El e) const { return elems_[e.pid][e.idx]; }
  const Profile& profile_of_el(El e) const { return profiles_[e.pid]; }
  std::optional<El> element_by_name(const Profile& p, const std::string& name) const;
  std::optional<El> resolve(const Profile& p, const std::string& name) const;  // names + aliases
  std::vector<El> elements(const Profile& p) const;
  std::vector<El> all_elements() const;

  El unit(Color c) const;
  std::optional<El> compose_at(El p, int i, El q) const;
  std::optional<El> act(El p, const Perm& sigma) const;
  std::optional<El> gamma(El p, const std::vector<El>& qs) const;
  // gamma_T on a decoration of T's vertices, in preorder.
  std::optional<El> structure_map(const PlanarTree& t, const std::vector<El>& dec) const;

  CheckReport check() const;

 private:
  std::vector<std::string> colors_;
  int arity_bound_ = 4;
  bool partial_ = false;
  std::vector<Profile> profiles_;
  std::map<Profile, int> pid_;
  std::vector<std::vector<std::string>> elems_;
  std::map<std::pair<int, std::string>, int> elem_by_name_;
  std::map<std::pair<int, std::string>, int> alias_;
  std::vector<El> units_;
  CompRule comp_rule_;
  ActRule act_rule_;
  mutable std::map<std::tuple<int, int, int, int, int>, std::optional<El>> comp_memo_;
  mutable std::map<std::tuple<int, int, Perm>, std::optional<El>> act_memo_;
};

struct OperadMorphism {
  const SetOperad* src = nullptr;
  const SetOperad* dst = nullptr;
  std::function<Color(Color)> on_color;
  std::function<std::optional<SetOperad::El>(SetOperad::El)> on_el;

  CheckReport check() const;
  bool entrywise_bijective() const;
};

// ---- named constructions ----

// associative operad: entries are permutations, composition by block assembly
SetOperad build_as(int arity_bound);
// commutative operad: singleton entries
SetOperad build_com(int arity_bound);
// diagram operad of a small category: unary entries are the hom-sets
SetOperad build_cdiag(const FinCategory& c, int arity_bound = 4);
// operad for diagrams of monoids: entries Sigma_n x prod C(c_j, d)
SetOperad build_oc(const FinCategory& c, int arity_bound);
// operad for diagrams of commutative monoids: entries prod C(c_j, d)
SetOperad build_comc(const FinCategory& c, int arity_bound);
// operad of colored trees under grafting, truncated at an internal-edge bound
SetOperad build_tree_operad(int num_colors, int edge_bound, int arity_bound);

// AQFT operad of an orthogonal category: entries are transposition classes
// [sigma, f] with adjacent orthogonal entries identified
SetOperad build_aqft_operad(const OrthRelation& site, int arity_bound);
std::string aqft_element_name(const Perm& sigma, const std::vector<std::string>& mor_names);
std::pair<Perm, std::vector<std::string>> parse_aqft_element_name(const std::string& name);
std::vector<std::string> parse_pfa_element_name(const std::string& name);

// prefactorization operad of a configured category: entries are configurations
SetOperad build_pfa_operad(const ConfiguredStructure& site);
std::string pfa_element_name(const std::vector<std::string>& mor_names);

// comparison morphism O_Chat -> O_Cbar; `aqft` must be built on phi(site)
OperadMorphism comparison_delta(const ConfiguredStructure& site, const SetOperad& pfa,
                                const SetOperad& aqft);

// identity-on-colors morphism matching elements by resolved names
OperadMorphism name_matching_morphism(const SetOperad& src, const SetOperad& dst);
// entrywise equality through resolved names, both directions
CheckReport compare_entrywise(const SetOperad& a, const SetOperad& b);

// ---- localization ----

struct DecoratedTree {
  struct Dec {
    bool inverse = false;
    SetOperad::El el;
    auto operator<=>(const Dec&) const = default;
  };
  PlanarTree tree;
  std::vector<Dec> phi;  // per vertex, preorder

  bool operator==(const DecoratedTree& o) const;
  bool operator<(const DecoratedTree& o) const;
  std::string str(const SetOperad& base) const;
};

struct LocalizedOperad {
  SetOperad op;  // elements are rewrite classes of decorated trees
  LocalizationStatus status = LocalizationStatus::Truncated;
  bool confluent = true;  // greedy rewriting agreed with union-find everywhere

  const SetOperad* base = nullptr;
  std::vector<SetOperad::El> sbar;  // closure of S under unary composition

  std::function<SetOperad::El(SetOperad::El)> ell;             // base -> localized
  std::function<DecoratedTree(const DecoratedTree&)> reduce;   // greedy normal form
  std::function<std::optional<SetOperad::El>(const DecoratedTree&)> class_of;
  std::function<std::vector<DecoratedTree>(SetOperad::El)> members;
  // one-step reductions at every applicable site, for confluence tests
  std::function<std::vector<DecoratedTree>(const DecoratedTree&)> reductions;
};

LocalizedOperad localize_operad(const SetOperad& base, const std::vector<SetOperad::El>& s,
                                int vertex_bound = 3);

}  // namespace opal
