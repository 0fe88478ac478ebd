#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "opal/report.hpp"

namespace opal {

using Obj = int;
using Mor = int;

// A finite category given by explicit tables.  Objects and morphisms carry
// names for reports and serialization; identities are stored like any other
// morphism.
class FinCategory {
 public:
  Obj add_object(std::string name);
  // identity morphisms are created by freeze()
  Mor add_morphism(std::string name, Obj dom, Obj cod);
  void set_composite(Mor g, Mor f, Mor gf);  // g after f
  void freeze();                             // create identities, close tables

  int object_count() const { return int(obj_names_.size()); }
  int morphism_count() const { return int(mors_.size()); }
  const std::string& object_name(Obj o) const { return obj_names_[o]; }
  const std::string& morphism_name(Mor m) const { return mors_[m].name; }
  std::optional<Obj> object_by_name(const std::string& n) const;
  std::optional<Mor> morphism_by_name(const std::string& n) const;

  Obj dom(Mor m) const { return mors_[m].dom; }
  Obj cod(Mor m) const { return mors_[m].cod; }
  Mor identity(Obj o) const { return ids_[o]; }
  bool is_identity(Mor m) const;
  std::optional<Mor> compose(Mor g, Mor f) const;  // g after f, nullopt if not composable
  std::vector<Mor> hom(Obj a, Obj b) const;

  CheckReport check() const;

  // Builds a thin category from a reflexive-transitive order: leq(a, b).
  static FinCategory poset(const std::vector<std::string>& names,
                           const std::vector<std::pair<int, int>>& strictly_less);

 private:
  struct M {
    std::string name;
    Obj dom, cod;
  };
  std::vector<std::string> obj_names_;
  std::vector<M> mors_;
  std::vector<Mor> ids_;
  std::map<std::pair<Mor, Mor>, Mor> comp_;  // (g, f) -> g.f
  bool frozen_ = false;
};

struct FinFunctor {
  const FinCategory* src = nullptr;
  const FinCategory* dst = nullptr;
  std::vector<Obj> on_obj;
  std::vector<Mor> on_mor;

  CheckReport check() const;
};

// A word in morphisms of C and formal inverses of members of the closed set S,
// stored in application order: entry 0 acts first.
struct ZigZag {
  struct Letter {
    bool inverse;
    Mor m;
    auto operator<=>(const Letter&) const = default;
  };
  std::vector<Letter> word;
  Obj from, to;

  auto operator<=>(const ZigZag&) const = default;
};

enum class LocalizationStatus { Complete, Truncated };

// C[S^-1] computed by bounded zig-zag enumeration, quotiented by the three
// identification rules with a union-find backstop.
class LocalizedCategory {
 public:
  const FinCategory& base() const { return *base_; }
  LocalizationStatus status() const { return status_; }
  const std::vector<Mor>& closed_s() const { return sbar_; }

  int class_count() const { return int(classes_.size()); }
  const ZigZag& representative(int cls) const { return classes_[cls]; }
  const std::vector<ZigZag>& members(int cls) const { return members_[cls]; }
  std::optional<int> class_of(const ZigZag& z) const;

  std::vector<int> hom(Obj a, Obj b) const;
  int identity_class(Obj o) const;
  int compose(int g, int f) const;  // g after f
  int map_of(Mor m) const;          // ell(m)
  std::optional<int> inverse(int cls) const;

  // One rewrite using the localization identifications at the leftmost
  // applicable position; identity otherwise.
  ZigZag reduce_once(const ZigZag& z) const;
  std::optional<ZigZag> reduce_at_position(const ZigZag& z, int pos) const;
  ZigZag normalize(const ZigZag& z) const;

  friend LocalizedCategory localize(const FinCategory& c, const std::vector<Mor>& s, int length_bound);

 private:
  const FinCategory* base_ = nullptr;
  std::vector<Mor> sbar_;
  std::set<Mor> sbar_set_;
  LocalizationStatus status_ = LocalizationStatus::Truncated;
  std::vector<ZigZag> classes_;               // canonical representatives
  std::vector<std::vector<ZigZag>> members_;  // all enumerated members per class
  std::map<ZigZag, int> class_of_;
};

LocalizedCategory localize(const FinCategory& c, const std::vector<Mor>& s, int length_bound = 6);

// Localization functor data: ell is the identity on objects; per morphism the
// class of the one-letter word.
struct LocalizationFunctor {
  const LocalizedCategory* loc;
  int operator()(Mor m) const { return loc->map_of(m); }
};
CheckReport check_localization_functor(const LocalizedCategory& loc);

}  // namespace opal
