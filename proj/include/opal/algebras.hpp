#pragma once

#include <optional>
#include <vector>

#include "opal/operads.hpp"
#include "opal/qmat.hpp"
#include "opal/report.hpp"

namespace opal {

// An algebra over a Set operad in finite-dimensional rational vector spaces:
// one structure matrix per operad element, tensor factors in profile order.
class VectAlgebra {
 public:
  VectAlgebra() = default;
  explicit VectAlgebra(const SetOperad* o) : op_(o), dims_(o->color_count(), 0) {}

  const SetOperad& operad() const { return *op_; }
  void set_dim(Color c, int d) { dims_[c] = d; }
  int dim(Color c) const { return dims_[c]; }
  int tensor_dim(const std::vector<Color>& cs) const;

  void set_map(SetOperad::El e, QMat m);
  bool has_map(SetOperad::El e) const;
  const QMat& map_of(SetOperad::El e) const;

  CheckReport check() const;

 private:
  const SetOperad* op_ = nullptr;
  std::vector<int> dims_;
  std::map<std::pair<int, int>, QMat> maps_;
};

// Permutation of tensor factors: X_c -> X_{c sigma}; target slot i receives
// factor sigma(i).
QMat tensor_perm_matrix(const std::vector<int>& dims, const Perm& sigma);

// pullback along an operad morphism: (f*Y)_c = Y_{f c}, maps by composition
VectAlgebra pullback_algebra(const OperadMorphism& f, const VectAlgebra& y);

// A functor to monoids: per object a monoid, per morphism an algebra map.
struct AqftModel {
  const FinCategory* cat = nullptr;
  std::vector<int> dims;      // per object
  std::vector<QMat> mult;     // per object, X (x) X -> X
  std::vector<QVec> unit;     // per object
  std::vector<QMat> morph;    // per morphism

  CheckReport check_structure() const;  // functoriality + monoid + hom axioms
  bool operator==(const AqftModel& o) const;
};

// Causality over the orthogonality relation, time-slice over S, plus the
// differential test through the algebra presentation over ocbar.
CheckReport check_aqft(const AqftModel& m, const OrthRelation& site, const std::vector<Mor>& s,
                       const SetOperad& ocbar);

// The canonical correspondence with algebras over the AQFT operad.
VectAlgebra aqft_to_algebra(const AqftModel& m, const SetOperad& ocbar);

struct PfaFromAqft {
  enum Verdict { Yes, No, Undetermined } verdict;
  std::string witness;             // for No
  std::optional<AqftModel> model;  // for Yes
};
// Decides whether a prefactorization algebra arises from an AQFT by solving
// the joint linear system for the monoid multiplications, then verifying the
// nonlinear axioms on the solution (or on a supplied candidate).
PfaFromAqft check_pfa_from_aqft(const VectAlgebra& y, const ConfiguredStructure& site,
                                const SetOperad& pfa, const SetOperad& ocbar,
                                const std::optional<AqftModel>& candidate = {});

// The interval prefactorization algebra of a monoid: entries are the monoid on
// every nonempty object, with ordered multiplication along configurations.
// `object_order` positions the objects left-to-right; the least element plays
// the unit role.
VectAlgebra build_afact(const QMat& mult, const QVec& unit, int dim,
                        const ConfiguredStructure& site, const SetOperad& pfa, Obj least,
                        const std::vector<int>& object_order);

// Commutative monoid at the least element, module structure of every entry,
// and compatibility with the underlying diagram.
CheckReport check_special_structure(const VectAlgebra& y, const ConfiguredStructure& site,
                                    const SetOperad& pfa, Obj least);
// Pointed-diagram axioms over a minimal configured structure.
CheckReport check_pointed_diagram(const VectAlgebra& y, const ConfiguredStructure& site,
                                  const SetOperad& pfa);

// Extends an algebra with invertible structure maps on S along the operad
// localization; the ell-pullback restores the original maps bit-exactly.
VectAlgebra extend_along_localization(const LocalizedOperad& loc, const VectAlgebra& y);

}  // namespace opal
