#pragma once

#include <map>
#include <vector>

#include "opal/algebras.hpp"
#include "opal/chain.hpp"
#include "opal/operads.hpp"

namespace opal {

// One entry of the filtered Boardman-Vogt construction over rational chains:
// the direct sum of the decorated-tree summands J[T] (x) O[T] and its quotient
// by the coequalizer relations from single-vertex substitutions.
struct BvEntry {
  const SetOperad* op = nullptr;
  Profile profile;
  int level = 0;

  std::vector<PlanarTree> trees;  // trees with a nonzero decoration set
  std::vector<std::vector<std::vector<SetOperad::El>>> decorations;  // [t][d][vertex]
  std::vector<std::map<std::vector<SetOperad::El>, int>> dec_index;
  std::vector<ChainComplex> jparts;  // J[T] per tree

  ChainComplex pre;  // direct sum before the quotient
  Cokernel quot;

  int tree_index(const PlanarTree& t) const;
  int summand_offset(int t, int degree) const;
  // image in the quotient of one summand basis vector
  QVec class_vector(int t, int degree, int j, int dec) const;
  std::vector<int> homology() const { return opal::homology(quot.quotient); }
};

BvEntry build_wn_entry(const SetOperad& o, const Profile& profile, int n);

struct AugmentationData {
  QMat eta;  // quotient degree 0 -> free module on the operad entry
  QMat xi;   // section through the corolla summand
  CheckReport report;
};
AugmentationData augmentation(const BvEntry& e);

// iota_n induced by enlarging the tree pool; `lower` at level n-1, `upper` at n
ChainMap filtration_inclusion(const BvEntry& lower, const BvEntry& upper);

// Operadic composition on summand generators against the augmentation, plus
// the unit and equivariance clauses.
CheckReport w_composition_check(const SetOperad& o, int arity_bound, int n);

// The four coherence conditions for algebras over the construction, evaluated
// on the pullback structure maps of an ordinary algebra.
CheckReport check_w_algebra(const SetOperad& o, const VectAlgebra& x, int n);

}  // namespace opal
