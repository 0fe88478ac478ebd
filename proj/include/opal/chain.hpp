#pragma once

#include <map>
#include <vector>

#include "opal/qmat.hpp"
#include "opal/report.hpp"
#include "opal/trees.hpp"

namespace opal {

// Nonnegatively graded rational chain complex; d_k : C_k -> C_{k-1}, d^2 = 0
// enforced at construction.
class ChainComplex {
 public:
  ChainComplex() : dims_{0} {}
  ChainComplex(std::vector<int> dims, std::vector<QMat> diffs);
  static ChainComplex concentrated(int dim0);

  int top_degree() const { return int(dims_.size()) - 1; }
  int dim(int k) const { return (k >= 0 && k < int(dims_.size())) ? dims_[k] : 0; }
  // differential into degree k-1; a zero matrix of the right shape if absent
  QMat d(int k) const;
  int total_dim() const;

  bool operator==(const ChainComplex& o) const;

 private:
  std::vector<int> dims_;
  std::vector<QMat> d_;  // d_[k] for k >= 1
};

class ChainMap {
 public:
  ChainMap() = default;
  ChainMap(ChainComplex src, ChainComplex dst, std::vector<QMat> mats);

  const ChainComplex& src() const { return src_; }
  const ChainComplex& dst() const { return dst_; }
  QMat at(int k) const;  // dst.dim(k) x src.dim(k)

  ChainMap compose(const ChainMap& inner) const;  // *this after inner
  ChainMap operator+(const ChainMap& o) const;
  ChainMap operator-(const ChainMap& o) const;
  bool operator==(const ChainMap& o) const;
  bool is_zero() const;
  bool injective() const;  // degreewise

  static ChainMap identity(const ChainComplex& c);
  static ChainMap zero(ChainComplex src, ChainComplex dst);

 private:
  ChainComplex src_, dst_;
  std::vector<QMat> f_;
};

std::vector<int> homology(const ChainComplex& c);

// Flat n-ary tensor product.  Bases are ordered lexicographically by
// (degree split, factor indices); regrouping never reorders basis vectors of
// equal splits, so every map below is built against this one convention.
class TensorIndexer {
 public:
  explicit TensorIndexer(std::vector<ChainComplex> factors);

  struct Elem {
    std::vector<int> deg;
    std::vector<int> idx;
    auto operator<=>(const Elem&) const = default;
  };

  const ChainComplex& total() const { return total_; }
  int factor_count() const { return int(factors_.size()); }
  const ChainComplex& factor(int i) const { return factors_[i]; }
  const std::vector<Elem>& basis(int k) const;
  int index_of(int k, const Elem& e) const;

 private:
  std::vector<ChainComplex> factors_;
  ChainComplex total_;
  std::vector<std::vector<Elem>> basis_;
  std::vector<std::map<Elem, int>> pos_;
};

ChainComplex tensor_all(const std::vector<ChainComplex>& factors);
ChainComplex tensor(const ChainComplex& a, const ChainComplex& b);
ChainComplex direct_sum(const std::vector<ChainComplex>& parts);

// Quotient of f's codomain by its image, with the projection and a standard
// basis section per degree.
struct Cokernel {
  ChainComplex quotient;
  std::vector<QMat> proj;
  std::vector<std::vector<int>> rep_cols;

  QMat projection(int k) const;
  QMat section(int k) const;  // quotient -> ambient, splitting projection
};
Cokernel cokernel(const ChainMap& f);

// The commutative segment: the normalized chains of the 1-simplex, with the
// multiplication validated by check_segment.
struct Segment {
  ChainComplex J;     // dims (2, 1): degree 0 = <e0, e1>, degree 1 = <h>, dh = e1 - e0
  ChainComplex unit;  // ground field in degree 0
  ChainMap mu;        // J (x) J -> J
  ChainMap end0, end1;  // unit -> J
  ChainMap eps;         // J -> unit
};
const Segment& segment();
CheckReport check_segment(const Segment& s);

// Maps between tensor powers of J assembled factorwise, with Koszul signs.
struct JFactorSpec {
  enum Kind { Take, Merge, Insert0, Insert1 } kind;
  std::vector<int> srcs;
};
ChainMap j_power_map(int src_factors, const std::vector<JFactorSpec>& dst,
                     const std::vector<int>& eps_drops);

ChainComplex j_power(int n);

// The segment functor on a substitution-category morphism: J[target] -> J[source].
ChainMap j_functor_map(const TreeMorphism& m);

// Grafting data: the tree together with edge provenance for the length-one map.
struct Grafting {
  PlanarTree result;
  TreeMorphism morphism;  // the two-level substitution realizing the graft
  // pi: J[base] (x) J[branch 1] (x) ... -> J[result], inserting the 1-end on
  // each internal edge created by the grafting.
  ChainMap pi;
};
Grafting graft_with_edges(const PlanarTree& base, const std::vector<PlanarTree>& branches);

}  // namespace opal
