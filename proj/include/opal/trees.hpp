#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opal/perm.hpp"

namespace opal {

// Colors are indices into an external color-name table.
using Color = int;

struct Profile {
  std::vector<Color> in;
  Color out = 0;

  int arity() const { return int(in.size()); }
  auto operator<=>(const Profile&) const = default;
};

// Splices b into position i (0-based) of p's inputs.
Profile profile_compose_at(const Profile& p, int i, const Profile& b);
std::string profile_str(const Profile& p);

// A colored tree with listings, stored as a rooted planar structure.
//
// Vertices are kept in preorder (children visited in slot order), so two trees
// are isomorphic as listed trees exactly when their encodings are equal.  The
// per-vertex input order is the vertex listing; `input_order` is the global
// listing, mapping input positions of the tree to leaf slots in planar order.
// Tags identify vertices across surgeries and never take part in equality.
class PlanarTree {
 public:
  struct Vertex {
    Color out = 0;
    std::vector<Color> in;     // input colors, listing order
    std::vector<int> child;    // child[i]: child vertex index, or -1 for a leaf
    std::uint64_t tag = 0;
  };

  static PlanarTree exceptional(Color c);
  static PlanarTree corolla(const Profile& p);
  // Corolla on vertex profile p with global listing tau: tree profile (p.in tau; p.out).
  static PlanarTree permuted_corolla(const Profile& p, const Perm& tau);
  // chain = (c_0, ..., c_n): n vertices; n = 0 gives the exceptional edge.
  static PlanarTree linear(const std::vector<Color>& chain);
  // chain = (c_1, ..., c_n), n >= 1: like linear but the first vertex has no input.
  static PlanarTree truncated_linear(const std::vector<Color>& chain);
  // Two-level tree for root profile (c;d) and branch input profiles bs[j].
  static PlanarTree two_level(const Profile& root, const std::vector<std::vector<Color>>& bs);

  bool is_exceptional() const { return exceptional_; }
  Color exceptional_color() const { return exc_color_; }

  int vertex_count() const { return exceptional_ ? 0 : int(verts_.size()); }
  const Vertex& vertex(int i) const { return verts_[i]; }
  Profile vertex_profile(int i) const { return Profile{verts_[i].in, verts_[i].out}; }
  std::uint64_t tag(int i) const { return verts_[i].tag; }
  int index_of_tag(std::uint64_t t) const;

  // Internal edges are indexed 0..vertex_count()-2, edge e having child vertex
  // e+1 in preorder; the edge color is the child's output color.
  int internal_edge_count() const { return exceptional_ ? 0 : int(verts_.size()) - 1; }
  Color edge_color(int e) const { return verts_[e + 1].out; }
  int edge_child(int e) const { return e + 1; }
  int parent_of(int v) const { return parent_[v]; }        // -1 for root
  int parent_slot_of(int v) const { return parent_slot_[v]; }

  int leaf_count() const { return exceptional_ ? 1 : int(leaf_slots_.size()); }
  // Leaf slots in planar order: (vertex, slot).
  const std::vector<std::pair<int, int>>& leaf_slots() const { return leaf_slots_; }
  // Global listing: input position -> index into leaf_slots().
  const std::vector<int>& input_order() const { return input_order_; }

  Profile profile() const;
  Color root_output() const { return exceptional_ ? exc_color_ : verts_[0].out; }

  bool operator==(const PlanarTree& o) const { return cmp(o) == 0; }
  bool operator<(const PlanarTree& o) const { return cmp(o) < 0; }

  std::string str() const;
  std::string dot(const std::vector<std::string>& color_names) const;

 private:
  friend struct TreeOps;
  int cmp(const PlanarTree& o) const;
  void finish();  // recompute caches; verts_ must already be in preorder

  bool exceptional_ = false;
  Color exc_color_ = 0;
  std::vector<Vertex> verts_;
  std::vector<int> parent_, parent_slot_;
  std::vector<std::pair<int, int>> leaf_slots_;
  std::vector<int> input_order_;
};

// A single tree-substitution step with edge bookkeeping for the segment functor.
struct SubstStep {
  PlanarTree result;
  // One entry per internal edge of `result`, in its canonical edge order.
  struct EdgeSrc {
    enum Kind { FromSource, FromInserted, Merged } kind;
    int src_a = -1;  // FromSource/Merged: edge index in the substituted-into tree
    int src_b = -1;  // Merged only
  };
  std::vector<EdgeSrc> edges;
  std::vector<int> eps_edges;          // source edges consumed by the counit
  std::vector<int> inserted_vertex;    // result index per inserted-tree vertex, in its order
};

// substitution at one vertex; pre: Prof(H) == Prof(v)
SubstStep substitute(const PlanarTree& T, int v, const PlanarTree& H);

// A morphism (H_v): source -> target of the substitution category, with the
// vertex decomposition Vt(source) = ⊔_v Vt(H_v).
struct TreeMorphism {
  PlanarTree target;
  std::vector<PlanarTree> assignment;          // per target vertex
  PlanarTree source;                           // computed substitution
  std::vector<std::vector<int>> source_vertex; // [v][i]: source index of H_v's vertex i
  std::vector<SubstStep> steps;                // the iterated single substitutions
};

TreeMorphism substitute_all(const PlanarTree& T, const std::vector<PlanarTree>& assignment);

// Grafting, realized through the two-level tree; needs |branches| = |in(G)| >= 1.
PlanarTree graft(const PlanarTree& G, const std::vector<PlanarTree>& branches);

// Same tree with global listing composed on the right by sigma.
PlanarTree reorder(const PlanarTree& T, const Perm& sigma);
// Reorders the inputs of one vertex by sigma, moving subtrees along.
PlanarTree reorder_at_vertex(const PlanarTree& T, int v, const Perm& sigma);

// Iterated-grafting decomposition: recompose() applied to the recipe, then
// reorder by input_permutation, reproduces the tree.
struct GraftRecipe {
  bool is_exceptional = false;
  Color color = 0;               // exceptional leaf color
  Profile root;                  // corolla profile otherwise
  std::vector<GraftRecipe> branches;  // size root.arity()
};
struct GraftDecomposition {
  GraftRecipe recipe;
  Perm input_permutation;
};
GraftDecomposition decompose_grafting(const PlanarTree& T);
PlanarTree recompose(const GraftRecipe& r);

// Contracts internal edge e: the child vertex's input slots replace its slot
// in the parent, as when composing the two vertex decorations.
struct EdgeContraction {
  PlanarTree result;
  std::vector<int> vertex_map;  // old index -> new index; the child maps to the merged vertex
  int merged_vertex = -1;       // result index of the merged vertex
  int slot = -1;                // parent slot the child occupied
};
EdgeContraction contract_edge(const PlanarTree& T, int e);

// All canonical trees with the given profile and at most max_internal_edges
// internal edges, over the colors 0..num_colors-1.
std::vector<PlanarTree> enumerate_trees(int num_colors, const Profile& profile, int max_internal_edges);

// All substitution-category morphisms into T in which exactly one assignment
// slot carries a non-identity-corolla tree drawn from the pool.
std::vector<TreeMorphism> enumerate_generating_morphisms(
    const PlanarTree& T, const std::vector<PlanarTree>& pool);

}  // namespace opal
