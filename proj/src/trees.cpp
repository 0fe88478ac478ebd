#include "opal/trees.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace opal {

namespace {

std::atomic<std::uint64_t> g_tag{1};
std::uint64_t fresh_tag() { return g_tag.fetch_add(1, std::memory_order_relaxed); }

// Mutable scratch form used by the surgery routines.
struct Loose {
  struct V {
    Color out = 0;
    std::vector<Color> in;
    std::vector<int> child;
    std::uint64_t tag = 0;
  };
  std::vector<V> v;
  int root = 0;
};

using LeafIdent = std::pair<std::uint64_t, int>;  // (vertex tag, slot)

}  // namespace

Profile profile_compose_at(const Profile& p, int i, const Profile& b) {
  if (i < 0 || i >= p.arity()) throw std::invalid_argument("profile_compose_at: bad position");
  if (p.in[i] != b.out) throw std::invalid_argument("profile_compose_at: color mismatch");
  Profile r;
  r.out = p.out;
  r.in.reserve(p.arity() + b.arity() - 1);
  r.in.insert(r.in.end(), p.in.begin(), p.in.begin() + i);
  r.in.insert(r.in.end(), b.in.begin(), b.in.end());
  r.in.insert(r.in.end(), p.in.begin() + i + 1, p.in.end());
  return r;
}

std::string profile_str(const Profile& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.in.size(); ++i) s += std::to_string(p.in[i]) + (i + 1 < p.in.size() ? "," : "");
  return s + ";" + std::to_string(p.out) + ")";
}

void PlanarTree::finish() {
  parent_.assign(verts_.size(), -1);
  parent_slot_.assign(verts_.size(), -1);
  leaf_slots_.clear();
  for (int i = 0; i < int(verts_.size()); ++i) {
    const Vertex& v = verts_[i];
    if (v.in.size() != v.child.size()) throw std::logic_error("tree vertex arity mismatch");
    for (int s = 0; s < int(v.child.size()); ++s) {
      int c = v.child[s];
      if (c < 0) {
        leaf_slots_.push_back({i, s});
      } else {
        if (verts_[c].out != v.in[s]) throw std::invalid_argument("tree edge color mismatch");
        parent_[c] = i;
        parent_slot_[c] = s;
      }
    }
  }
}

// The builders below funnel through this helper: it renumbers a loose tree
// into preorder and resolves the listing from leaf identities.
struct TreeOps {
  static PlanarTree build(const Loose& L, const std::vector<LeafIdent>& zeta) {
    PlanarTree t;
    t.exceptional_ = false;
    std::vector<int> order;
    order.reserve(L.v.size());
    std::vector<int> stack{L.root};
    // iterative preorder with children in slot order
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      order.push_back(cur);
      const auto& ch = L.v[cur].child;
      for (int s = int(ch.size()) - 1; s >= 0; --s)
        if (ch[s] >= 0) stack.push_back(ch[s]);
    }
    std::vector<int> newIdx(L.v.size(), -1);
    for (int i = 0; i < int(order.size()); ++i) newIdx[order[i]] = i;
    t.verts_.resize(order.size());
    for (int i = 0; i < int(order.size()); ++i) {
      const auto& src = L.v[order[i]];
      PlanarTree::Vertex v;
      v.out = src.out;
      v.in = src.in;
      v.tag = src.tag;
      v.child.resize(src.child.size());
      for (int s = 0; s < int(src.child.size()); ++s)
        v.child[s] = src.child[s] < 0 ? -1 : newIdx[src.child[s]];
      t.verts_[i] = std::move(v);
    }
    t.finish();
    std::map<LeafIdent, int> slotOf;
    for (int k = 0; k < int(t.leaf_slots_.size()); ++k) {
      auto [vi, s] = t.leaf_slots_[k];
      slotOf[{t.verts_[vi].tag, s}] = k;
    }
    if (zeta.size() != t.leaf_slots_.size()) throw std::logic_error("tree listing size mismatch");
    t.input_order_.resize(zeta.size());
    std::vector<bool> used(zeta.size(), false);
    for (int p = 0; p < int(zeta.size()); ++p) {
      auto it = slotOf.find(zeta[p]);
      if (it == slotOf.end()) throw std::logic_error("tree listing refers to a missing leaf");
      if (used[it->second]) throw std::logic_error("tree listing is not a bijection");
      used[it->second] = true;
      t.input_order_[p] = it->second;
    }
    return t;
  }

  static Loose to_loose(const PlanarTree& t) {
    Loose L;
    L.root = 0;
    L.v.resize(t.vertex_count());
    for (int i = 0; i < t.vertex_count(); ++i) {
      const auto& v = t.vertex(i);
      L.v[i] = {v.out, v.in, v.child, v.tag};
    }
    return L;
  }

  static std::vector<LeafIdent> idents(const PlanarTree& t) {
    std::vector<LeafIdent> z(t.leaf_count());
    for (int p = 0; p < int(z.size()); ++p) {
      auto [vi, s] = t.leaf_slots()[t.input_order()[p]];
      z[p] = {t.vertex(vi).tag, s};
    }
    return z;
  }
};

PlanarTree PlanarTree::exceptional(Color c) {
  PlanarTree t;
  t.exceptional_ = true;
  t.exc_color_ = c;
  t.input_order_ = {0};
  return t;
}

PlanarTree PlanarTree::corolla(const Profile& p) {
  Loose L;
  L.v.push_back({p.out, p.in, std::vector<int>(p.in.size(), -1), fresh_tag()});
  std::vector<LeafIdent> z;
  for (int q = 0; q < p.arity(); ++q) z.push_back({L.v[0].tag, q});
  return TreeOps::build(L, z);
}

PlanarTree PlanarTree::permuted_corolla(const Profile& p, const Perm& tau) {
  if (int(tau.size()) != p.arity() || !perm_valid(tau))
    throw std::invalid_argument("permuted_corolla: bad permutation");
  Loose L;
  L.v.push_back({p.out, p.in, std::vector<int>(p.in.size(), -1), fresh_tag()});
  std::vector<LeafIdent> z;
  for (int q = 0; q < p.arity(); ++q) z.push_back({L.v[0].tag, tau[q]});
  return TreeOps::build(L, z);
}

PlanarTree PlanarTree::linear(const std::vector<Color>& chain) {
  if (chain.empty()) throw std::invalid_argument("linear: empty chain");
  int n = int(chain.size()) - 1;
  if (n == 0) return exceptional(chain[0]);
  Loose L;
  // vertex i (0-based from the root): out = chain[n-i], in = chain[n-i-1]
  for (int i = 0; i < n; ++i) {
    int childIdx = i + 1 < n ? i + 1 : -1;
    L.v.push_back({chain[n - i], {chain[n - i - 1]}, {childIdx}, fresh_tag()});
  }
  std::vector<LeafIdent> z{{L.v[n - 1].tag, 0}};
  return TreeOps::build(L, z);
}

PlanarTree PlanarTree::truncated_linear(const std::vector<Color>& chain) {
  if (chain.empty()) throw std::invalid_argument("truncated_linear: empty chain");
  int n = int(chain.size());
  Loose L;
  for (int i = 0; i < n; ++i) {
    bool bottom = (i == n - 1);
    if (bottom)
      L.v.push_back({chain[0], {}, {}, fresh_tag()});
    else
      L.v.push_back({chain[n - 1 - i], {chain[n - 2 - i]}, {i + 1}, fresh_tag()});
  }
  return TreeOps::build(L, {});
}

PlanarTree PlanarTree::two_level(const Profile& root, const std::vector<std::vector<Color>>& bs) {
  if (int(bs.size()) != root.arity() || root.arity() < 1)
    throw std::invalid_argument("two_level: arity mismatch");
  Loose L;
  std::vector<int> rootChild;
  for (int j = 0; j < root.arity(); ++j) rootChild.push_back(j + 1);
  L.v.push_back({root.out, root.in, rootChild, fresh_tag()});
  for (int j = 0; j < root.arity(); ++j)
    L.v.push_back({root.in[j], bs[j], std::vector<int>(bs[j].size(), -1), fresh_tag()});
  std::vector<LeafIdent> z;
  for (int j = 0; j < root.arity(); ++j)
    for (int i = 0; i < int(bs[j].size()); ++i) z.push_back({L.v[j + 1].tag, i});
  return TreeOps::build(L, z);
}

int PlanarTree::index_of_tag(std::uint64_t t) const {
  for (int i = 0; i < int(verts_.size()); ++i)
    if (verts_[i].tag == t) return i;
  return -1;
}

Profile PlanarTree::profile() const {
  if (exceptional_) return Profile{{exc_color_}, exc_color_};
  Profile p;
  p.out = verts_[0].out;
  for (int q = 0; q < int(input_order_.size()); ++q) {
    auto [vi, s] = leaf_slots_[input_order_[q]];
    p.in.push_back(verts_[vi].in[s]);
  }
  return p;
}

int PlanarTree::cmp(const PlanarTree& o) const {
  if (exceptional_ != o.exceptional_) return exceptional_ ? -1 : 1;
  if (exceptional_) return exc_color_ < o.exc_color_ ? -1 : (exc_color_ > o.exc_color_ ? 1 : 0);
  if (verts_.size() != o.verts_.size()) return verts_.size() < o.verts_.size() ? -1 : 1;
  for (size_t i = 0; i < verts_.size(); ++i) {
    const Vertex &a = verts_[i], &b = o.verts_[i];
    if (a.out != b.out) return a.out < b.out ? -1 : 1;
    if (a.in != b.in) return a.in < b.in ? -1 : 1;
    if (a.child != b.child) return a.child < b.child ? -1 : 1;
  }
  if (input_order_ != o.input_order_) return input_order_ < o.input_order_ ? -1 : 1;
  return 0;
}

std::string PlanarTree::str() const {
  if (exceptional_) return "up_" + std::to_string(exc_color_);
  std::ostringstream os;
  os << "T{";
  for (int i = 0; i < vertex_count(); ++i) {
    os << "v" << i << profile_str(vertex_profile(i)) << "[";
    for (size_t s = 0; s < verts_[i].child.size(); ++s)
      os << (verts_[i].child[s] < 0 ? "*" : "v" + std::to_string(verts_[i].child[s]))
         << (s + 1 < verts_[i].child.size() ? " " : "");
    os << "]" << (i + 1 < vertex_count() ? " " : "");
  }
  os << "|zeta=";
  for (size_t p = 0; p < input_order_.size(); ++p)
    os << input_order_[p] << (p + 1 < input_order_.size() ? "," : "");
  os << "}";
  return os.str();
}

std::string PlanarTree::dot(const std::vector<std::string>& color_names) const {
  auto cname = [&](Color c) {
    return c >= 0 && c < int(color_names.size()) ? color_names[c] : std::to_string(c);
  };
  std::ostringstream os;
  os << "digraph tree {\n  rankdir=BT;\n  node [shape=circle];\n";
  if (exceptional_) {
    os << "  in0 [shape=plaintext, label=\"1\"];\n  out [shape=plaintext, label=\"out\"];\n";
    os << "  in0 -> out [label=\"" << cname(exc_color_) << "\"];\n}\n";
    return os.str();
  }
  for (int i = 0; i < vertex_count(); ++i)
    os << "  v" << i << " [label=\"" << profile_str(vertex_profile(i)) << "\"];\n";
  os << "  out [shape=plaintext, label=\"out\"];\n";
  os << "  v0 -> out [label=\"" << cname(verts_[0].out) << "\"];\n";
  for (int e = 0; e < internal_edge_count(); ++e) {
    int c = edge_child(e);
    os << "  v" << c << " -> v" << parent_[c] << " [label=\"" << cname(edge_color(e)) << "\"];\n";
  }
  for (int p = 0; p < int(input_order_.size()); ++p) {
    auto [vi, s] = leaf_slots_[input_order_[p]];
    os << "  in" << p << " [shape=plaintext, label=\"" << (p + 1) << "\"];\n";
    os << "  in" << p << " -> v" << vi << " [label=\"" << cname(verts_[vi].in[s]) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

SubstStep substitute(const PlanarTree& T, int vIdx, const PlanarTree& H) {
  if (T.is_exceptional()) throw std::invalid_argument("substitute: exceptional tree has no vertices");
  if (vIdx < 0 || vIdx >= T.vertex_count()) throw std::invalid_argument("substitute: bad vertex");
  if (H.profile() != T.vertex_profile(vIdx))
    throw std::invalid_argument("substitute: profile mismatch at vertex " + std::to_string(vIdx));

  SubstStep step;
  auto srcEdgeOfChild = [&](int child) { return child - 1; };

  std::vector<LeafIdent> zeta = TreeOps::idents(T);

  if (H.is_exceptional()) {
    Color c = H.exceptional_color();
    if (T.vertex_count() == 1) {
      step.result = PlanarTree::exceptional(c);
      return step;
    }
    Loose L = TreeOps::to_loose(T);
    int p = T.parent_of(vIdx);
    int w = T.vertex(vIdx).child[0];
    if (p < 0) {
      // v is the root; its unique child becomes the root
      L.root = w;
      step.eps_edges.push_back(srcEdgeOfChild(w));
    } else if (w < 0) {
      // v's input is a leaf of T; the parent slot becomes that leaf
      int s = T.parent_slot_of(vIdx);
      L.v[p].child[s] = -1;
      step.eps_edges.push_back(srcEdgeOfChild(vIdx));
      for (auto& id : zeta)
        if (id == LeafIdent{T.tag(vIdx), 0}) id = {T.tag(p), s};
    } else {
      int s = T.parent_slot_of(vIdx);
      L.v[p].child[s] = w;
    }
    PlanarTree R = TreeOps::build(L, zeta);
    for (int e = 0; e < R.internal_edge_count(); ++e) {
      std::uint64_t t = R.tag(R.edge_child(e));
      int oldIdx = T.index_of_tag(t);
      if (p >= 0 && w >= 0 && oldIdx == w)
        step.edges.push_back({SubstStep::EdgeSrc::Merged, srcEdgeOfChild(vIdx), srcEdgeOfChild(w)});
      else
        step.edges.push_back({SubstStep::EdgeSrc::FromSource, srcEdgeOfChild(oldIdx), -1});
    }
    step.result = std::move(R);
    return step;
  }

  // general case: splice a copy of H into v
  Loose L = TreeOps::to_loose(T);
  int base = int(L.v.size());
  std::vector<std::uint64_t> copyTag(H.vertex_count());
  for (int i = 0; i < H.vertex_count(); ++i) {
    const auto& hv = H.vertex(i);
    Loose::V nv{hv.out, hv.in, hv.child, fresh_tag()};
    for (auto& ch : nv.child)
      if (ch >= 0) ch += base;
    copyTag[i] = nv.tag;
    L.v.push_back(nv);
  }
  int p = T.parent_of(vIdx);
  if (p < 0)
    L.root = base;  // H's root replaces the root
  else
    L.v[p].child[T.parent_slot_of(vIdx)] = base;
  // glue input q of v to H's leaf at listing position q
  for (int q = 0; q < T.vertex_profile(vIdx).arity(); ++q) {
    auto [hv, hs] = H.leaf_slots()[H.input_order()[q]];
    int content = T.vertex(vIdx).child[q];
    if (content >= 0) {
      L.v[base + hv].child[hs] = content;
    } else {
      for (auto& id : zeta)
        if (id == LeafIdent{T.tag(vIdx), q}) id = {copyTag[hv], hs};
    }
  }
  PlanarTree R = TreeOps::build(L, zeta);
  for (int e = 0; e < R.internal_edge_count(); ++e) {
    std::uint64_t t = R.tag(R.edge_child(e));
    int oldIdx = T.index_of_tag(t);
    if (oldIdx >= 0) {
      step.edges.push_back({SubstStep::EdgeSrc::FromSource, srcEdgeOfChild(oldIdx), -1});
      continue;
    }
    bool isHRoot = (t == copyTag[0]);
    if (isHRoot && p >= 0)
      step.edges.push_back({SubstStep::EdgeSrc::FromSource, srcEdgeOfChild(vIdx), -1});
    else
      step.edges.push_back({SubstStep::EdgeSrc::FromInserted, -1, -1});
  }
  step.inserted_vertex.resize(H.vertex_count());
  for (int i = 0; i < H.vertex_count(); ++i) step.inserted_vertex[i] = R.index_of_tag(copyTag[i]);
  step.result = std::move(R);
  return step;
}

TreeMorphism substitute_all(const PlanarTree& T, const std::vector<PlanarTree>& assignment) {
  if (int(assignment.size()) != T.vertex_count())
    throw std::invalid_argument("substitute_all: assignment size mismatch");
  TreeMorphism m;
  m.target = T;
  m.assignment = assignment;
  PlanarTree cur = T;
  std::vector<std::uint64_t> origTags(T.vertex_count());
  for (int i = 0; i < T.vertex_count(); ++i) origTags[i] = T.tag(i);
  std::vector<std::vector<std::uint64_t>> insertedTags(T.vertex_count());
  for (int v = 0; v < T.vertex_count(); ++v) {
    int curIdx = cur.index_of_tag(origTags[v]);
    if (curIdx < 0) throw std::logic_error("substitute_all: lost vertex");
    SubstStep step = substitute(cur, curIdx, assignment[v]);
    cur = step.result;
    if (!assignment[v].is_exceptional()) {
      insertedTags[v].resize(step.inserted_vertex.size());
      for (size_t i = 0; i < step.inserted_vertex.size(); ++i)
        insertedTags[v][i] = cur.tag(step.inserted_vertex[i]);
    }
    m.steps.push_back(std::move(step));
  }
  m.source = cur;
  m.source_vertex.resize(T.vertex_count());
  for (int v = 0; v < T.vertex_count(); ++v) {
    m.source_vertex[v].resize(insertedTags[v].size());
    for (size_t i = 0; i < insertedTags[v].size(); ++i) {
      int idx = m.source.index_of_tag(insertedTags[v][i]);
      if (idx < 0) throw std::logic_error("substitute_all: lost inserted vertex");
      m.source_vertex[v][i] = idx;
    }
  }
  return m;
}

PlanarTree graft(const PlanarTree& G, const std::vector<PlanarTree>& branches) {
  Profile pg = G.profile();
  if (pg.arity() < 1) throw std::invalid_argument("graft: base tree has no inputs");
  if (int(branches.size()) != pg.arity()) throw std::invalid_argument("graft: branch count mismatch");
  std::vector<std::vector<Color>> bs;
  for (int j = 0; j < pg.arity(); ++j) {
    Profile pb = branches[j].profile();
    if (pb.out != pg.in[j]) throw std::invalid_argument("graft: branch color mismatch");
    bs.push_back(pb.in);
  }
  PlanarTree tl = PlanarTree::two_level(pg, bs);
  std::vector<PlanarTree> assignment{G};
  assignment.insert(assignment.end(), branches.begin(), branches.end());
  return substitute_all(tl, assignment).source;
}

PlanarTree reorder(const PlanarTree& T, const Perm& sigma) {
  if (int(sigma.size()) != T.leaf_count() || !perm_valid(sigma))
    throw std::invalid_argument("reorder: bad permutation");
  if (T.is_exceptional()) return T;
  Loose L = TreeOps::to_loose(T);
  std::vector<LeafIdent> zeta = TreeOps::idents(T);
  std::vector<LeafIdent> z2(zeta.size());
  for (size_t p = 0; p < zeta.size(); ++p) z2[p] = zeta[sigma[p]];
  return TreeOps::build(L, z2);
}

PlanarTree reorder_at_vertex(const PlanarTree& T, int v, const Perm& sigma) {
  if (T.is_exceptional() || v < 0 || v >= T.vertex_count())
    throw std::invalid_argument("reorder_at_vertex: bad vertex");
  if (int(sigma.size()) != T.vertex_profile(v).arity() || !perm_valid(sigma))
    throw std::invalid_argument("reorder_at_vertex: bad permutation");
  Loose L = TreeOps::to_loose(T);
  std::vector<LeafIdent> zeta = TreeOps::idents(T);
  auto& vert = L.v[v];
  std::vector<Color> in2(vert.in.size());
  std::vector<int> ch2(vert.child.size());
  for (size_t i = 0; i < sigma.size(); ++i) {
    in2[i] = vert.in[sigma[i]];
    ch2[i] = vert.child[sigma[i]];
  }
  vert.in = in2;
  vert.child = ch2;
  Perm inv = perm_inverse(sigma);
  for (auto& id : zeta)
    if (id.first == T.tag(v)) id.second = inv[id.second];
  return TreeOps::build(L, zeta);
}

namespace {

PlanarTree subtree_at(const PlanarTree& T, int root) {
  Loose L = TreeOps::to_loose(T);
  L.root = root;
  // collect leaf idents of the subtree in planar order
  std::vector<LeafIdent> z;
  std::vector<int> stack{root};
  std::vector<int> order;
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    order.push_back(cur);
    for (int s = int(L.v[cur].child.size()) - 1; s >= 0; --s)
      if (L.v[cur].child[s] >= 0) stack.push_back(L.v[cur].child[s]);
  }
  for (int i : order)
    for (int s = 0; s < int(L.v[i].child.size()); ++s)
      if (L.v[i].child[s] < 0) z.push_back({L.v[i].tag, s});
  return TreeOps::build(L, z);
}

GraftRecipe recipe_of(const PlanarTree& T) {
  GraftRecipe r;
  if (T.is_exceptional()) {
    r.is_exceptional = true;
    r.color = T.exceptional_color();
    return r;
  }
  r.root = T.vertex_profile(0);
  for (int s = 0; s < r.root.arity(); ++s) {
    int c = T.vertex(0).child[s];
    if (c < 0) {
      GraftRecipe leaf;
      leaf.is_exceptional = true;
      leaf.color = r.root.in[s];
      r.branches.push_back(std::move(leaf));
    } else {
      r.branches.push_back(recipe_of(subtree_at(T, c)));
    }
  }
  return r;
}

}  // namespace

PlanarTree recompose(const GraftRecipe& r) {
  if (r.is_exceptional) return PlanarTree::exceptional(r.color);
  PlanarTree cor = PlanarTree::corolla(r.root);
  if (r.root.arity() == 0) return cor;
  std::vector<PlanarTree> branches;
  for (const auto& b : r.branches) branches.push_back(recompose(b));
  return graft(cor, branches);
}

GraftDecomposition decompose_grafting(const PlanarTree& T) {
  GraftDecomposition d;
  d.recipe = recipe_of(T);
  PlanarTree R = recompose(d.recipe);
  // planar structures agree; the listings may differ by a permutation
  std::vector<int> invR(R.leaf_count());
  for (int q = 0; q < R.leaf_count(); ++q) invR[R.input_order()[q]] = q;
  d.input_permutation.resize(T.leaf_count());
  for (int p = 0; p < T.leaf_count(); ++p) d.input_permutation[p] = invR[T.input_order()[p]];
  if (!(reorder(R, d.input_permutation) == T))
    throw std::logic_error("decompose_grafting: recomposition failed");
  return d;
}

EdgeContraction contract_edge(const PlanarTree& T, int e) {
  if (e < 0 || e >= T.internal_edge_count()) throw std::invalid_argument("contract_edge: bad edge");
  int child = T.edge_child(e);
  int parent = T.parent_of(child);
  int slot = T.parent_slot_of(child);
  Loose L = TreeOps::to_loose(T);
  std::vector<LeafIdent> zeta = TreeOps::idents(T);
  auto& pv = L.v[parent];
  const auto& cv = L.v[child];
  std::vector<Color> in2;
  std::vector<int> ch2;
  for (int s = 0; s < int(pv.in.size()); ++s) {
    if (s == slot) {
      in2.insert(in2.end(), cv.in.begin(), cv.in.end());
      ch2.insert(ch2.end(), cv.child.begin(), cv.child.end());
    } else {
      in2.push_back(pv.in[s]);
      ch2.push_back(pv.child[s]);
    }
  }
  pv.in = in2;
  pv.child = ch2;
  // leaf identities: the parent's later slots shift, the child's slots move in
  for (auto& id : zeta) {
    if (id.first == T.tag(child))
      id = {T.tag(parent), slot + id.second};
    else if (id.first == T.tag(parent) && id.second > slot)
      id = {T.tag(parent), id.second + int(cv.in.size()) - 1};
  }
  EdgeContraction out;
  out.slot = slot;
  out.result = TreeOps::build(L, zeta);
  out.vertex_map.assign(T.vertex_count(), -1);
  for (int i = 0; i < T.vertex_count(); ++i) {
    if (i == child)
      out.vertex_map[i] = out.result.index_of_tag(T.tag(parent));
    else
      out.vertex_map[i] = out.result.index_of_tag(T.tag(i));
  }
  out.merged_vertex = out.result.index_of_tag(T.tag(parent));
  return out;
}

namespace {

// planar trees with root output d, at most `verts` vertices (>= 1), and
// planar leaf sequence exactly `seg`
struct TreeGen {
  int num_colors;
  std::map<std::tuple<Color, int, std::vector<Color>>, std::vector<PlanarTree>> memo;

  const std::vector<PlanarTree>& gen(Color d, int verts, const std::vector<Color>& seg) {
    auto key = std::make_tuple(d, verts, seg);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<PlanarTree> out;
    if (verts >= 1) {
      struct Slot {
        bool leaf;
        Color color;       // leaf color or subtree output color
        int treeIdx = -1;  // into subs
      };
      std::vector<Slot> slots;
      std::vector<PlanarTree> subs;
      // extend slot plans consuming seg[from..] with a vertex budget left;
      // a plan is emitted whenever every leaf is consumed, and may still be
      // extended by subtree slots that consume no leaves
      auto rec = [&](auto&& self, int from, int budget) -> void {
        if (from == int(seg.size())) {
          // assemble the tree (root + chosen subtrees)
          Loose L;
          L.v.push_back({d, {}, {}, fresh_tag()});
          std::vector<LeafIdent> z;
          std::vector<std::pair<int, int>> attach;  // (loose idx base, sub idx)
          for (const auto& sl : slots) {
            L.v[0].in.push_back(sl.color);
            if (sl.leaf) {
              L.v[0].child.push_back(-1);
            } else {
              const PlanarTree& S = subs[sl.treeIdx];
              int base = int(L.v.size());
              for (int i = 0; i < S.vertex_count(); ++i) {
                const auto& sv = S.vertex(i);
                Loose::V nv{sv.out, sv.in, sv.child, fresh_tag()};
                for (auto& ch : nv.child)
                  if (ch >= 0) ch += base;
                L.v.push_back(nv);
              }
              L.v[0].child.push_back(base);
            }
          }
          // listing = planar depth-first leaf order, matching the segment
          // consumption order above; the caller adds every other listing
          PlanarTree t = [&] {
            std::vector<LeafIdent> zz;
            auto walk = [&](auto&& self2, int cur) -> void {
              for (int s = 0; s < int(L.v[cur].child.size()); ++s) {
                if (L.v[cur].child[s] < 0)
                  zz.push_back({L.v[cur].tag, s});
                else
                  self2(self2, L.v[cur].child[s]);
              }
            };
            walk(walk, 0);
            return TreeOps::build(L, zz);
          }();
          out.push_back(std::move(t));
        }
        if (from < int(seg.size())) {
          slots.push_back({true, seg[from], -1});
          self(self, from + 1, budget);
          slots.pop_back();
        }
        // subtree slot consuming seg[from..j)
        if (budget >= 1) {
          for (int j = from; j <= int(seg.size()); ++j) {
            std::vector<Color> sub(seg.begin() + from, seg.begin() + j);
            for (Color e = 0; e < num_colors; ++e) {
              for (int sv = 1; sv <= budget; ++sv) {
                for (const auto& S : gen(e, sv, sub)) {
                  if (S.vertex_count() != sv) continue;  // exact count to avoid duplicates
                  subs.push_back(S);
                  slots.push_back({false, e, int(subs.size()) - 1});
                  self(self, j, budget - sv);
                  slots.pop_back();
                  subs.pop_back();
                }
              }
            }
          }
        }
      };
      // also allow the degenerate full-plan when seg empty handled by rec
      rec(rec, 0, verts - 1);
    }
    auto [pos, inserted] = memo.emplace(key, std::move(out));
    return pos->second;
  }
};

}  // namespace

std::vector<PlanarTree> enumerate_trees(int num_colors, const Profile& profile, int max_internal_edges) {
  if (max_internal_edges < 0) throw std::invalid_argument("enumerate_trees: negative bound");
  // enumeration is pure, so share results across callers
  static std::mutex cacheMutex;
  static std::map<std::tuple<int, Profile, int>, std::vector<PlanarTree>> cache;
  auto key = std::make_tuple(num_colors, profile, max_internal_edges);
  {
    std::lock_guard<std::mutex> lock(cacheMutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::vector<PlanarTree> out;
  if (profile.arity() == 1 && profile.in[0] == profile.out)
    out.push_back(PlanarTree::exceptional(profile.out));
  // distinct planar leaf sequences = distinct permutations of the input profile
  std::vector<Color> seq = profile.in;
  std::sort(seq.begin(), seq.end());
  std::set<std::vector<Color>> seqs;
  if (seq.empty())
    seqs.insert(std::vector<Color>{});
  else
    do {
      seqs.insert(seq);
    } while (std::next_permutation(seq.begin(), seq.end()));
  TreeGen gen{num_colors, {}};
  for (const auto& w : seqs) {
    for (int nv = 1; nv <= max_internal_edges + 1; ++nv) {
      for (const auto& P : gen.gen(profile.out, nv, w)) {
        if (P.vertex_count() != nv) continue;
        // all listings matching the requested input profile
        int n = profile.arity();
        std::vector<int> tau(n);
        std::vector<bool> used(n, false);
        auto rec = [&](auto&& self, int pos) -> void {
          if (pos == n) {
            out.push_back(reorder(P, tau));
            return;
          }
          for (int s = 0; s < n; ++s) {
            if (used[s] || w[s] != profile.in[pos]) continue;
            used[s] = true;
            tau[pos] = s;
            self(self, pos + 1);
            used[s] = false;
          }
        };
        if (n == 0)
          out.push_back(P);
        else
          rec(rec, 0);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  {
    std::lock_guard<std::mutex> lock(cacheMutex);
    cache[key] = out;
  }
  return out;
}

std::vector<TreeMorphism> enumerate_generating_morphisms(const PlanarTree& T,
                                                         const std::vector<PlanarTree>& pool) {
  std::vector<TreeMorphism> out;
  if (T.is_exceptional()) return out;
  for (int v = 0; v < T.vertex_count(); ++v) {
    Profile pv = T.vertex_profile(v);
    PlanarTree cor = PlanarTree::corolla(pv);
    for (const auto& H : pool) {
      if (!(H.profile() == pv) || H == cor) continue;
      std::vector<PlanarTree> assignment;
      for (int u = 0; u < T.vertex_count(); ++u)
        assignment.push_back(u == v ? H : PlanarTree::corolla(T.vertex_profile(u)));
      out.push_back(substitute_all(T, assignment));
    }
  }
  return out;
}

}  // namespace opal
